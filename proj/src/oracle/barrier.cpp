#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "jtree/oracle.hpp"

namespace jtree::oracle {

namespace {

struct Constraint {
  std::vector<std::vector<Eigen::Index>> segments;
};

std::vector<double> segment_sums(const Constraint& c, const Eigen::VectorXd& x) {
  std::vector<double> out;
  out.reserve(c.segments.size());
  for (const auto& seg : c.segments) {
    double sum = 0;
    for (auto i : seg) sum += x[i];
    out.push_back(sum);
  }
  return out;
}

double squared(const std::vector<double>& v) {
  double total = 0;
  for (double a : v) total += a * a;
  return total;
}

}  // namespace

double barrier_dual_norm(const DualVector& f, const std::vector<Partition>& constraints, double tol) {
  std::map<NodeKey, Eigen::Index> index;
  for (const auto& p : constraints) {
    for (const auto& s : p.segments()) {
      for (NodeKey k : s.members()) index.emplace(k, 0);
    }
  }
  Eigen::Index n = 0;
  for (auto& [k, i] : index) i = n++;
  Eigen::VectorXd fv = Eigen::VectorXd::Zero(n);
  for (const auto& [k, v] : f) {
    auto it = index.find(k);
    if (it == index.end()) throw std::invalid_argument("barrier_dual_norm: functional not bounded by the constraints");
    fv[it->second] = to_double(v);
  }
  std::vector<Constraint> cons;
  for (const auto& p : constraints) {
    Constraint c;
    for (const auto& s : p.segments()) {
      std::vector<Eigen::Index> members;
      for (NodeKey k : s.members()) members.push_back(index.at(k));
      c.segments.push_back(std::move(members));
    }
    cons.push_back(std::move(c));
  }
  const double m = static_cast<double>(cons.size());

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (double t = 1.0;; t *= 10.0) {
    for (int step = 0; step < 500; ++step) {
      Eigen::VectorXd g = -t * fv;
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
      for (const auto& c : cons) {
        const auto sums = segment_sums(c, x);
        const double slack = 1.0 - squared(sums);
        Eigen::VectorXd qx = Eigen::VectorXd::Zero(n);
        for (std::size_t j = 0; j < sums.size(); ++j) {
          for (auto i : c.segments[j]) qx[i] += sums[j];
        }
        g += (2.0 / slack) * qx;
        h += (4.0 / (slack * slack)) * qx * qx.transpose();
        for (const auto& seg : c.segments) {
          for (auto i : seg) {
            for (auto k : seg) h(i, k) += 2.0 / slack;
          }
        }
      }
      const Eigen::VectorXd d = -h.ldlt().solve(g);
      if (-g.dot(d) < 1e-11) break;

      // Exact line search: bisection on the derivative of the barrier along d, inside
      // the largest feasible step.
      double alpha_max = std::numeric_limits<double>::infinity();
      std::vector<std::array<double, 3>> coeffs;  // q(x + a d) = q0 + 2 a a1 + a^2 b1
      for (const auto& c : cons) {
        const auto sx = segment_sums(c, x);
        const auto sd = segment_sums(c, d);
        double q0 = 0, a1 = 0, b1 = 0;
        for (std::size_t j = 0; j < sx.size(); ++j) {
          q0 += sx[j] * sx[j];
          a1 += sx[j] * sd[j];
          b1 += sd[j] * sd[j];
        }
        coeffs.push_back({q0, a1, b1});
        if (b1 > 0) {
          const double disc = a1 * a1 + b1 * (1.0 - q0);
          alpha_max = std::min(alpha_max, (-a1 + std::sqrt(disc)) / b1);
        }
      }
      const double fd = fv.dot(d);
      auto derivative = [&](double a) {
        double value = -t * fd;
        for (const auto& [q0, a1, b1] : coeffs) {
          value += 2.0 * (a1 + a * b1) / (1.0 - (q0 + 2.0 * a * a1 + a * a * b1));
        }
        return value;
      };
      double lo = 0.0;
      double hi = std::isfinite(alpha_max) ? alpha_max : 1.0;
      while (!std::isfinite(alpha_max) && derivative(hi) < 0) hi *= 2.0;
      for (int it = 0; it < 200 && hi - lo > 1e-17 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (derivative(mid) < 0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      if (lo == 0.0) break;
      x += lo * d;
    }
    if (m / t < tol) break;
    if (t > 1e16) throw std::runtime_error("barrier_dual_norm: no convergence");
  }
  return fv.dot(x);
}

}  // namespace jtree::oracle
