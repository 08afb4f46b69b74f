#include "jtree/dual_norm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "jtree/error.hpp"
#include "jtree/jt_norm.hpp"
#include "jtree/segment_family.hpp"

namespace jtree {

DualVector segment_functional(const Segment& s, int depth) {
  DualVector f(std::max(depth, level_of(s.bottom())));
  for (NodeKey k : s.members()) f.set(k, 1);
  return f;
}

Rational pairing(const DualVector& f, const TreeVector& x) {
  Rational total = 0;
  const auto& small = f.size() <= x.size() ? f.entries() : x.entries();
  const auto& large = f.size() <= x.size() ? x.entries() : f.entries();
  for (const auto& [k, v] : small) {
    auto it = large.find(k);
    if (it != large.end()) total += v * it->second;
  }
  return total;
}

bool w_element_check(const WElement& w) {
  Rational sq = 0;
  std::vector<Segment> segs;
  for (const auto& [lambda, s] : w.terms) {
    sq += lambda * lambda;
    segs.push_back(s);
  }
  return sq <= 1 && !find_overlap(segs);
}

DualVector w_element_functional(const WElement& w, int depth) {
  int d = depth;
  for (const auto& term : w.terms) d = std::max(d, level_of(term.second.bottom()));
  DualVector f(d);
  for (const auto& [lambda, s] : w.terms) {
    for (NodeKey k : s.members()) f.add(k, lambda);
  }
  return f;
}

namespace {

// Extended precision keeps the barrier Newton systems accurate as the slacks shrink.
using Real = long double;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// Ancestor closure of the support. P_A is a norm-one projection for any ancestor-closed A
// and f(P_A x) = f(x), so the supremum is attained on vectors supported here.
std::vector<NodeKey> ancestor_closure(const DualVector& f) {
  std::vector<NodeKey> keys;
  for (const auto& [k, v] : f) {
    for (NodeKey a = k; a >= 1; a >>= 1) keys.push_back(a);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

// A partition restricted to the closure, stored as member index lists.
using IndexPartition = std::vector<std::vector<Eigen::Index>>;

struct Separation {
  Real norm = 0;
  std::vector<Segment> partition;
};

Separation separate(const std::vector<NodeKey>& keys, const Vec& x) {
  std::map<NodeKey, Real> coeffs;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const Real v = x[static_cast<Eigen::Index>(i)];
    if (v != 0.0) coeffs.emplace(keys[i], v);
  }
  auto result = detail::max_disjoint_family(coeffs, [](Real s) { return s * s; });
  return {std::sqrt(std::max<Real>(0, result.value)), std::move(result.family)};
}

// Log-barrier solver for  max f.x  s.t.  q_P(x) = sum_{s in P} (s*(x))^2 <= 1  over a
// growing working set of partitions P.
class PartitionBarrier {
 public:
  explicit PartitionBarrier(Vec f) : f_(std::move(f)), x_(Vec::Zero(f_.size())) {}

  void add(IndexPartition p) { parts_.push_back(std::move(p)); }
  std::size_t size() const { return parts_.size(); }
  const Vec& x() const { return x_; }
  void set_x(Vec x) { x_ = std::move(x); }

  /// Newton centering for the current t. Returns false if x left the interior.
  bool center(Real t) {
    const auto n = f_.size();
    for (int step = 0; step < 200; ++step) {
      Vec g = -t * f_;
      Mat h = Mat::Zero(n, n);
      for (const auto& p : parts_) {
        Vec qx = Vec::Zero(n);
        Real q = 0;
        for (const auto& seg : p) {
          Real sum = 0;
          for (auto i : seg) sum += x_[i];
          q += sum * sum;
          for (auto i : seg) qx[i] += sum;
        }
        const Real slack = 1.0 - q;
        if (slack <= 0) return false;
        g += (2.0 / slack) * qx;
        for (const auto& seg : p) {
          for (auto i : seg) {
            for (auto j : seg) h(i, j) += 2.0 / slack;
          }
        }
        h.noalias() += (4.0 / (slack * slack)) * qx * qx.transpose();
      }
      const Vec dx = -h.ldlt().solve(g);
      const Real decrement = -g.dot(dx);
      if (!std::isfinite(decrement)) return false;
      if (decrement < 1e-20) return true;
      // The objective is self-concordant: the damped step 1/(1+lambda) stays feasible and
      // decreases it, and full steps converge quadratically once lambda < 1/4.
      const Real lambda = std::sqrt(decrement);
      Real step_len = lambda < 0.25 ? 1.0 : 1.0 / (1.0 + lambda);
      while (!feasible(x_ + step_len * dx)) {
        step_len *= 0.5;
        if (step_len < 1e-12) return true;
      }
      x_ += step_len * dx;
      if (lambda < 1e-9) return true;
    }
    return true;
  }

  /// Upper bound from the barrier multipliers: f = sum_P c_P M_P^T d_P + r with |d_P| = 1,
  /// where each M_P^T d_P lies in W and r is covered by signed unit vectors, so
  /// sum |c_P| + |r|_1 bounds the dual norm. The directions d_P are the normalized segment
  /// sums of x; the scales come from the barrier and, independently, from a least-squares
  /// fit (the barrier scales lose precision as the slacks approach zero).
  Real dual_bound(Real t) const {
    const auto n = f_.size();
    const auto k = static_cast<Eigen::Index>(parts_.size());
    Mat dirs = Mat::Zero(n, k);
    Vec scales(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& p = parts_[static_cast<std::size_t>(j)];
      Real q = 0;
      for (const auto& seg : p) {
        Real sum = 0;
        for (auto i : seg) sum += x_[i];
        q += sum * sum;
        for (auto i : seg) dirs(i, j) += sum;
      }
      const Real norm = std::sqrt(q);
      if (norm > 0) dirs.col(j) /= norm;
      scales[j] = 2.0 * norm / (t * (1.0 - q));
    }
    auto bound = [&](const Vec& c) { return c.lpNorm<1>() + (f_ - dirs * c).lpNorm<1>(); };
    const Real barrier_bound = bound(scales);

    std::vector<Eigen::Index> active;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (scales[j] > 1e-9 * scales.maxCoeff()) active.push_back(j);
    }
    Mat a(n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = dirs.col(active[j]);
    const Vec fit = a.completeOrthogonalDecomposition().solve(f_);
    Vec c = Vec::Zero(k);
    for (std::size_t j = 0; j < active.size(); ++j) c[active[j]] = fit[static_cast<Eigen::Index>(j)];
    return std::min(barrier_bound, bound(c));
  }

 private:
  bool feasible(const Vec& x) const {
    for (const auto& p : parts_) {
      Real q = 0;
      for (const auto& seg : p) {
        Real sum = 0;
        for (auto i : seg) sum += x[i];
        q += sum * sum;
      }
      if (!(q < 1.0)) return false;
    }
    return true;
  }

  Vec f_;
  Vec x_;
  std::vector<IndexPartition> parts_;
};

// Rational witness with denominator 2^40 whose exact norm is at most 1.
TreeVector exact_witness(const std::vector<NodeKey>& keys, const Vec& y, int depth) {
  constexpr double kScale = 1099511627776.0;  // 2^40
  double shrink = 1.0 - 1e-13;
  for (int attempt = 0; attempt < 60; ++attempt) {
    TreeVector w(depth);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const Real scaled = std::round(y[static_cast<Eigen::Index>(i)] * shrink * kScale);
      if (scaled != 0) w.set(keys[i], Rational(from_double(static_cast<double>(scaled)) / from_double(kScale)));
    }
    if (jt_norm_sq(w).value_sq <= 1) return w;
    shrink *= 1.0 - std::ldexp(1e-13, attempt);
  }
  throw ConvergenceError("jtstar_norm: could not round the witness into the unit ball", 0, 0, 0);
}

}  // namespace

DualResult jtstar_norm(const DualVector& f, const DualOptions& opts) {
  if (!(opts.tol > 0)) throw InputError("jtstar_norm: tolerance must be positive");
  DualResult out;
  out.tolerance = opts.tol;
  out.witness = TreeVector(f.depth());
  if (f.empty()) return out;

  const auto keys = ancestor_closure(f);
  const auto n = static_cast<Eigen::Index>(keys.size());
  std::unordered_map<NodeKey, Eigen::Index> index;
  for (Eigen::Index i = 0; i < n; ++i) index.emplace(keys[static_cast<std::size_t>(i)], i);

  Vec fvec = Vec::Zero(n);
  for (const auto& [k, v] : f) fvec[index.at(k)] = to_double(v);

  auto to_indices = [&](const std::vector<Segment>& segs) {
    IndexPartition p;
    for (const auto& s : segs) {
      std::vector<Eigen::Index> members;
      for (NodeKey k : s.members()) members.push_back(index.at(k));
      p.push_back(std::move(members));
    }
    return p;
  };

  // The singleton partition bounds |x|_2 <= 1, so every restricted problem is bounded.
  PartitionBarrier barrier(fvec);
  std::set<std::vector<Segment>> known;
  {
    std::vector<Segment> singletons;
    for (NodeKey k : keys) singletons.emplace_back(k, k);
    barrier.add(to_indices(singletons));
    known.insert(std::move(singletons));
  }

  Real lower = 0;
  Real upper = std::numeric_limits<Real>::infinity();
  Vec best = Vec::Zero(n);
  Real t = 1.0 / std::max<Real>(1e-300L, fvec.norm());
  long iter = 0;
  for (;;) {
    if (!barrier.center(t)) {
      throw ConvergenceError("jtstar_norm: barrier iterate left the feasible region", lower, upper, iter);
    }
    ++iter;
    upper = std::min(upper, barrier.dual_bound(t));
    const Vec x = barrier.x();
    const Separation sep = separate(keys, x);
    if (sep.norm > 0) {
      const Real scale = std::max<Real>(1, sep.norm);
      const Real candidate = fvec.dot(x) / scale;
      if (candidate > lower) {
        lower = candidate;
        best = x / scale;
      }
    }
    if (upper - lower <= 0.5 * opts.tol) break;
    if (iter >= opts.max_iterations) {
      throw ConvergenceError("jtstar_norm: iteration cap reached", lower, upper, iter);
    }
    if (sep.norm > 1.0 && known.insert(sep.partition).second) {
      // The iterate violates the norming partition's constraint: add it and pull x back
      // inside the enlarged working set.
      barrier.add(to_indices(sep.partition));
      barrier.set_x(x * ((1.0 - 1e-3) / sep.norm));
    } else if (t > 1e8 * static_cast<double>(barrier.size()) / opts.tol) {
      throw ConvergenceError("jtstar_norm: bounds stalled in floating point", lower, upper, iter);
    } else {
      t *= 8.0;
    }
  }

  out.witness = exact_witness(keys, best, f.depth());
  const double certified = to_double(pairing(f, out.witness));
  out.lower = std::min(static_cast<double>(lower), certified);
  out.upper = std::max(static_cast<double>(upper), out.lower);
  out.value = 0.5 * (out.lower + out.upper);
  out.iterations = iter;
  if (out.upper - out.lower > opts.tol) {
    throw ConvergenceError("jtstar_norm: bounds separated after exact re-verification", out.lower, out.upper, iter);
  }
  return out;
}

}  // namespace jtree
