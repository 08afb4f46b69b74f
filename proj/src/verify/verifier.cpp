#include "jtree/verifier.hpp"

#include <algorithm>
#include <cmath>

#include "jtree/json_io.hpp"
#include "jtree/segment_family.hpp"

namespace jtree {

namespace {

Rational square(const Rational& q) { return q * q; }

std::string term_name(std::size_t i) { return "term " + std::to_string(i + 1); }

nlohmann::json encode_list(const std::vector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(io::encode(q));
  return out;
}

void check_sample_size(const std::vector<Rational>& lambda, std::size_t terms) {
  if (lambda.size() != terms) {
    throw InputError("coefficient list has " + std::to_string(lambda.size()) + " entries for " +
                     std::to_string(terms) + " terms");
  }
}

SeqVector combine(const std::vector<SeqVector>& terms, const std::vector<Rational>& lambda) {
  SeqVector y;
  for (std::size_t n = 0; n < terms.size(); ++n) y = y.plus(terms[n], lambda[n]);
  return y;
}

}  // namespace

void BlockSequence::validate() const {
  for (std::size_t n = 0; n < terms.size(); ++n) {
    if (terms[n].empty()) throw InputError(term_name(n) + " is zero");
    if (n > 0 && terms[n - 1].max_key() >= terms[n].min_key()) {
      throw InputError(term_name(n) + " does not start after " + term_name(n - 1) + " ends");
    }
  }
}

int min_level(const TreeCoefficients& x) { return level_of(x.min_key()); }

int max_level(const TreeCoefficients& x) { return level_of(x.max_key()); }

void LevelBlockSequence::validate() const {
  for (std::size_t n = 0; n < terms.size(); ++n) {
    if (terms[n].empty()) throw InputError(term_name(n) + " is zero");
    if (n > 0 && max_level(terms[n - 1]) >= min_level(terms[n])) {
      throw InputError("levels of " + term_name(n - 1) + " and " + term_name(n) + " are not separated");
    }
  }
}

void EquivalenceReport::absorb(EquivalenceReport other) {
  instances += other.instances;
  for (auto& v : other.violations) violations.push_back(std::move(v));
}

EquivalenceReport check_lower_l2(const LevelBlockSequence& seq) {
  if (seq.terms.empty()) throw InputError("check_lower_l2: empty sequence");
  seq.validate();
  EquivalenceReport report;
  report.suite = "lower-l2";
  report.instances = 1;
  TreeVector sum(seq.terms.front().depth());
  Rational parts = 0;
  for (std::size_t k = 0; k < seq.terms.size(); ++k) {
    sum = sum.plus(seq.terms[k]);
    parts += jt_norm_sq(seq.terms[k]).value_sq;
    const Rational whole = jt_norm_sq(sum).value_sq;
    if (whole < parts) {
      LevelBlockSequence prefix{{seq.terms.begin(), seq.terms.begin() + static_cast<std::ptrdiff_t>(k + 1)}};
      report.violations.push_back({io::encode(prefix), to_string(whole), to_string(parts),
                                   "jt(sum x_k)^2 >= sum jt(x_k)^2"});
    }
  }
  return report;
}

EquivalenceReport check_upper_l2_dual(const std::vector<DualVector>& seq,
                                      const std::vector<std::vector<Rational>>& coefficients, double tol) {
  if (seq.empty()) throw InputError("check_upper_l2_dual: empty sequence");
  for (std::size_t n = 0; n < seq.size(); ++n) {
    if (seq[n].empty()) throw InputError(term_name(n) + " is zero");
    if (n > 0 && max_level(seq[n - 1]) >= min_level(seq[n])) {
      throw InputError("levels of " + term_name(n - 1) + " and " + term_name(n) + " are not separated");
    }
  }
  std::vector<double> norm_upper;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const DualResult r = jtstar_norm(seq[n], tol);
    if (std::abs(r.value - 1.0) > 2 * tol) {
      throw InputError(term_name(n) + " has dual norm " + std::to_string(r.value) + ", not 1 within tolerance");
    }
    norm_upper.push_back(r.value + tol);
  }

  EquivalenceReport report;
  report.suite = "upper-l2-dual";
  report.constants["tol"] = std::to_string(tol);
  for (const auto& a : coefficients) {
    check_sample_size(a, seq.size());
    ++report.instances;
    DualVector f(seq.front().depth());
    double bound_sq = 0;
    for (std::size_t n = 0; n < seq.size(); ++n) {
      f = f.plus(seq[n], a[n]);
      bound_sq += to_double(a[n]) * to_double(a[n]) * norm_upper[n] * norm_upper[n];
    }
    const double value = f.empty() ? 0.0 : jtstar_norm(f, tol).value;
    const double bound = std::sqrt(bound_sq) * (1 + 1e-12) + tol;
    if (value > bound) {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& v : seq) terms.push_back(io::encode(v));
      report.violations.push_back({{{"terms", terms}, {"coefficients", encode_list(a)}}, std::to_string(value),
                                   std::to_string(bound), "|sum a_i v_i|* <= (sum a_i^2 |v_i|*^2)^(1/2)"});
    }
  }
  return report;
}

EquivalenceReport check_l6(const BlockSequence& seq, const Rational& eps, const Rational& alpha_sq,
                           const std::vector<std::vector<Rational>>& samples) {
  seq.validate();
  if (eps <= 0) throw InputError("check_l6: eps must be positive");
  if (alpha_sq <= 0) throw InputError("check_l6: alpha must be positive");
  const Rational hi = square(1 + eps) * alpha_sq;
  const Rational lo = eps < 1 ? Rational(square(1 - eps) * alpha_sq) : Rational(0);
  for (std::size_t n = 0; n < seq.terms.size(); ++n) {
    if (i_infty(seq.terms[n]) != 0) throw InputError(term_name(n) + " does not have zero sum");
    const Rational nsq = j_norm_sq(seq.terms[n]).value_sq;
    if (!(nsq < hi) || (eps < 1 && !(nsq > lo))) {
      throw InputError(term_name(n) + " has squared norm " + to_string(nsq) + " outside ((1-eps)^2 alpha^2, (1+eps)^2 alpha^2)");
    }
  }

  EquivalenceReport report;
  report.suite = "l6";
  report.constants["eps"] = to_string(eps);
  report.constants["alpha_sq"] = to_string(alpha_sq);
  for (const auto& lambda : samples) {
    check_sample_size(lambda, seq.terms.size());
    ++report.instances;
    Rational s = 0;
    for (const auto& l : lambda) s += l * l;
    const Rational value = j_norm_sq(combine(seq.terms, lambda)).value_sq;
    const Rational upper = 2 * hi * s;
    auto input = [&] { return nlohmann::json{{"sequence", io::encode(seq)}, {"lambda", encode_list(lambda)}}; };
    if (value > upper) {
      report.violations.push_back({input(), to_string(value), to_string(upper), "j(sum l x)^2 <= 2 (1+eps)^2 alpha^2 sum l^2"});
    }
    if (eps < 1 && value < lo * s) {
      report.violations.push_back({input(), to_string(value), to_string(Rational(lo * s)),
                                   "j(sum l x)^2 >= (1-eps)^2 alpha^2 sum l^2"});
    }
  }
  return report;
}

EquivalenceReport check_p10(const BlockSequence& seq, const Rational& eps, const Rational& alpha,
                            const Rational& beta, const std::vector<std::vector<Rational>>& samples) {
  seq.validate();
  if (alpha == 0) throw InputError("check_p10: alpha must be nonzero");
  if (!(eps > 0 && eps < 1)) throw InputError("check_p10: eps must lie in (0,1)");
  if (beta < 0) throw InputError("check_p10: beta must be nonnegative");
  Rational drift = 0;
  for (std::size_t n = 0; n < seq.terms.size(); ++n) {
    drift += abs(i_infty(seq.terms[n]) - alpha);
    if (j_norm_sq(seq.terms[n]).value_sq > beta * beta) {
      throw InputError(term_name(n) + " has norm above beta");
    }
  }
  if (!(drift < abs(alpha) * eps / 4)) {
    throw InputError("sum |i_infty(x_n) - alpha| = " + to_string(drift) + " is not below |alpha| eps / 4");
  }

  EquivalenceReport report;
  report.suite = "p10";
  report.constants["eps"] = to_string(eps);
  report.constants["alpha"] = to_string(alpha);
  report.constants["beta"] = to_string(beta);
  const Rational lo = square(1 - eps) * square(alpha);
  const Rational hi = 9 * square(1 + eps) * square(abs(alpha) + beta);
  for (const auto& lambda : samples) {
    check_sample_size(lambda, seq.terms.size());
    ++report.instances;
    SeqVector basis;
    for (std::size_t n = 0; n < lambda.size(); ++n) basis.set(n + 1, lambda[n]);
    const Rational jv = j_norm_sq(basis).value_sq;
    const Rational value = j_norm_sq(combine(seq.terms, lambda)).value_sq;
    auto input = [&] { return nlohmann::json{{"sequence", io::encode(seq)}, {"lambda", encode_list(lambda)}}; };
    if (value < lo * jv) {
      report.violations.push_back({input(), to_string(value), to_string(Rational(lo * jv)),
                                   "j(sum l x)^2 >= (1-eps)^2 alpha^2 j(sum l e)^2"});
    }
    if (value > hi * jv) {
      report.violations.push_back({input(), to_string(value), to_string(Rational(hi * jv)),
                                   "j(sum l x)^2 <= 9 (1+eps)^2 (|alpha|+beta)^2 j(sum l e)^2"});
    }
  }
  return report;
}

LargeSegments count_large_segments(const TreeVector& x, const Rational& eps) {
  if (eps <= 0) throw InputError("count_large_segments: eps must be positive");
  std::map<NodeKey, Rational> coeffs(x.begin(), x.end());
  auto result = detail::max_disjoint_family(
      coeffs, [&eps](const Rational& s) { return abs(s) >= eps ? Rational(1) : Rational(0); });
  return {result.family.size(), Partition(std::move(result.family))};
}

ComplJResult compl_j_apply(const BlockSequence& xs, const IntervalPartition& jn, const SeqVector& x) {
  xs.validate();
  const auto& ivs = jn.intervals();
  if (ivs.size() != xs.terms.size()) {
    throw InputError("compl_j_apply: " + std::to_string(ivs.size()) + " intervals for " +
                     std::to_string(xs.terms.size()) + " blocks");
  }
  for (std::size_t n = 0; n < ivs.size(); ++n) {
    const std::uint64_t expected = n == 0 ? 1 : ivs[n - 1].hi + 1;
    if (ivs[n].lo != expected) throw InputError("compl_j_apply: J_" + std::to_string(n + 1) + " does not start at " + std::to_string(expected));
    const auto& t = xs.terms[n];
    if (i_infty(t) != 1) throw InputError("compl_j_apply: " + term_name(n) + " does not sum to 1");
    if (t.min_key() < ivs[n].lo || t.max_key() > ivs[n].hi) {
      throw InputError("compl_j_apply: range of " + term_name(n) + " is not inside J_" + std::to_string(n + 1));
    }
  }
  auto project = [&](const SeqVector& v) {
    SeqVector out;
    for (std::size_t n = 0; n < ivs.size(); ++n) out = out.plus(xs.terms[n], interval_eval(ivs[n], v));
    return out;
  };

  ComplJResult r;
  r.image = project(x);
  r.image_sq = j_norm_sq(r.image).value_sq;
  r.input_sq = j_norm_sq(x).value_sq;
  r.ratio = r.input_sq == 0 ? 0.0 : std::sqrt(to_double(Rational(r.image_sq / r.input_sq)));
  r.idempotent = std::all_of(xs.terms.begin(), xs.terms.end(), [&](const SeqVector& t) { return project(t) == t; });
  return r;
}

void P11Config::validate() const {
  if (a.empty()) throw InputError("p11: no coefficients");
  if (a.size() != b.size()) throw InputError("p11: a and b differ in length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0 && abs(a[i]) > abs(a[i - 1])) throw InputError("p11: |a_i| increases at index " + std::to_string(i + 1));
    if (b[i] < abs(a[i])) throw InputError("p11: b_i < |a_i| at index " + std::to_string(i + 1));
  }
  if (bnorm < 1) throw InputError("p11: b must be at least 1");
  if (!(eps > 0 && eps < 1)) throw InputError("p11: eps must lie in (0,1)");
  if (delta.empty() || delta.front() != bnorm) throw InputError("p11: delta_1 must equal b");
  Rational total = 0;
  for (std::size_t k = 0; k < delta.size(); ++k) {
    if (delta[k] <= 0) throw InputError("p11: delta_" + std::to_string(k + 1) + " is not positive");
    total += delta[k];
  }
  if (!(total < (1 + eps) * bnorm)) throw InputError("p11: sum of delta_k is not below (1+eps) b");
}

namespace {

Rational weight(const P11Config& cfg, std::size_t i) { return square(abs(cfg.a[i]) + cfg.b[i]); }

bool fits(const P11Config& cfg, std::size_t k, const Rational& sum) {
  if (k == 1) return sum <= 2 * square(1 + cfg.eps) * square(cfg.bnorm);
  return 9 * square(1 + cfg.eps) * sum < square(cfg.delta[k - 1]);
}

}  // namespace

std::vector<IndexInterval> p11_partition(const P11Config& cfg) {
  cfg.validate();
  const std::size_t n = cfg.a.size();
  std::vector<IndexInterval> blocks;
  std::size_t i = 0;
  for (std::size_t k = 1; i < n; ++k) {
    if (k > cfg.delta.size()) {
      throw P11Infeasible("p11: no delta_" + std::to_string(k) + " left for index " + std::to_string(i + 1), k, i + 1);
    }
    const std::size_t start = i;
    Rational sum = 0;
    while (i < n && fits(cfg, k, sum + weight(cfg, i))) sum += weight(cfg, i++);
    if (i == start) {
      throw P11Infeasible("p11: block F_" + std::to_string(k) + " cannot hold index " + std::to_string(i + 1), k, i + 1);
    }
    blocks.emplace_back(start + 1, i);
  }
  return blocks;
}

bool p11_partition_valid(const P11Config& cfg, const std::vector<IndexInterval>& blocks) {
  std::size_t next = 1;
  for (std::size_t k = 1; k <= blocks.size(); ++k) {
    const auto [lo, hi] = blocks[k - 1];
    if (lo != next || hi < lo || hi > cfg.a.size() || k > cfg.delta.size()) return false;
    Rational sum = 0;
    for (std::size_t i = lo - 1; i < hi; ++i) sum += weight(cfg, i);
    if (!fits(cfg, k, sum)) return false;
    // Greedy maximality: the next index would break the block's inequality.
    if (hi < cfg.a.size() && fits(cfg, k, sum + weight(cfg, hi))) return false;
    next = hi + 1;
  }
  return next == cfg.a.size() + 1;
}

std::vector<NodeKey> p11_tails(const std::vector<Branch>& branches, const std::vector<IndexInterval>& blocks) {
  for (std::size_t i = 0; i < branches.size(); ++i) {
    for (std::size_t j = i + 1; j < branches.size(); ++j) {
      if (branches[i] == branches[j]) throw InputError("p11_tails: branch '" + branches[i].bits() + "' repeats");
    }
  }
  int depth = 0;
  for (const auto& b : branches) depth = std::max(depth, b.depth());
  std::vector<NodeKey> tails;
  NodeKey previous = 0;
  for (const auto& [lo, hi] : blocks) {
    if (lo < 1 || hi < lo || hi > branches.size()) {
      throw InputError("p11_tails: block [" + std::to_string(lo) + "," + std::to_string(hi) + "] has no branches");
    }
    std::vector<Branch> group(branches.begin() + static_cast<std::ptrdiff_t>(lo - 1),
                              branches.begin() + static_cast<std::ptrdiff_t>(hi));
    const NodeKey m = std::max(incomparable_tail_depth(group), previous + 1);
    std::vector<std::pair<Branch, NodeKey>> finals;
    for (const auto& b : group) finals.emplace_back(b, m);
    RestrictionSet::final_segments(finals, depth);
    tails.push_back(m);
    previous = m;
  }
  return tails;
}

}  // namespace jtree
