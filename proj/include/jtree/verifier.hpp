#pragma once

// Exact checks of the quantitative estimates for J and JT: lower/upper l2-estimates of
// level-block sequences, block-basis equivalences in J, the disjoint-family cardinality
// bound, the block projection in J, and the interval/tail construction on branches.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "jtree/dual_norm.hpp"
#include "jtree/dyadic_tree.hpp"
#include "jtree/error.hpp"
#include "jtree/james_norm.hpp"
#include "jtree/jt_norm.hpp"
#include "jtree/rational.hpp"
#include "jtree/vectors.hpp"

namespace jtree {

/// Block sequence in J: max position of term k < min position of term k+1.
struct BlockSequence {
  std::vector<SeqVector> terms;

  /// Throws InputError unless every term is nonzero and the supports are successive.
  void validate() const;
};

/// l(x) and u(x): least and greatest level in the support of a nonzero vector.
int min_level(const TreeCoefficients& x);
int max_level(const TreeCoefficients& x);

/// u(x_k) < l(x_{k+1}) for consecutive terms.
struct LevelBlockSequence {
  std::vector<TreeVector> terms;

  void validate() const;
};

struct Violation {
  nlohmann::json input;
  std::string lhs;
  std::string rhs;
  std::string bound;
};

struct EquivalenceReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::vector<Violation> violations;
  std::map<std::string, std::string> constants;

  bool passed() const { return violations.empty(); }
  /// Appends the other report's instances and violations.
  void absorb(EquivalenceReport other);
};

/// jt(x_1 + ... + x_k) >= jt(x_1) + ... + jt(x_k) for every prefix, exactly.
EquivalenceReport check_lower_l2(const LevelBlockSequence& seq);

/// |sum a_i v_i|* <= (sum a_i^2 |v_i|*^2)^{1/2} for each coefficient list, with every
/// dual norm computed to tol. Requires level-blocked terms of dual norm within 2 tol of 1.
EquivalenceReport check_upper_l2_dual(const std::vector<DualVector>& seq,
                                      const std::vector<std::vector<Rational>>& coefficients, double tol);

/// (1-eps)^2 alpha^2 sum l^2 <= j(sum l_n x_n) <= 2 (1+eps)^2 alpha^2 sum l^2 for each l.
/// Requires i_infty(x_n) = 0 and (1-eps) alpha < |x_n| < (1+eps) alpha, with alpha given
/// by its square. The lower bound is only meaningful (and only checked) for eps < 1.
EquivalenceReport check_l6(const BlockSequence& seq, const Rational& eps, const Rational& alpha_sq,
                           const std::vector<std::vector<Rational>>& samples);

/// (1-eps)^2 alpha^2 J <= j(sum l_n x_n) <= 9 (1+eps)^2 (|alpha|+beta)^2 J with
/// J = j(sum l_n e_n). Requires alpha != 0, 0 < eps < 1, sum |i_infty(x_n) - alpha| <
/// |alpha| eps / 4 and j(x_n) <= beta^2.
EquivalenceReport check_p10(const BlockSequence& seq, const Rational& eps, const Rational& alpha,
                            const Rational& beta, const std::vector<std::vector<Rational>>& samples);

struct LargeSegments {
  std::size_t size = 0;
  Partition witness;
};

/// Largest family of disjoint segments with |s*(x)| >= eps. Throws for eps <= 0.
LargeSegments count_large_segments(const TreeVector& x, const Rational& eps);

struct ComplJResult {
  SeqVector image;
  Rational image_sq;
  Rational input_sq;
  double ratio = 0;          // sqrt(image_sq / input_sq); 0 for x = 0
  bool idempotent = false;   // P(x_m) = x_m for every m
};

/// P(x) = sum_n J_n*(x) x_n. Requires i_infty(x_n) = 1, ran(x_n) inside J_n, and J_1, J_2,
/// ... consecutive starting at position 1.
ComplJResult compl_j_apply(const BlockSequence& xs, const IntervalPartition& jn, const SeqVector& x);

struct P11Config {
  std::vector<Rational> a;
  std::vector<Rational> b;
  Rational bnorm;
  Rational eps;
  std::vector<Rational> delta;

  /// Throws InputError on any violated invariant.
  void validate() const;
};

/// Index intervals [lo, hi], 1-based and inclusive.
using IndexInterval = std::pair<std::size_t, std::size_t>;

/// Raised when the greedy construction cannot place index `index` into block `block`.
class P11Infeasible : public InputError {
 public:
  P11Infeasible(const std::string& what, std::size_t block, std::size_t index)
      : InputError(what), block_(block), index_(index) {}
  std::size_t block() const noexcept { return block_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t block_;
  std::size_t index_;
};

/// Greedy blocks F_1, F_2, ... covering 1..a.size(): F_1 is the longest prefix with
/// sum (|a_i|+b_i)^2 <= 2 (1+eps)^2 b^2, and F_k (k >= 2) the longest run with
/// 9 (1+eps)^2 sum (|a_i|+b_i)^2 < delta_k^2.
std::vector<IndexInterval> p11_partition(const P11Config& cfg);

/// Exact re-check of the defining inequalities and of the covering property.
bool p11_partition_valid(const P11Config& cfg, const std::vector<IndexInterval>& blocks);

/// m_k = max(incomparable_tail_depth of the branches indexed by F_k, m_{k-1} + 1), m_0 = 0.
/// The tails {sigma_i beyond m_k : i in F_k} are checked to be pairwise incomparable.
std::vector<NodeKey> p11_tails(const std::vector<Branch>& branches, const std::vector<IndexInterval>& blocks);

}  // namespace jtree
