#pragma once

// Exact norm of the James tree space JT on the truncated dyadic tree:
//
//   ||x||^2 = max over pairwise disjoint segments s_1..s_k of  sum_j (sum_{i in s_j} x_i)^2.

#include <optional>
#include <set>
#include <vector>

#include "jtree/dyadic_tree.hpp"
#include "jtree/rational.hpp"
#include "jtree/vectors.hpp"

namespace jtree {

/// Squared norm plus a partition attaining it.
struct NormCertificate {
  Rational value_sq;
  Partition witness;

  double value() const;
};

/// Certificate segments start and end on support nodes, have nonzero sums, and among all
/// maximizers the family has the fewest segments, then the smallest (top, bottom) list.
NormCertificate jt_norm_sq(const TreeVector& x);

/// Sum of (segment sum)^2 over the partition.
Rational p_norm_sq(const TreeVector& x, const Partition& partition);

/// Sum of x over the members of s (the segment functional s*(x)).
Rational segment_sum(const TreeVector& x, const Segment& s);

/// A node set A such that s ∩ A is a segment for every segment s; P_A is then a
/// norm-one projection. Built from subtrees, final segments of branches and explicit
/// keys; every factory validates admissibility on the depth it is given.
class RestrictionSet {
 public:
  static RestrictionSet whole_tree();
  /// Union of full subtrees; roots must be pairwise incomparable.
  static RestrictionSet subtrees(std::vector<NodeKey> roots, int depth);
  /// Union of final segments {k in branch : k > m}; first elements must be pairwise incomparable.
  static RestrictionSet final_segments(const std::vector<std::pair<Branch, NodeKey>>& tails, int depth);
  /// All nodes whose level lies in [lo, hi].
  static RestrictionSet level_band(int lo, int hi);
  /// Explicit member keys, validated against every segment of the depth-bounded tree.
  static RestrictionSet from_keys(std::set<NodeKey> keys, int depth);
  /// Union of two sets; the result is validated as a whole.
  static RestrictionSet unite(const RestrictionSet& a, const RestrictionSet& b, int depth);

  bool contains(NodeKey key) const;

  /// A segment whose intersection with this set is not a segment, searched among all
  /// segments of the tree of the given depth.
  std::optional<Segment> find_violation(int depth) const;
  /// Throws InputError naming find_violation's segment.
  void validate(int depth) const;

  const std::vector<NodeKey>& subtree_roots() const noexcept { return roots_; }
  const std::vector<Segment>& chains() const noexcept { return chains_; }
  const std::set<NodeKey>& keys() const noexcept { return keys_; }
  bool is_whole_tree() const noexcept { return whole_; }
  std::optional<std::pair<int, int>> band() const noexcept { return band_; }

 private:
  std::vector<NodeKey> members(int depth) const;

  bool whole_ = false;
  std::vector<NodeKey> roots_;
  std::vector<Segment> chains_;
  std::set<NodeKey> keys_;
  std::optional<std::pair<int, int>> band_;
};

/// P_A x: coefficients outside A set to zero. Throws InputError (naming a witnessing
/// segment) if A is not admissible on x's tree.
TreeVector restrict(const TreeVector& x, const RestrictionSet& a);

/// Coefficients along a branch, root first, as positions 1, 2, ...
/// Throws InputError if x has support off the branch.
SeqVector chain_coefficients(const TreeVector& x, const Branch& b);

/// Coefficients along the members of a segment, top first, as positions 1, 2, ...
/// (ignores coefficients off the segment).
SeqVector segment_coefficients(const TreeVector& x, const Segment& s);

}  // namespace jtree
