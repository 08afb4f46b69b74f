#pragma once

// Reference solvers that share no code with the norm engines: exhaustive enumeration
// and a log-barrier method over explicitly listed constraints.

#include <cstdint>
#include <vector>

#include "jtree/dyadic_tree.hpp"
#include "jtree/james_norm.hpp"
#include "jtree/rational.hpp"
#include "jtree/vectors.hpp"

namespace jtree::oracle {

struct BruteJ {
  Rational value_sq;
  IntervalPartition family;  // trimmed canonical maximizer
};

/// Enumerates every family of disjoint intervals over the support of x.
BruteJ j_norm_brute(const SeqVector& x);

struct BruteJT {
  Rational value_sq;
  Partition family;  // canonical maximizer among families with support endpoints
};

/// Maximum of the partition seminorm over enumerate_partitions(depth).
BruteJT jt_norm_brute(const TreeVector& x, int depth);

/// Largest family from enumerate_partitions(depth) whose segment sums all have |sum| >= eps.
std::size_t count_large_brute(const TreeVector& x, const Rational& eps, int depth);

/// Number of nonempty disjoint-segment families of the depth-d tree, by recursion over
/// subtrees (independent of enumerate_partitions).
std::uint64_t partition_count(int depth);

/// max f.x subject to p_norm_sq(x, P) <= 1 for every listed partition, to absolute
/// accuracy tol, by a log-barrier path-following method.
double barrier_dual_norm(const DualVector& f, const std::vector<Partition>& constraints, double tol = 1e-9);

}  // namespace jtree::oracle
