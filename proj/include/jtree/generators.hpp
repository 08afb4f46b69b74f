#pragma once

// Seeded instance generators. Every generator draws from an Rng whose output depends only
// on (seed, stream), so instances are reproducible across platforms and standard libraries.

#include <cstdint>
#include <random>
#include <vector>

#include "jtree/dual_norm.hpp"
#include "jtree/dyadic_tree.hpp"
#include "jtree/james_norm.hpp"
#include "jtree/jt_norm.hpp"
#include "jtree/rational.hpp"
#include "jtree/vectors.hpp"
#include "jtree/verifier.hpp"

namespace jtree::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  /// Uniform on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// p/q with 1 <= q <= max_den and |p/q| <= bound.
Rational rational(Rng& rng, int bound = 3, int max_den = 8);
Rational nonzero_rational(Rng& rng, int bound = 3, int max_den = 8);
std::vector<Rational> rationals(Rng& rng, std::size_t n, int bound = 3, int max_den = 8);

/// Uniformly chosen key of the depth-d tree.
NodeKey random_key(Rng& rng, int depth);

/// Up to `support` random nonzero entries on the depth-d tree (at least one).
TreeVector tree_vector(Rng& rng, int depth, std::size_t support);

/// Terms occupy strictly increasing level bands inside [0, depth]; terms <= depth + 1.
LevelBlockSequence level_block(Rng& rng, std::size_t terms, int depth);

/// Distinct bit strings of the given length.
std::vector<Branch> branches(Rng& rng, std::size_t count, int depth);

/// Pairwise incomparable keys of the depth-d tree, obtained by splitting random frontier
/// nodes and keeping a random subset of the frontier.
std::vector<NodeKey> antichain(Rng& rng, std::size_t max_size, int depth);

/// Random segment of the depth-d tree.
Segment segment(Rng& rng, int depth);

/// Random vector supported on a subset of the branch's keys.
TreeVector branch_vector(Rng& rng, const Branch& b);

/// An admissible set drawn from subtrees, final segments, level bands, ancestor-closed key
/// sets, and unions of a key set with a top band.
RestrictionSet admissible_set(Rng& rng, int depth);

struct L6Instance {
  BlockSequence seq;
  Rational eps;
  Rational alpha_sq;
};

/// Zero-sum blocks whose squared norms lie strictly inside ((1-eps)^2, (1+eps)^2) alpha^2.
L6Instance j_block_zero_sum(Rng& rng, std::size_t terms, const Rational& eps);

struct P10Instance {
  BlockSequence seq;
  Rational eps;
  Rational alpha;
  Rational beta;
};

/// Blocks with i_infty close to alpha (total drift below |alpha| eps / 8) and
/// beta^2 >= max j_norm_sq(x_n).
P10Instance j_block_alpha(Rng& rng, std::size_t terms, const Rational& eps);

/// Head of three coefficients filling the first block exactly, then a geometric tail that
/// the greedy construction can always place.
P11Config p11_geometric(Rng& rng, std::size_t tail);

/// Harmonic tail against fast-decaying delta_k; the greedy construction must fail.
P11Config p11_slow_decay(Rng& rng, std::size_t tail);

/// One branch per index: the binary code of the index followed by random bits.
std::vector<Branch> p11_branches(Rng& rng, std::size_t count, int depth = kDefaultDepth);

/// Level-blocked functionals with dual norm 1: segment functionals and Pythagorean
/// combinations of disjoint segments through incomparable nodes.
std::vector<DualVector> unit_dual_terms(Rng& rng, std::size_t terms, int depth);

/// Pairwise disjoint segments s_i, each containing nodes[i], for an antichain `nodes`.
std::vector<Segment> segments_through(Rng& rng, const std::vector<NodeKey>& nodes, int depth);

}  // namespace jtree::gen
