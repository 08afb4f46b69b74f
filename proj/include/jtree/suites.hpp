#pragma once

// Named verification suites over generated instances. Instance i of a suite draws from
// Rng(seed, i), so reports are identical for any thread count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jtree/rational.hpp"
#include "jtree/verifier.hpp"

namespace jtree::suites {

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::optional<std::size_t> count;  // suite default when unset
  std::optional<int> depth;          // suite default when unset
  std::optional<Rational> eps;       // suite default when unset
  double tol = 1e-6;
  std::size_t samples = 32;          // coefficient vectors per instance (l6, p10)
  unsigned threads = 0;              // 0: hardware concurrency
};

/// Prefix of the bound name of every violation raised by a certificate re-evaluation.
inline constexpr const char* kCertificateBound = "certificate";

const std::vector<std::string>& suite_names();

/// Runs a suite by name; throws InputError for unknown names (listing the valid ones).
EquivalenceReport run_suite(const std::string& name, const SuiteOptions& opts);

EquivalenceReport lower_l2(const SuiteOptions& opts);
EquivalenceReport upper_l2_dual(const SuiteOptions& opts);
EquivalenceReport l6(const SuiteOptions& opts);
EquivalenceReport p10(const SuiteOptions& opts);
EquivalenceReport l1_finite(const SuiteOptions& opts);
EquivalenceReport compl_j(const SuiteOptions& opts);
EquivalenceReport p11(const SuiteOptions& opts);

/// Every {-1,0,1} vector on positions 1..8 against the brute-force oracle.
EquivalenceReport oracle_j_exhaustive(const SuiteOptions& opts);
/// Random rational vectors with support <= 10.
EquivalenceReport oracle_j_random(const SuiteOptions& opts);
EquivalenceReport oracle_j(const SuiteOptions& opts);

/// Every {-1,0,1} vector on the depth-2 tree.
EquivalenceReport oracle_jt_exhaustive(const SuiteOptions& opts);
/// Random vectors with entries in [-2,2] on the full tree of the given depth (<= 3).
EquivalenceReport oracle_jt_random(const SuiteOptions& opts);
EquivalenceReport oracle_jt(const SuiteOptions& opts);

/// Depth-1 functionals against the barrier oracle over the 11 explicit constraints.
EquivalenceReport dual_barrier(const SuiteOptions& opts);
/// |s*| = 1 for random segments.
EquivalenceReport dual_segments(const SuiteOptions& opts);
/// |sum l_i s_i*| = (sum l_i^2)^(1/2) for disjoint segments through incomparable nodes.
EquivalenceReport dual_l2_families(const SuiteOptions& opts);
EquivalenceReport oracle_dual(const SuiteOptions& opts);

EquivalenceReport isometry_branch(const SuiteOptions& opts);
EquivalenceReport isometry_incomparable(const SuiteOptions& opts);
EquivalenceReport pa_contraction(const SuiteOptions& opts);

/// Number of violations whose bound name does / does not start with kCertificateBound.
std::size_t certificate_violations(const EquivalenceReport& r);
std::size_t value_violations(const EquivalenceReport& r);

}  // namespace jtree::suites
