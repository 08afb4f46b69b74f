#pragma once

// Norm on JT* for finite combinations of coordinate functionals, computed as
// sup { f(x) : ||x||_JT <= 1 } by a cutting-plane method that uses the exact JT-norm
// engine as its separation oracle.

#include <utility>
#include <vector>

#include "jtree/dyadic_tree.hpp"
#include "jtree/rational.hpp"
#include "jtree/vectors.hpp"

namespace jtree {

/// sum_i lambda_i s_i* over pairwise disjoint segments with sum lambda_i^2 <= 1.
struct WElement {
  std::vector<std::pair<Rational, Segment>> terms;
};

/// Certified output of jtstar_norm.
struct DualResult {
  double value = 0;      // midpoint of [lower, upper]
  double tolerance = 0;  // requested absolute tolerance
  double lower = 0;      // f(witness), exact pairing rounded to double
  double upper = 0;      // optimum of the final master problem
  long iterations = 0;
  TreeVector witness;    // exact rationals, ||witness||_JT <= 1 verified exactly
};

struct DualOptions {
  double tol = 1e-6;
  long max_iterations = 10000;
};

/// The functional s*: coefficient 1 on every member of s.
DualVector segment_functional(const Segment& s, int depth = kDefaultDepth);

/// sum_k f(k) x(k).
Rational pairing(const DualVector& f, const TreeVector& x);

/// Dual norm of f within opts.tol (absolute). Throws ConvergenceError carrying both bounds
/// when the iteration cap is reached first, and InputError for tol <= 0.
DualResult jtstar_norm(const DualVector& f, const DualOptions& opts = {});
inline DualResult jtstar_norm(const DualVector& f, double tol) { return jtstar_norm(f, DualOptions{tol}); }

/// Membership in the norming set W: sum lambda^2 <= 1 and pairwise disjoint segments.
bool w_element_check(const WElement& w);

/// The DualVector sum_i lambda_i s_i*.
DualVector w_element_functional(const WElement& w, int depth = kDefaultDepth);

}  // namespace jtree
