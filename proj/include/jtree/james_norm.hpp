#pragma once

// Exact norm of the James space J on finite-support sequences:
//
//   ||x||^2 = max over disjoint intervals I_1..I_n of  sum_i (sum_{k in I_i} x(k))^2.

#include <compare>
#include <cstdint>
#include <vector>

#include "jtree/rational.hpp"
#include "jtree/vectors.hpp"

namespace jtree {

struct Interval {
  std::uint64_t lo;
  std::uint64_t hi;

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Pairwise disjoint intervals sorted by lo.
class IntervalPartition {
 public:
  IntervalPartition() = default;
  /// Sorts and validates (lo <= hi, no overlaps); throws InputError otherwise.
  explicit IntervalPartition(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  bool empty() const noexcept { return intervals_.empty(); }

  friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;

 private:
  std::vector<Interval> intervals_;
};

struct JNormResult {
  Rational value_sq;
  IntervalPartition certificate;
};

/// Squared J norm with a norming interval family. Certificate intervals start and end
/// on support positions and never have zero sum; among all maximizers the one with the
/// fewest intervals, then lexicographically smallest (lo, hi) list, is returned.
JNormResult j_norm_sq(const SeqVector& x);

IntervalPartition j_norming_partition(const SeqVector& x);

/// Sum of all coefficients (the functional for the interval N).
Rational i_infty(const SeqVector& x);

/// Sum of x(k) over lo <= k <= hi.
Rational interval_eval(const Interval& interval, const SeqVector& x);

/// sum over the family of interval_eval(I, x)^2.
Rational j_partition_value(const SeqVector& x, const IntervalPartition& family);

}  // namespace jtree
