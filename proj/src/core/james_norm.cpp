#include "jtree/james_norm.hpp"

#include <algorithm>

#include "jtree/error.hpp"

namespace jtree {

IntervalPartition::IntervalPartition(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  std::sort(intervals_.begin(), intervals_.end());
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (iv.lo == 0 || iv.lo > iv.hi) {
      throw InputError("interval [" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) + "] is invalid");
    }
    if (i > 0 && intervals_[i - 1].hi >= iv.lo) {
      throw InputError("intervals [" + std::to_string(intervals_[i - 1].lo) + "," +
                       std::to_string(intervals_[i - 1].hi) + "] and [" + std::to_string(iv.lo) + "," +
                       std::to_string(iv.hi) + "] overlap");
    }
  }
}

JNormResult j_norm_sq(const SeqVector& x) {
  // Suffix dynamic program over the support positions p_0 < ... < p_{m-1}:
  //   best[i] = max( best[i+1],  max_j (x(p_i) + ... + x(p_j))^2 + best[j+1] ).
  // Ties on value go to fewer intervals. Scanning "take [i, j]" with j increasing
  // before "skip i", and replacing only on strict improvement, yields the
  // lexicographically smallest family among the remaining ties.
  std::vector<std::uint64_t> pos;
  std::vector<Rational> coef;
  for (const auto& [p, v] : x) {
    pos.push_back(p);
    coef.push_back(v);
  }
  const std::size_t m = pos.size();

  struct Cell {
    Rational value;
    std::size_t count = 0;
    std::size_t end = 0;  // last index of the interval opened at i; m means "skip i"
  };
  std::vector<Cell> best(m + 1);
  best[m].end = m;

  for (std::size_t i = m; i-- > 0;) {
    Cell cell;
    bool have = false;
    Rational run = 0;
    for (std::size_t j = i; j < m; ++j) {
      run += coef[j];
      if (run == 0) continue;
      Rational value = run * run + best[j + 1].value;
      const std::size_t count = best[j + 1].count + 1;
      if (!have || value > cell.value || (value == cell.value && count < cell.count)) {
        cell.value = std::move(value);
        cell.count = count;
        cell.end = j;
        have = true;
      }
    }
    const Cell& skip = best[i + 1];
    if (!have || skip.value > cell.value || (skip.value == cell.value && skip.count < cell.count)) {
      cell.value = skip.value;
      cell.count = skip.count;
      cell.end = m;
    }
    best[i] = std::move(cell);
  }

  std::vector<Interval> chosen;
  for (std::size_t i = 0; i < m;) {
    if (best[i].end == m) {
      ++i;
      continue;
    }
    chosen.push_back({pos[i], pos[best[i].end]});
    i = best[i].end + 1;
  }
  return {best[0].value, IntervalPartition(std::move(chosen))};
}

IntervalPartition j_norming_partition(const SeqVector& x) { return j_norm_sq(x).certificate; }

Rational i_infty(const SeqVector& x) {
  Rational s = 0;
  for (const auto& [p, v] : x) s += v;
  return s;
}

Rational interval_eval(const Interval& interval, const SeqVector& x) {
  if (interval.lo > interval.hi) throw InputError("interval_eval: lo > hi");
  Rational s = 0;
  for (auto it = x.entries().lower_bound(interval.lo); it != x.end() && it->first <= interval.hi; ++it) {
    s += it->second;
  }
  return s;
}

Rational j_partition_value(const SeqVector& x, const IntervalPartition& family) {
  Rational total = 0;
  for (const auto& iv : family.intervals()) {
    const Rational s = interval_eval(iv, x);
    total += s * s;
  }
  return total;
}

}  // namespace jtree
