#include <algorithm>
#include <array>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "jtree/oracle.hpp"

namespace jtree::oracle {

namespace {

using Wide = __int128;

// x scaled by the lcm of its denominators, when everything fits comfortably in int64.
struct Scaled {
  std::vector<std::int64_t> values;
  Rational scale;  // original = values / scale
};

template <class Entries>
std::optional<Scaled> scale_to_integers(const Entries& entries) {
  mpz_class lcm = 1;
  for (const auto& [k, v] : entries) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  Scaled out;
  mpz_class total = 0;
  for (const auto& [k, v] : entries) {
    const mpz_class n = v.get_num() * (lcm / v.get_den());
    if (!n.fits_slong_p()) return std::nullopt;
    total += abs(n);
    out.values.push_back(n.get_si());
  }
  // Partial sums squared and accumulated must stay inside __int128.
  if (mpz_sizeinbase(total.get_mpz_t(), 2) > 40) return std::nullopt;
  out.scale = Rational(lcm);
  return out;
}

template <class Fam>
bool better(const Wide value, const Fam& fam, const Wide best, const Fam& best_fam, bool have) {
  if (!have || value > best) return true;
  if (value < best) return false;
  if (fam.size() != best_fam.size()) return fam.size() < best_fam.size();
  return fam < best_fam;
}

// Each support point is uncovered, opens a new interval, or extends the open one.
struct JSearch {
  const std::vector<std::int64_t>& v;
  Wide best = 0;
  bool have = false;
  std::vector<std::pair<int, int>> best_fam;
  std::vector<std::pair<int, int>> fam;

  void run(std::size_t i, bool open, std::int64_t open_sum, Wide closed) {
    if (i == v.size()) {
      const Wide total = closed + (open ? Wide(open_sum) * open_sum : 0);
      if (better(total, fam, best, best_fam, have)) {
        best = total;
        best_fam = fam;
        have = true;
      }
      return;
    }
    const Wide closed_now = closed + (open ? Wide(open_sum) * open_sum : 0);
    run(i + 1, false, 0, closed_now);
    fam.emplace_back(static_cast<int>(i), static_cast<int>(i));
    run(i + 1, true, v[i], closed_now);
    fam.pop_back();
    if (open) {
      const int prev_hi = fam.back().second;
      fam.back().second = static_cast<int>(i);
      run(i + 1, true, open_sum + v[i], closed);
      fam.back().second = prev_hi;
    }
  }
};

const std::vector<Partition>& cached_partitions(int depth) {
  static std::array<std::once_flag, kMaxEnumerationDepth + 1> once;
  static std::array<std::vector<Partition>, kMaxEnumerationDepth + 1> cache;
  if (depth < 0 || depth > kMaxEnumerationDepth) enumerate_partitions(depth);  // throws
  const auto d = static_cast<std::size_t>(depth);
  std::call_once(once[d], [&] { cache[d] = enumerate_partitions(depth); });
  return cache[d];
}

}  // namespace

BruteJ j_norm_brute(const SeqVector& x) {
  if (x.empty()) return {};
  std::vector<std::uint64_t> pos;
  for (const auto& [k, v] : x) pos.push_back(k);
  if (pos.size() > 20) throw std::invalid_argument("j_norm_brute: support too large to enumerate");

  auto scaled = scale_to_integers(x.entries());
  if (!scaled) throw std::invalid_argument("j_norm_brute: coefficients too large for exact enumeration");
  JSearch search{scaled->values, 0, false, {}, {}};
  search.run(0, false, 0, 0);

  std::vector<Interval> intervals;
  for (const auto& [lo, hi] : search.best_fam) intervals.push_back({pos[static_cast<std::size_t>(lo)], pos[static_cast<std::size_t>(hi)]});
  mpz_class wide(static_cast<unsigned long>(static_cast<std::uint64_t>(search.best >> 64)));
  wide <<= 64;
  wide += static_cast<unsigned long>(static_cast<std::uint64_t>(search.best));
  Rational value(wide);
  value /= scaled->scale * scaled->scale;
  return {value, IntervalPartition(std::move(intervals))};
}

BruteJT jt_norm_brute(const TreeVector& x, int depth) {
  for (const auto& [k, v] : x) {
    if (!key_in_depth(k, depth)) throw std::invalid_argument("jt_norm_brute: support beyond the enumerated depth");
  }
  BruteJT out;
  bool have = false;
  std::size_t best_size = 0;
  for (const auto& p : cached_partitions(depth)) {
    Rational total = 0;
    bool trimmed = true;
    for (const auto& s : p.segments()) {
      if (x.get(s.top()) == 0 || x.get(s.bottom()) == 0) {
        trimmed = false;
        break;
      }
      Rational sum = 0;
      for (NodeKey k : s.members()) sum += x.get(k);
      total += sum * sum;
    }
    if (!trimmed) continue;
    bool take = !have || total > out.value_sq;
    if (have && total == out.value_sq) {
      take = p.size() < best_size || (p.size() == best_size && p.segments() < out.family.segments());
    }
    if (take) {
      out.value_sq = total;
      out.family = p;
      best_size = p.size();
      have = true;
    }
  }
  if (!have || out.value_sq == 0) return {};
  return out;
}

std::size_t count_large_brute(const TreeVector& x, const Rational& eps, int depth) {
  std::size_t best = 0;
  for (const auto& p : cached_partitions(depth)) {
    if (p.size() <= best) continue;
    bool all_large = true;
    for (const auto& s : p.segments()) {
      Rational sum = 0;
      for (NodeKey k : s.members()) sum += x.get(k);
      if (abs(sum) < eps) {
        all_large = false;
        break;
      }
    }
    if (all_large) best = p.size();
  }
  return best;
}

namespace {
// free: the root has no segment arriving from above. cont: the root continues its
// parent's segment. Returned counts include the empty family.
std::pair<std::uint64_t, std::uint64_t> count_rec(int depth) {
  if (depth < 0) return {1, 0};
  const auto [free_child, cont_child] = count_rec(depth - 1);
  // The root's segment ends here or passes into exactly one child.
  const std::uint64_t cont = free_child * free_child + 2 * cont_child * free_child;
  const std::uint64_t uncovered = free_child * free_child;
  return {uncovered + cont, cont};
}
}  // namespace

std::uint64_t partition_count(int depth) { return count_rec(depth).first - 1; }

}  // namespace jtree::oracle
