#include "doctest.h"

#include <cmath>

#include "jtree/error.hpp"
#include "jtree/generators.hpp"
#include "jtree/james_norm.hpp"
#include "jtree/oracle.hpp"

using namespace jtree;

namespace {

IntervalPartition ivs(std::vector<Interval> v) { return IntervalPartition(std::move(v)); }

SeqVector random_seq(gen::Rng& rng, std::uint64_t span, std::size_t n) {
  SeqVector x;
  for (std::size_t i = 0; i < n; ++i) x.set(1 + rng.below(span), gen::rational(rng));
  return x;
}

}  // namespace

TEST_CASE("j_norm_sq examples") {
  auto r = j_norm_sq(SeqVector{{1, 2}});
  CHECK(r.value_sq == 4);
  CHECK(r.certificate == ivs({{1, 1}}));

  r = j_norm_sq(SeqVector{{1, 1}, {2, -1}});
  CHECK(r.value_sq == 2);
  CHECK(r.certificate == ivs({{1, 1}, {2, 2}}));

  r = j_norm_sq(SeqVector{{1, 1}, {2, -1}, {3, 1}});
  CHECK(r.value_sq == 3);
  CHECK(r.certificate == ivs({{1, 1}, {2, 2}, {3, 3}}));

  r = j_norm_sq(SeqVector{{1, 1}, {2, 1}, {3, 1}});
  CHECK(r.value_sq == 9);
  CHECK(r.certificate == ivs({{1, 3}}));
}

TEST_CASE("j_norming_partition") {
  CHECK(j_norming_partition(SeqVector{}).empty());
  CHECK(j_norm_sq(SeqVector{}).value_sq == 0);
  CHECK(j_norming_partition(SeqVector{{1, 1}, {2, 1}, {3, 1}}) == ivs({{1, 3}}));
  CHECK(j_norming_partition(SeqVector{{1, 1}, {2, -1}}) == ivs({{1, 1}, {2, 2}}));
}

TEST_CASE("i_infty and interval_eval") {
  CHECK(i_infty(SeqVector{{1, 1}, {2, -1}}) == 0);
  CHECK(i_infty(SeqVector{{1, 1}, {2, 2}, {3, 3}}) == 6);
  CHECK(i_infty(SeqVector{}) == 0);
  CHECK(interval_eval({1, 2}, SeqVector{{1, 1}, {2, -1}}) == 0);
  CHECK(interval_eval({2, 3}, SeqVector{{1, 1}, {2, -1}, {3, 1}}) == 0);
  CHECK(interval_eval({1, 3}, SeqVector{{1, 1}, {2, 1}, {3, 1}}) == 3);
}

TEST_CASE("interval partitions are validated") {
  CHECK_THROWS_AS(ivs({{1, 3}, {3, 4}}), InputError);
  CHECK_THROWS_AS(ivs({{4, 3}}), InputError);
  CHECK(ivs({{5, 6}, {1, 2}}).intervals().front().lo == 1);
}

TEST_CASE("zero and gaps") {
  // Zero coefficients are never stored, so gaps do not split intervals.
  SeqVector x{{1, 1}, {5, 1}};
  x.set(3, 0);
  CHECK(x.size() == 2);
  CHECK(j_norm_sq(x).value_sq == 4);
  CHECK(j_norm_sq(x).certificate == ivs({{1, 5}}));
  CHECK(j_norm_sq(SeqVector{{7, make_rational(-3, 2)}}).value_sq == make_rational(9, 4));
}

TEST_CASE("oracle agreement on {-1,0,1}^10") {
  for (int code = 0; code < 59049; code += 7) {
    SeqVector x;
    int c = code;
    for (std::uint64_t p = 1; p <= 10; ++p, c /= 3) x.set(p, c % 3 - 1);
    const auto fast = j_norm_sq(x);
    const auto brute = oracle::j_norm_brute(x);
    REQUIRE(fast.value_sq == brute.value_sq);
    CHECK(fast.certificate == brute.family);
  }
}

TEST_CASE("norm properties") {
  gen::Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    const SeqVector x = random_seq(rng, 20, 1 + rng.below(10));
    const SeqVector y = random_seq(rng, 20, 1 + rng.below(10));
    const Rational c = gen::rational(rng);
    const auto nx = j_norm_sq(x);
    CHECK(j_partition_value(x, nx.certificate) == nx.value_sq);
    CHECK(j_norm_sq(x.scaled(c)).value_sq == c * c * nx.value_sq);
    const double sx = std::sqrt(to_double(nx.value_sq));
    const double sy = std::sqrt(to_double(j_norm_sq(y).value_sq));
    CHECK(std::sqrt(to_double(j_norm_sq(x.plus(y)).value_sq)) <= sx + sy + 1e-12);
    CHECK(i_infty(x) * i_infty(x) <= nx.value_sq);
    for (const auto& iv : nx.certificate.intervals()) {
      CHECK(x.get(iv.lo) != 0);
      CHECK(x.get(iv.hi) != 0);
      CHECK(interval_eval(iv, x) != 0);
    }
    // Restriction to a position interval never increases the norm.
    const std::uint64_t lo = 1 + rng.below(20);
    const std::uint64_t hi = lo + rng.below(20);
    SeqVector r;
    for (const auto& [p, v] : x) {
      if (p >= lo && p <= hi) r.set(p, v);
    }
    CHECK(j_norm_sq(r).value_sq <= nx.value_sq);
  }
}
