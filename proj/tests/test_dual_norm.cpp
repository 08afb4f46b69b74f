#include "doctest.h"

#include <cmath>

#include "jtree/dual_norm.hpp"
#include "jtree/error.hpp"
#include "jtree/generators.hpp"
#include "jtree/jt_norm.hpp"
#include "jtree/oracle.hpp"

using namespace jtree;

namespace {

void check_certified(const DualVector& f, const DualResult& r) {
  CHECK(r.lower <= r.upper + 1e-12);
  CHECK(r.upper - r.lower <= r.tolerance);
  CHECK(jt_norm_sq(r.witness).value_sq <= 1);
  CHECK(to_double(pairing(f, r.witness)) >= r.value - r.tolerance);
}

}  // namespace

TEST_CASE("segment_functional") {
  CHECK(segment_functional(Segment(2, 2), 3) == DualVector(3, {{2, 1}}));
  CHECK(segment_functional(Segment(1, 4), 3) == DualVector(3, {{1, 1}, {2, 1}, {4, 1}}));
  CHECK(segment_functional(Segment(1, 13), 3) == DualVector(3, {{1, 1}, {3, 1}, {6, 1}, {13, 1}}));
}

TEST_CASE("pairing") {
  CHECK(pairing(DualVector(2, {{2, 1}, {3, 1}}), TreeVector(2, {{2, 1}, {3, 1}})) == 2);
  CHECK(pairing(segment_functional(Segment(1, 2), 2), TreeVector(2, {{1, 1}, {2, 1}})) == 2);
  CHECK(pairing(DualVector(2), TreeVector(2, {{1, 5}})) == 0);
}

TEST_CASE("jtstar_norm examples") {
  const double tol = 1e-8;
  for (const Segment& s : {Segment(1, 1), Segment(1, 6), Segment(3, 7), Segment(2, 9)}) {
    const DualVector f = segment_functional(s, 3);
    const DualResult r = jtstar_norm(f, tol);
    CHECK(std::abs(r.value - 1.0) <= tol);
    check_certified(f, r);
  }
  const DualVector two(2, {{2, 1}, {3, 1}});
  auto r = jtstar_norm(two, tol);
  CHECK(std::abs(r.value - std::sqrt(2.0)) <= tol);
  check_certified(two, r);

  r = jtstar_norm(DualVector(2, {{1, 1}, {2, 1}}), tol);
  CHECK(std::abs(r.value - 1.0) <= tol);

  const DualVector pyth(2, {{2, 3}, {3, 4}});
  r = jtstar_norm(pyth, tol);
  CHECK(std::abs(r.value - 5.0) <= tol);
  CHECK(std::abs(oracle::barrier_dual_norm(pyth, enumerate_partitions(2), 1e-9) - 5.0) <= 1e-7);

  r = jtstar_norm(DualVector(4), tol);
  CHECK(r.value == 0);
}

TEST_CASE("jtstar_norm agrees with the barrier oracle on the depth-2 tree") {
  gen::Rng rng(31);
  const auto constraints = enumerate_partitions(2);
  for (int i = 0; i < 15; ++i) {
    DualVector f(2);
    while (f.empty()) {
      for (NodeKey k = 1; k <= 7; ++k) {
        if (rng.coin()) f.set(k, gen::rational(rng));
      }
    }
    const DualResult r = jtstar_norm(f, 1e-8);
    CHECK(std::abs(r.value - oracle::barrier_dual_norm(f, constraints, 1e-9)) <= 1e-6);
    check_certified(f, r);
  }
}

TEST_CASE("weak duality") {
  gen::Rng rng(32);
  for (int i = 0; i < 40; ++i) {
    const int depth = static_cast<int>(rng.between(1, 5));
    DualVector f(depth);
    const TreeVector support = gen::tree_vector(rng, depth, 6);
    for (const auto& [k, v] : support) f.set(k, v);
    const double tol = 1e-7;
    const DualResult r = jtstar_norm(f, tol);
    check_certified(f, r);
    for (int j = 0; j < 10; ++j) {
      TreeVector x = gen::tree_vector(rng, depth, 6);
      // Scale into the unit ball with an exact rational upper bound of the norm.
      const Rational bound = sqrt_floor(jt_norm_sq(x).value_sq, 1024) + make_rational(1, 1024);
      x = x.scaled(1 / bound);
      REQUIRE(jt_norm_sq(x).value_sq <= 1);
      CHECK(to_double(pairing(f, x)) <= r.value + tol);
    }
  }
}

TEST_CASE("jtstar_norm errors") {
  CHECK_THROWS_AS(jtstar_norm(DualVector(2, {{1, 1}}), 0.0), InputError);
  CHECK_THROWS_AS(jtstar_norm(DualVector(2, {{1, 1}}), -1.0), InputError);
  const DualVector f(3, {{1, 2}, {2, -1}, {5, 3}, {6, 1}, {13, -2}});
  try {
    jtstar_norm(f, DualOptions{1e-9, 1});
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.lower() <= e.upper());
    CHECK(e.iterations() >= 1);
  }
}

TEST_CASE("determinism") {
  const DualVector f(3, {{1, 1}, {4, -2}, {5, make_rational(1, 3)}, {7, 1}});
  const DualResult a = jtstar_norm(f, 1e-7);
  const DualResult b = jtstar_norm(f, 1e-7);
  CHECK(a.value == b.value);
  CHECK(a.witness == b.witness);
}

TEST_CASE("W elements") {
  WElement w1{{{make_rational(1), Segment(2, 2)}, {make_rational(0), Segment(3, 3)}}};
  WElement w2{{{make_rational(3, 5), Segment(2, 2)}, {make_rational(4, 5), Segment(3, 3)}}};
  WElement w3{{{make_rational(1), Segment(1, 2)}, {make_rational(1), Segment(3, 3)}}};
  WElement overlap{{{make_rational(1, 2), Segment(1, 2)}, {make_rational(1, 2), Segment(2, 4)}}};
  CHECK(w_element_check(w1));
  CHECK(w_element_check(w2));
  CHECK_FALSE(w_element_check(w3));
  CHECK_FALSE(w_element_check(overlap));
  const DualVector f = w_element_functional(w2, 2);
  CHECK(f == DualVector(2, {{2, make_rational(3, 5)}, {3, make_rational(4, 5)}}));
  CHECK(jtstar_norm(f, 1e-8).value <= 1 + 1e-8);
}

TEST_CASE("disjoint segments through incomparable nodes") {
  gen::Rng rng(33);
  for (int i = 0; i < 20; ++i) {
    const int depth = static_cast<int>(rng.between(1, 6));
    const auto nodes = gen::antichain(rng, 4, depth);
    const auto segs = gen::segments_through(rng, nodes, depth);
    CHECK_NOTHROW(Partition{segs});
    DualVector f(depth);
    double sum = 0;
    for (std::size_t k = 0; k < segs.size(); ++k) {
      CHECK(segs[k].contains(nodes[k]));
      const Rational l = gen::nonzero_rational(rng);
      sum += to_double(l * l);
      f = f.plus(segment_functional(segs[k], depth), l);
    }
    CHECK(std::abs(jtstar_norm(f, 1e-8).value - std::sqrt(sum)) <= 1e-7);
  }
}
