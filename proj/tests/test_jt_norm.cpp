#include "doctest.h"

#include "jtree/error.hpp"
#include "jtree/generators.hpp"
#include "jtree/james_norm.hpp"
#include "jtree/jt_norm.hpp"
#include "jtree/oracle.hpp"

using namespace jtree;

namespace {

Partition part(std::vector<Segment> s) { return Partition(std::move(s)); }

}  // namespace

TEST_CASE("jt_norm_sq examples") {
  auto c = jt_norm_sq(TreeVector(2, {{2, 1}, {3, 1}}));
  CHECK(c.value_sq == 2);
  CHECK(c.witness == part({Segment(2, 2), Segment(3, 3)}));

  c = jt_norm_sq(TreeVector(2, {{1, 1}, {2, 1}}));
  CHECK(c.value_sq == 4);
  CHECK(c.witness == part({Segment(1, 2)}));

  c = jt_norm_sq(TreeVector(2, {{1, 1}, {2, 1}, {3, 1}}));
  CHECK(c.value_sq == 5);
  CHECK(c.witness == part({Segment(1, 2), Segment(3, 3)}));

  c = jt_norm_sq(TreeVector(2));
  CHECK(c.value_sq == 0);
  CHECK(c.witness.empty());
}

TEST_CASE("p_norm_sq") {
  const TreeVector x(1, {{1, 1}, {2, 1}, {3, 1}});
  CHECK(p_norm_sq(x, part({Segment(1, 1), Segment(2, 2), Segment(3, 3)})) == 3);
  CHECK(p_norm_sq(x, part({Segment(1, 2), Segment(3, 3)})) == 5);
  CHECK(p_norm_sq(x, Partition()) == 0);
  CHECK(segment_sum(x, Segment(1, 3)) == 2);
}

TEST_CASE("tree vectors respect the depth bound") {
  CHECK_THROWS_AS(TreeVector(2, {{8, 1}}), InputError);
  CHECK_THROWS_AS(TreeVector(kMaxDepth + 1), InputError);
  TreeVector x(3);
  x.set(15, 1);
  CHECK(x.size() == 1);
}

TEST_CASE("restrict") {
  const auto sub2 = RestrictionSet::subtrees({2}, 3);
  const TreeVector x(3, {{1, 1}, {2, 1}});
  const TreeVector px = restrict(x, sub2);
  CHECK(px == TreeVector(3, {{2, 1}}));
  CHECK(jt_norm_sq(x).value_sq == 4);
  CHECK(jt_norm_sq(px).value_sq == 1);
  CHECK(restrict(TreeVector(3, {{2, 1}, {3, 1}}), sub2) == TreeVector(3, {{2, 1}}));
  CHECK(restrict(x, RestrictionSet::whole_tree()) == x);
}

TEST_CASE("inadmissible restriction sets are refused with a witness") {
  CHECK_THROWS_AS(RestrictionSet::subtrees({2, 4}, 3), InputError);
  CHECK_THROWS_AS(RestrictionSet::from_keys({1, 4}, 2), InputError);
  CHECK_THROWS_AS(RestrictionSet::from_keys({4}, 1), InputError);
  CHECK_THROWS_AS(RestrictionSet::final_segments({{Branch("00"), 1}, {Branch("01"), 1}}, 2), InputError);
}

TEST_CASE("find_violation names a segment") {
  // {1, 4} skips 2 on the chain 1, 2, 4.
  try {
    RestrictionSet::from_keys({1, 4}, 2);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("segment") != std::string::npos);
  }
}

TEST_CASE("chain_coefficients") {
  const SeqVector a = chain_coefficients(TreeVector(1, {{1, 1}, {2, 1}}), Branch("0"));
  CHECK(a == SeqVector{{1, 1}, {2, 1}});
  CHECK(j_norm_sq(a).value_sq == 4);
  const SeqVector b = chain_coefficients(TreeVector(1, {{1, 1}, {3, -1}}), Branch("1"));
  CHECK(b == SeqVector{{1, 1}, {2, -1}});
  CHECK(j_norm_sq(b).value_sq == 2);
  CHECK(chain_coefficients(TreeVector(1), Branch("1")).empty());
  CHECK_THROWS_AS(chain_coefficients(TreeVector(1, {{2, 1}}), Branch("1")), InputError);
}

TEST_CASE("oracle agreement at depth 2 with entries in {-2..2}") {
  gen::Rng rng(8);
  for (int i = 0; i < 1500; ++i) {
    TreeVector x(2);
    for (NodeKey k = 1; k <= 7; ++k) x.set(k, rng.between(-2, 2));
    const auto fast = jt_norm_sq(x);
    const auto brute = oracle::jt_norm_brute(x, 2);
    REQUIRE(fast.value_sq == brute.value_sq);
    CHECK(fast.witness == brute.family);
  }
}

TEST_CASE("oracle agreement on sparse depth-3 vectors") {
  gen::Rng rng(9);
  for (int i = 0; i < 8; ++i) {
    const TreeVector x = gen::tree_vector(rng, 3, 8);
    CHECK(jt_norm_sq(x).value_sq == oracle::jt_norm_brute(x, 3).value_sq);
  }
}

TEST_CASE("certificates, homogeneity, bimonotonicity") {
  gen::Rng rng(10);
  for (int i = 0; i < 400; ++i) {
    const int depth = static_cast<int>(rng.between(0, 10));
    const TreeVector x = gen::tree_vector(rng, depth, 20);
    const auto c = jt_norm_sq(x);
    CHECK(p_norm_sq(x, c.witness) == c.value_sq);
    for (const auto& s : c.witness.segments()) {
      CHECK(x.get(s.top()) != 0);
      CHECK(x.get(s.bottom()) != 0);
      CHECK(segment_sum(x, s) != 0);
    }
    const Rational k = gen::rational(rng);
    CHECK(jt_norm_sq(x.scaled(k)).value_sq == k * k * c.value_sq);
    const NodeKey lo = gen::random_key(rng, depth);
    const NodeKey hi = lo + rng.below(tree_size(depth));
    TreeVector r(depth);
    for (const auto& [key, v] : x) {
      if (key >= lo && key <= hi) r.set(key, v);
    }
    CHECK(jt_norm_sq(r).value_sq <= c.value_sq);
  }
}

TEST_CASE("final segment decomposition") {
  gen::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto bs = gen::branches(rng, 2 + rng.below(3), 7);
    const NodeKey m = incomparable_tail_depth(bs);
    std::vector<std::pair<Branch, NodeKey>> tails;
    for (const auto& b : bs) tails.emplace_back(b, m);
    const auto a = RestrictionSet::final_segments(tails, 7);
    const TreeVector x = gen::tree_vector(rng, 7, 40);
    const TreeVector px = restrict(x, a);
    Rational sum = 0;
    for (const auto& s : a.chains()) sum += j_norm_sq(segment_coefficients(x, s)).value_sq;
    CHECK(jt_norm_sq(px).value_sq == sum);
    CHECK(jt_norm_sq(px).value_sq <= jt_norm_sq(x).value_sq);
  }
}

TEST_CASE("level bands and key sets") {
  const auto band = RestrictionSet::level_band(1, 2);
  CHECK(band.contains(2));
  CHECK(band.contains(7));
  CHECK_FALSE(band.contains(1));
  CHECK_FALSE(band.contains(8));
  CHECK_THROWS_AS(RestrictionSet::level_band(3, 2), InputError);
  const auto keys = RestrictionSet::from_keys({1, 2, 3}, 3);
  CHECK(restrict(TreeVector(3, {{1, 1}, {4, 5}}), keys) == TreeVector(3, {{1, 1}}));
}
