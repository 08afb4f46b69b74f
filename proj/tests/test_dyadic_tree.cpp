#include "doctest.h"

#include <set>

#include "jtree/dyadic_tree.hpp"
#include "jtree/error.hpp"
#include "jtree/generators.hpp"
#include "jtree/oracle.hpp"

using namespace jtree;

TEST_CASE("node keys") {
  CHECK(node_key(0, 0) == 1);
  CHECK(node_key(1, 1) == 3);
  CHECK(node_key(3, 5) == 13);
  CHECK_THROWS_AS(node_key(2, 4), InputError);
  CHECK(level_of(13) == 3);
  CHECK(index_of(13) == 5);
}

TEST_CASE("children and parents") {
  for (NodeKey k = 1; k <= tree_size(8); ++k) {
    CHECK(parent_of(left_child(k)) == k);
    CHECK(parent_of(right_child(k)) == k);
    CHECK(left_child(k) == 2 * k);
    CHECK(right_child(k) == 2 * k + 1);
  }
}

TEST_CASE("precedes") {
  CHECK(precedes(1, 7));
  CHECK_FALSE(precedes(2, 3));
  CHECK(precedes(3, 13));
  CHECK(precedes(5, 5));
  CHECK_FALSE(precedes(13, 3));
  CHECK(incomparable(2, 3));
  for (NodeKey a = 1; a <= tree_size(5); ++a) {
    for (NodeKey b = 1; b <= tree_size(5); ++b) {
      if (precedes(a, b)) CHECK(a <= b);
    }
  }
}

TEST_CASE("segments") {
  const Segment s(1, 13);
  CHECK(s.members() == std::vector<NodeKey>{1, 3, 6, 13});
  CHECK(s.length() == 4);
  CHECK(s.contains(6));
  CHECK_FALSE(s.contains(7));
  CHECK_THROWS_AS(Segment(2, 3), InputError);
  CHECK(Segment(2, 4).intersects(Segment(1, 2)));
  CHECK_FALSE(Segment(2, 4).intersects(Segment(3, 7)));
}

TEST_CASE("segment_restrict") {
  CHECK(segment_restrict(Segment(1, 13), 3, 7) == Segment(3, 6));
  CHECK_FALSE(segment_restrict(Segment(2, 2), 5, 9).has_value());
  CHECK(segment_restrict(Segment(1, 4), 1, 100) == Segment(1, 4));

  gen::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Segment s = gen::segment(rng, 8);
    const NodeKey lo = gen::random_key(rng, 8);
    const NodeKey hi = lo + rng.below(tree_size(8));
    std::vector<NodeKey> expected;
    for (NodeKey k : s.members()) {
      if (k >= lo && k <= hi) expected.push_back(k);
    }
    const auto r = segment_restrict(s, lo, hi);
    if (expected.empty()) {
      CHECK_FALSE(r.has_value());
    } else {
      REQUIRE(r.has_value());
      CHECK(r->members() == expected);
    }
  }
}

TEST_CASE("branches") {
  const Branch b("011");
  CHECK(b.keys() == std::vector<NodeKey>{1, 2, 5, 11});
  CHECK(b.leaf() == 11);
  CHECK(b.depth() == 3);
  CHECK(b.final_segment(2) == Segment(5, 11));
  CHECK_FALSE(b.final_segment(11).has_value());
  CHECK_THROWS_AS(Branch("012"), InputError);
}

TEST_CASE("incomparable_tail_depth") {
  CHECK(incomparable_tail_depth({Branch("00"), Branch("01")}) == 2);
  CHECK(incomparable_tail_depth({Branch("0"), Branch("1")}) == 1);
  CHECK(incomparable_tail_depth({Branch("000"), Branch("001"), Branch("01")}) == 4);
  CHECK(incomparable_tail_depth({Branch("0101")}) == 0);
  CHECK(incomparable_tail_depth({}) == 0);
  CHECK_THROWS_AS(incomparable_tail_depth({Branch("01"), Branch("01")}), InputError);
  CHECK_THROWS_AS(incomparable_tail_depth({Branch("0"), Branch("01")}), InputError);

  gen::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const auto bs = gen::branches(rng, 2 + rng.below(5), 10);
    const NodeKey m = incomparable_tail_depth(bs);
    for (std::size_t a = 0; a < bs.size(); ++a) {
      for (std::size_t c = a + 1; c < bs.size(); ++c) {
        CHECK(incomparable(bs[a].final_segment(m)->top(), bs[c].final_segment(m)->top()));
      }
    }
    // m is the smallest such key: at the parent of m some pair still agrees.
    if (m > 1) {
      bool shared = false;
      for (std::size_t a = 0; a < bs.size(); ++a) {
        for (std::size_t c = a + 1; c < bs.size(); ++c) shared = shared || (bs[a].contains(m) && bs[c].contains(m));
      }
      CHECK(shared);
    }
  }
}

TEST_CASE("partitions") {
  CHECK_THROWS_AS(Partition({Segment(1, 2), Segment(2, 4)}), InputError);
  const Partition p({Segment(3, 3), Segment(1, 2)});
  CHECK(p.segments().front() == Segment(1, 2));
}

TEST_CASE("enumerate_partitions") {
  CHECK(enumerate_partitions(0).size() == 1);
  CHECK(enumerate_partitions(1).size() == 11);
  CHECK(all_segments(1).size() == 5);
  CHECK_THROWS_AS(enumerate_partitions(4), InputError);
  for (int d = 0; d <= 2; ++d) {
    const auto parts = enumerate_partitions(d);
    CHECK(parts.size() == oracle::partition_count(d));
    std::set<std::vector<Segment>> seen;
    for (const auto& p : parts) {
      CHECK_FALSE(find_overlap(p.segments()).has_value());
      CHECK(std::is_sorted(p.segments().begin(), p.segments().end()));
      CHECK(seen.insert(p.segments()).second);
    }
  }
  CHECK(oracle::partition_count(3) == 783359);
  CHECK(enumerate_partitions(3).size() == 783359);
}
