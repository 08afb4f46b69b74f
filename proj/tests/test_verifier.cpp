#include "doctest.h"

#include "jtree/error.hpp"
#include "jtree/generators.hpp"
#include "jtree/json_io.hpp"
#include "jtree/suites.hpp"
#include "jtree/verifier.hpp"

using namespace jtree;

namespace {

std::vector<std::vector<Rational>> ones(std::size_t n) { return {std::vector<Rational>(n, Rational(1))}; }

P11Config dyadic_config() {
  P11Config cfg;
  cfg.eps = make_rational(1, 2);
  cfg.bnorm = 1;
  cfg.a.push_back(1);
  cfg.b.push_back(1);
  for (int i = 2; i <= 12; ++i) {
    cfg.a.push_back(make_rational(1, std::int64_t{1} << (i + 5)));
    cfg.b.push_back(make_rational(1, std::int64_t{1} << (i + 5)));
  }
  // delta_1 = b, then delta_k = 2^-(k+1): the total stays below (1 + eps) b.
  cfg.delta.push_back(1);
  for (int k = 2; k <= 12; ++k) cfg.delta.push_back(make_rational(1, std::int64_t{1} << (k + 1)));
  return cfg;
}

}  // namespace

TEST_CASE("level-block sequences") {
  const LevelBlockSequence ok{{TreeVector(1, {{1, 1}}), TreeVector(1, {{2, 1}, {3, 1}})}};
  const auto r = check_lower_l2(ok);
  CHECK(r.passed());
  CHECK(check_lower_l2(LevelBlockSequence{{TreeVector(1, {{1, 1}})}}).passed());
  CHECK(min_level(TreeVector(3, {{5, 1}, {9, 1}})) == 2);
  CHECK(max_level(TreeVector(3, {{5, 1}, {9, 1}})) == 3);
  CHECK_THROWS_AS(check_lower_l2(LevelBlockSequence{}), InputError);
  CHECK_THROWS_AS(check_lower_l2(LevelBlockSequence{{TreeVector(2, {{2, 1}}), TreeVector(2, {{3, 1}})}}),
                  InputError);
  CHECK_THROWS_AS(check_lower_l2(LevelBlockSequence{{TreeVector(2, {{2, 1}}), TreeVector(2)}}), InputError);
}

TEST_CASE("upper l2 estimate for dual level blocks") {
  const std::vector<DualVector> seq{DualVector(1, {{1, 1}}), DualVector(1, {{2, 1}})};
  const auto r = check_upper_l2_dual(seq, ones(2), 1e-7);
  CHECK(r.passed());
  CHECK(r.instances == 1);
  CHECK(check_upper_l2_dual({DualVector(1, {{1, 1}})}, ones(1), 1e-7).passed());
  CHECK_THROWS_AS(check_upper_l2_dual({DualVector(1, {{1, 2}})}, ones(1), 1e-7), InputError);
  CHECK_THROWS_AS(check_upper_l2_dual({DualVector(1, {{2, 1}}), DualVector(1, {{3, 1}})}, ones(2), 1e-7),
                  InputError);
  CHECK_THROWS_AS(check_upper_l2_dual(seq, ones(3), 1e-7), InputError);
}

TEST_CASE("l6 bounds") {
  const BlockSequence seq{{SeqVector{{1, 1}, {2, -1}}, SeqVector{{3, 1}, {4, -1}}}};
  const auto r = check_l6(seq, make_rational(1, 4), 2, ones(2));
  CHECK(r.passed());
  CHECK(j_norm_sq(SeqVector{{1, 1}, {2, -1}, {3, 1}, {4, -1}}).value_sq == 4);
  CHECK(check_l6(BlockSequence{{SeqVector{{1, 1}, {2, -1}}}}, make_rational(1, 4), 2, ones(1)).passed());
  // eps >= 1 leaves only the upper bound.
  CHECK(check_l6(seq, 2, 2, ones(2)).passed());

  try {
    check_l6(BlockSequence{{SeqVector{{1, 1}, {2, -1}}, SeqVector{{3, 1}}}}, make_rational(1, 4), 2, ones(2));
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("term 2") != std::string::npos);
  }
  CHECK_THROWS_AS(check_l6(seq, make_rational(1, 4), 8, ones(2)), InputError);
  CHECK_THROWS_AS(check_l6(seq, 0, 2, ones(2)), InputError);
  CHECK_THROWS_AS(check_l6(BlockSequence{{SeqVector{{3, 1}, {4, -1}}, SeqVector{{1, 1}, {2, -1}}}},
                           make_rational(1, 4), 2, ones(2)),
                  InputError);
}

TEST_CASE("p10 bounds") {
  for (std::uint64_t m = 1; m <= 6; ++m) {
    BlockSequence seq;
    for (std::uint64_t k = 1; k <= m; ++k) seq.terms.push_back(SeqVector::unit(2 * k - 1));
    const auto r = check_p10(seq, make_rational(1, 4), 1, 1, ones(m));
    CHECK(r.passed());
    SeqVector spaced, consecutive;
    for (std::uint64_t k = 1; k <= m; ++k) {
      spaced.set(2 * k - 1, 1);
      consecutive.set(k, 1);
    }
    CHECK(j_norm_sq(spaced).value_sq == m * m);
    CHECK(j_norm_sq(consecutive).value_sq == m * m);
  }
  const BlockSequence one{{SeqVector::unit(1)}};
  CHECK_THROWS_AS(check_p10(one, make_rational(1, 4), 0, 1, ones(1)), InputError);
  CHECK_THROWS_AS(check_p10(one, 1, 1, 1, ones(1)), InputError);
  CHECK_THROWS_AS(check_p10(one, make_rational(1, 4), 2, 1, ones(1)), InputError);
  CHECK_THROWS_AS(check_p10(BlockSequence{{SeqVector::unit(1, 3)}}, make_rational(1, 4), 3, 1, ones(1)), InputError);
}

TEST_CASE("count_large_segments") {
  auto r = count_large_segments(TreeVector(1, {{2, 1}, {3, 1}}), make_rational(1, 2));
  CHECK(r.size == 2);
  r = count_large_segments(TreeVector(1, {{1, 1}}), 2);
  CHECK(r.size == 0);
  CHECK(r.witness.empty());
  // The three singletons are disjoint and each reaches 1.
  const TreeVector x(1, {{1, 1}, {2, 1}, {3, 1}});
  r = count_large_segments(x, 1);
  CHECK(r.size == 3);
  CHECK(r.size <= jt_norm_sq(x).value_sq);
  for (const auto& s : r.witness.segments()) CHECK(abs(segment_sum(x, s)) >= 1);
  CHECK_THROWS_AS(count_large_segments(x, 0), InputError);
}

TEST_CASE("compl_j_apply") {
  BlockSequence id;
  std::vector<Interval> singletons;
  for (std::uint64_t n = 1; n <= 4; ++n) {
    id.terms.push_back(SeqVector::unit(n));
    singletons.push_back({n, n});
  }
  const SeqVector x{{1, 2}, {2, -1}, {4, make_rational(1, 2)}};
  auto r = compl_j_apply(id, IntervalPartition(singletons), x);
  CHECK(r.image == x);
  CHECK(r.ratio == doctest::Approx(1.0));
  CHECK(r.idempotent);

  BlockSequence odd;
  std::vector<Interval> pairs;
  for (std::uint64_t n = 1; n <= 3; ++n) {
    odd.terms.push_back(SeqVector::unit(2 * n - 1));
    pairs.push_back({2 * n - 1, 2 * n});
  }
  r = compl_j_apply(odd, IntervalPartition(pairs), SeqVector::unit(2));
  CHECK(r.image == SeqVector::unit(1));
  CHECK(r.image_sq == 1);
  CHECK(r.input_sq == 1);
  CHECK(r.idempotent);

  CHECK_THROWS_AS(compl_j_apply(BlockSequence{{SeqVector::unit(1, 2)}}, IntervalPartition({{1, 1}}), x), InputError);
  CHECK_THROWS_AS(compl_j_apply(odd, IntervalPartition({{1, 2}, {3, 4}, {6, 7}}), x), InputError);
  CHECK_THROWS_AS(compl_j_apply(odd, IntervalPartition({{1, 2}, {3, 4}}), x), InputError);
}

TEST_CASE("p11 configuration invariants") {
  P11Config cfg = dyadic_config();
  CHECK_NOTHROW(cfg.validate());
  P11Config bad = cfg;
  bad.b[0] = make_rational(1, 4);
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = cfg;
  std::swap(bad.a[0], bad.a[1]);
  std::swap(bad.b[0], bad.b[1]);
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = cfg;
  bad.delta.push_back(1);
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = cfg;
  bad.eps = 1;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = cfg;
  bad.bnorm = make_rational(1, 2);
  CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("p11_partition") {
  P11Config single{{1}, {1}, 1, make_rational(1, 2), {1}};
  const auto f = p11_partition(single);
  REQUIRE(f.size() == 1);
  CHECK(f[0] == IndexInterval{1, 1});

  const P11Config cfg = dyadic_config();
  const auto blocks = p11_partition(cfg);
  CHECK(p11_partition_valid(cfg, blocks));
  CHECK(blocks.front().first == 1);
  CHECK(blocks.back().second == cfg.a.size());
  for (std::size_t k = 1; k < blocks.size(); ++k) CHECK(blocks[k].first == blocks[k - 1].second + 1);

  // A non-maximal first block is rejected.
  auto shrunk = blocks;
  if (shrunk[0].second > 1) {
    shrunk[0].second -= 1;
    shrunk[1].first -= 1;
    CHECK_FALSE(p11_partition_valid(cfg, shrunk));
  }

  P11Config slow;
  slow.eps = make_rational(1, 2);
  slow.bnorm = 1;
  for (int i = 1; i <= 20; ++i) {
    slow.a.push_back(make_rational(1, i));
    slow.b.push_back(make_rational(1, i));
  }
  slow.delta = {1};
  for (int k = 2; k <= 20; ++k) slow.delta.push_back(make_rational(1, std::int64_t{1} << (2 * k)));
  try {
    p11_partition(slow);
    FAIL("expected P11Infeasible");
  } catch (const P11Infeasible& e) {
    CHECK(e.block() >= 2);
    CHECK(e.index() >= 1);
    CHECK(e.index() <= slow.a.size());
  }
}

TEST_CASE("p11 generators") {
  gen::Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const P11Config cfg = gen::p11_geometric(rng, 3 + rng.below(20));
    const auto blocks = p11_partition(cfg);
    CHECK(p11_partition_valid(cfg, blocks));
    CHECK(blocks.front() == IndexInterval{1, 3});
    const auto tails = p11_tails(gen::p11_branches(rng, cfg.a.size()), blocks);
    CHECK(std::is_sorted(tails.begin(), tails.end()));
    CHECK_THROWS_AS(p11_partition(gen::p11_slow_decay(rng, 30)), P11Infeasible);
  }
}

TEST_CASE("p11_tails") {
  CHECK(p11_tails({Branch("00"), Branch("01")}, {{1, 2}}) == std::vector<NodeKey>{2});
  CHECK(p11_tails({Branch("0"), Branch("1")}, {{1, 1}, {2, 2}}) == std::vector<NodeKey>{1, 2});
  const auto m = p11_tails({Branch("000"), Branch("001"), Branch("011")}, {{1, 2}, {3, 3}});
  CHECK(m == std::vector<NodeKey>{4, 5});
  CHECK_THROWS_AS(p11_tails({Branch("00"), Branch("00")}, {{1, 2}}), InputError);
  CHECK_THROWS_AS(p11_tails({Branch("0"), Branch("01")}, {{1, 2}}), InputError);
  CHECK_THROWS_AS(p11_tails({Branch("000"), Branch("001"), Branch("01")}, {{1, 2}, {3, 3}}), InputError);
  CHECK_THROWS_AS(p11_tails({Branch("0")}, {{1, 2}}), InputError);
}

TEST_CASE("reports") {
  EquivalenceReport a;
  a.instances = 2;
  EquivalenceReport b;
  b.instances = 3;
  b.violations.push_back({nlohmann::json::object(), "2", "1", "bound"});
  CHECK(a.passed());
  a.absorb(b);
  CHECK(a.instances == 5);
  CHECK_FALSE(a.passed());
  const auto j = io::encode(a);
  CHECK(j["passed"] == false);
  CHECK(j["violations"].size() == 1);
}

TEST_CASE("suites are deterministic and independent of the thread count") {
  suites::SuiteOptions one;
  one.seed = 17;
  one.count = 40;
  one.threads = 1;
  suites::SuiteOptions four = one;
  four.threads = 4;
  for (const char* name : {"lower-l2", "l6", "p10", "pa-contraction", "compl-j", "isometry-incomparable"}) {
    const auto a = io::dump(io::encode(suites::run_suite(name, one)));
    const auto b = io::dump(io::encode(suites::run_suite(name, four)));
    CHECK(a == b);
  }
  CHECK_THROWS_AS(suites::run_suite("nope", one), InputError);
}

TEST_CASE("every suite passes on a small run") {
  suites::SuiteOptions opts;
  opts.seed = 4;
  opts.count = 12;
  for (const auto& name : suites::suite_names()) {
    INFO(name);
    const auto r = suites::run_suite(name, opts);
    CHECK(r.passed());
    CHECK(r.instances > 0);
  }
}
