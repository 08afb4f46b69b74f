#include "jtree/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "jtree/generators.hpp"
#include "jtree/json_io.hpp"
#include "jtree/oracle.hpp"

namespace jtree::suites {

namespace {

using nlohmann::json;

// Instances run on a worker pool; results land in their index slot and are merged in order.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned threads, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(count);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto work = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

EquivalenceReport run_instances(const std::string& suite, const SuiteOptions& opts, std::size_t count,
                                const std::function<EquivalenceReport(std::size_t)>& f) {
  EquivalenceReport report;
  report.suite = suite;
  report.seed = opts.seed;
  for (auto& r : parallel_map<EquivalenceReport>(count, opts.threads, f)) report.absorb(std::move(r));
  return report;
}

EquivalenceReport single(std::string suite) {
  EquivalenceReport r;
  r.suite = std::move(suite);
  r.instances = 1;
  return r;
}

void fail(EquivalenceReport& r, json input, const Rational& lhs, const Rational& rhs, std::string bound) {
  r.violations.push_back({std::move(input), to_string(lhs), to_string(rhs), std::move(bound)});
}

void fail(EquivalenceReport& r, json input, double lhs, double rhs, std::string bound) {
  std::ostringstream a, b;
  a.precision(17);
  b.precision(17);
  a << lhs;
  b << rhs;
  r.violations.push_back({std::move(input), a.str(), b.str(), std::move(bound)});
}

std::string cert(const char* what) { return std::string(kCertificateBound) + ": " + what; }

std::size_t count_or(const SuiteOptions& o, std::size_t fallback) { return o.count.value_or(fallback); }
int depth_or(const SuiteOptions& o, int fallback) { return o.depth.value_or(fallback); }

int random_depth(gen::Rng& rng, int lo, int hi) { return static_cast<int>(rng.between(lo, std::max(lo, hi))); }

// Shared body of the oracle-j comparisons.
void compare_j(EquivalenceReport& r, const SeqVector& x) {
  const JNormResult fast = j_norm_sq(x);
  const oracle::BruteJ brute = oracle::j_norm_brute(x);
  if (fast.value_sq != brute.value_sq) fail(r, io::encode(x), fast.value_sq, brute.value_sq, "j_norm_sq = brute force");
  if (fast.certificate != brute.family) {
    r.violations.push_back({io::encode(x), io::encode(fast.certificate).dump(), io::encode(brute.family).dump(),
                            "j certificate = canonical brute-force maximizer"});
  }
  const Rational again = j_partition_value(x, fast.certificate);
  if (again != fast.value_sq) fail(r, io::encode(x), again, fast.value_sq, cert("j family value = j_norm_sq"));
}

void compare_jt(EquivalenceReport& r, const TreeVector& x, int depth) {
  const NormCertificate fast = jt_norm_sq(x);
  const oracle::BruteJT brute = oracle::jt_norm_brute(x, depth);
  if (fast.value_sq != brute.value_sq) fail(r, io::encode(x), fast.value_sq, brute.value_sq, "jt_norm_sq = brute force");
  if (fast.witness != brute.family) {
    r.violations.push_back({io::encode(x), io::encode(fast.witness).dump(), io::encode(brute.family).dump(),
                            "jt certificate = canonical brute-force maximizer"});
  }
  const Rational again = p_norm_sq(x, fast.witness);
  if (again != fast.value_sq) fail(r, io::encode(x), again, fast.value_sq, cert("jt partition value = jt_norm_sq"));
}

// DualResult invariants, checked exactly on the witness.
void check_dual_witness(EquivalenceReport& r, const DualVector& f, const DualResult& d) {
  const Rational wsq = jt_norm_sq(d.witness).value_sq;
  const double bound = (1 + d.tolerance) * (1 + d.tolerance);
  if (to_double(wsq) > bound) fail(r, io::encode(f), to_double(wsq), bound, "dual witness: jt(w)^2 <= (1+tol)^2");
  const double paired = to_double(pairing(f, d.witness));
  if (paired < d.value - d.tolerance) {
    fail(r, io::encode(f), paired, d.value - d.tolerance, "dual witness: f(w) >= value - tol");
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "lower-l2",   "upper-l2-dual", "l6",          "p10",          "l1-finite",       "compl-j",
      "p11",        "oracle-j",      "oracle-jt",   "oracle-dual",  "isometry-branch", "isometry-incomparable",
      "pa-contraction"};
  return names;
}

EquivalenceReport run_suite(const std::string& name, const SuiteOptions& opts) {
  static const std::map<std::string, EquivalenceReport (*)(const SuiteOptions&)> table{
      {"lower-l2", lower_l2},
      {"upper-l2-dual", upper_l2_dual},
      {"l6", l6},
      {"p10", p10},
      {"l1-finite", l1_finite},
      {"compl-j", compl_j},
      {"p11", p11},
      {"oracle-j", oracle_j},
      {"oracle-jt", oracle_jt},
      {"oracle-dual", oracle_dual},
      {"isometry-branch", isometry_branch},
      {"isometry-incomparable", isometry_incomparable},
      {"pa-contraction", pa_contraction}};
  auto it = table.find(name);
  if (it == table.end()) {
    std::string valid;
    for (const auto& n : suite_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw InputError("unknown suite '" + name + "'; valid suites: " + valid);
  }
  if (opts.depth && (*opts.depth < 0 || *opts.depth > kMaxDepth)) {
    throw InputError("depth must lie in [0, " + std::to_string(kMaxDepth) + "]");
  }
  if (!(opts.tol > 0)) throw InputError("tolerance must be positive");
  EquivalenceReport r = it->second(opts);
  r.suite = name;
  r.seed = opts.seed;
  return r;
}

EquivalenceReport lower_l2(const SuiteOptions& opts) {
  const int max_depth = depth_or(opts, 8);
  if (max_depth < 1) throw InputError("lower-l2: depth must be at least 1");
  return run_instances("lower-l2", opts, count_or(opts, 1000), [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    const int depth = random_depth(rng, 1, max_depth);
    const std::size_t terms = 1 + rng.below(std::min<std::size_t>(5, static_cast<std::size_t>(depth) + 1));
    return check_lower_l2(gen::level_block(rng, terms, depth));
  });
}

EquivalenceReport upper_l2_dual(const SuiteOptions& opts) {
  const int max_depth = depth_or(opts, 6);
  if (max_depth < 1) throw InputError("upper-l2-dual: depth must be at least 1");
  auto r = run_instances("upper-l2-dual", opts, count_or(opts, 200), [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    const int depth = random_depth(rng, 1, max_depth);
    const std::size_t terms = 1 + rng.below(std::min<std::size_t>(3, static_cast<std::size_t>(depth) + 1));
    const auto seq = gen::unit_dual_terms(rng, terms, depth);
    std::vector<std::vector<Rational>> coefficients;
    for (int k = 0; k < 4; ++k) coefficients.push_back(gen::rationals(rng, terms));
    auto report = check_upper_l2_dual(seq, coefficients, opts.tol);
    report.instances = 1;
    return report;
  });
  std::ostringstream tol;
  tol << opts.tol;
  r.constants["tol"] = tol.str();
  return r;
}

EquivalenceReport l6(const SuiteOptions& opts) {
  const Rational eps = opts.eps.value_or(make_rational(1, 4));
  auto r = run_instances("l6", opts, count_or(opts, 1000), [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    const auto inst = gen::j_block_zero_sum(rng, 1 + rng.below(6), eps);
    std::vector<std::vector<Rational>> samples;
    for (std::size_t s = 0; s < opts.samples; ++s) samples.push_back(gen::rationals(rng, inst.seq.terms.size()));
    auto report = check_l6(inst.seq, inst.eps, inst.alpha_sq, samples);
    report.instances = 1;
    return report;
  });
  r.constants["eps"] = to_string(eps);
  r.constants["samples"] = std::to_string(opts.samples);
  return r;
}

EquivalenceReport p10(const SuiteOptions& opts) {
  const Rational eps = opts.eps.value_or(make_rational(1, 4));
  auto r = run_instances("p10", opts, count_or(opts, 500), [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    const auto inst = gen::j_block_alpha(rng, 1 + rng.below(6), eps);
    std::vector<std::vector<Rational>> samples;
    for (std::size_t s = 0; s < opts.samples; ++s) samples.push_back(gen::rationals(rng, inst.seq.terms.size()));
    auto report = check_p10(inst.seq, inst.eps, inst.alpha, inst.beta, samples);
    report.instances = 1;
    return report;
  });
  r.constants["eps"] = to_string(eps);
  r.constants["samples"] = std::to_string(opts.samples);
  return r;
}

EquivalenceReport l1_finite(const SuiteOptions& opts) {
  const std::vector<Rational> eps_grid{make_rational(1, 2), make_rational(1), make_rational(3, 2), make_rational(2)};
  auto check = [](EquivalenceReport& r, const TreeVector& x, const Rational& eps, bool brute) {
    const LargeSegments large = count_large_segments(x, eps);
    const Rational norm_sq = jt_norm_sq(x).value_sq;
    const json input{{"x", io::encode(x)}, {"eps", io::encode(eps)}};
    const Rational lhs = Rational(static_cast<long>(large.size)) * eps * eps;
    if (lhs > norm_sq) fail(r, input, lhs, norm_sq, "#family * eps^2 <= jt(x)^2");
    bool witness_ok = large.witness.size() == large.size;
    for (const auto& s : large.witness.segments()) witness_ok = witness_ok && abs(segment_sum(x, s)) >= eps;
    if (!witness_ok) r.violations.push_back({input, io::encode(large.witness).dump(), "", "witness segments reach eps"});
    if (brute) {
      const std::size_t expected = oracle::count_large_brute(x, eps, x.depth());
      if (expected != large.size) {
        fail(r, input, Rational(static_cast<long>(large.size)), Rational(static_cast<long>(expected)),
             "family size = brute force");
      }
    }
  };

  // Exhaustive part: every {-1,0,1} vector on the depth-2 tree, at each eps of the grid.
  auto r = run_instances("l1-finite", opts, 2187, [&](std::size_t code) {
    TreeVector x(2);
    for (NodeKey k = 1, c = code; k <= 7; ++k, c /= 3) x.set(k, static_cast<long>(c % 3) - 1);
    EquivalenceReport one = single("l1-finite");
    if (!x.empty()) {
      for (const auto& eps : eps_grid) check(one, x, eps, true);
    }
    return one;
  });
  const int max_depth = depth_or(opts, 8);
  const std::uint64_t offset = 1U << 20;
  r.absorb(run_instances("l1-finite", opts, count_or(opts, 1000), [&](std::size_t i) {
    gen::Rng rng(opts.seed, offset + i);
    const int depth = random_depth(rng, 0, max_depth);
    const TreeVector x = gen::tree_vector(rng, depth, 12);
    const Rational eps = make_rational(rng.between(1, 24), 8);
    EquivalenceReport one = single("l1-finite");
    check(one, x, eps, depth <= 2);
    return one;
  }));
  return r;
}

EquivalenceReport compl_j(const SuiteOptions& opts) {
  const std::size_t count = count_or(opts, 500);
  std::vector<double> ratios(count, 0.0);
  auto r = run_instances("compl-j", opts, count, [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    const std::size_t n = 1 + rng.below(5);
    BlockSequence xs;
    std::vector<Interval> ivs;
    std::uint64_t lo = 1;
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t len = 1 + rng.below(4);
      const std::uint64_t hi = lo + len - 1;
      SeqVector x;
      for (;;) {
        x = SeqVector();
        const std::uint64_t a = lo + rng.below(len);
        const std::uint64_t b = a + rng.below(hi - a + 1);
        for (std::uint64_t p = a; p <= b; ++p) x.set(p, gen::rational(rng));
        if (!x.empty() && i_infty(x) != 0) break;
      }
      xs.terms.push_back(x.scaled(1 / i_infty(x)));
      ivs.push_back({lo, hi});
      lo = hi + 1;
    }
    SeqVector x;
    for (std::uint64_t p = 1; p < lo; ++p) x.set(p, gen::rational(rng));
    const IntervalPartition jn(ivs);
    const ComplJResult res = compl_j_apply(xs, jn, x);
    ratios[i] = res.ratio;
    EquivalenceReport one = single("compl-j");
    if (!res.idempotent) {
      one.violations.push_back({{{"blocks", io::encode(xs)}, {"intervals", io::encode(jn)}}, "P(x_m)", "x_m",
                                "P(x_m) = x_m"});
    }
    return one;
  });
  std::ostringstream max_ratio;
  max_ratio.precision(12);
  max_ratio << (ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end()));
  r.constants["max_ratio"] = max_ratio.str();
  return r;
}

EquivalenceReport p11(const SuiteOptions& opts) {
  const std::size_t count = count_or(opts, 50);
  const int depth = depth_or(opts, kDefaultDepth);
  auto r = run_instances("p11", opts, count, [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    const P11Config cfg = gen::p11_geometric(rng, 3 + rng.below(28));
    EquivalenceReport one = single("p11");
    try {
      const auto blocks = p11_partition(cfg);
      if (!p11_partition_valid(cfg, blocks)) {
        one.violations.push_back({io::encode(cfg), "", "", "block inequalities and greedy maximality"});
      }
      const auto tails = p11_tails(gen::p11_branches(rng, cfg.a.size(), depth), blocks);
      for (std::size_t k = 1; k < tails.size(); ++k) {
        if (tails[k] <= tails[k - 1]) {
          fail(one, io::encode(cfg), Rational(static_cast<long>(tails[k - 1])), Rational(static_cast<long>(tails[k])),
               "m_k strictly increasing");
        }
      }
    } catch (const InputError& e) {
      one.violations.push_back({io::encode(cfg), e.what(), "", "geometric decay admits the construction"});
    }
    return one;
  });

  // Slow decay: the construction must stop at a named block and index.
  const std::size_t slow = std::max<std::size_t>(1, count / 5);
  std::vector<std::string> stops(slow);
  const std::uint64_t offset = 1U << 20;
  r.absorb(run_instances("p11", opts, slow, [&](std::size_t i) {
    gen::Rng rng(opts.seed, offset + i);
    const P11Config cfg = gen::p11_slow_decay(rng, 8 + rng.below(24));
    EquivalenceReport one = single("p11");
    try {
      p11_partition(cfg);
      one.violations.push_back({io::encode(cfg), "", "", "slow decay is infeasible"});
    } catch (const P11Infeasible& e) {
      stops[i] = "k=" + std::to_string(e.block()) + ",i=" + std::to_string(e.index());
      if (e.block() < 2 || e.index() > cfg.a.size()) {
        one.violations.push_back({io::encode(cfg), stops[i], "", "failure names a block k >= 2 and a valid index"});
      }
    }
    return one;
  }));
  std::string joined;
  for (const auto& s : stops) joined += (joined.empty() ? "" : " ") + s;
  r.constants["slow_decay_stops"] = joined;
  r.constants["geometric_instances"] = std::to_string(count);
  r.constants["slow_instances"] = std::to_string(slow);
  return r;
}

EquivalenceReport oracle_j_exhaustive(const SuiteOptions& opts) {
  return run_instances("oracle-j", opts, 6561, [](std::size_t code) {
    SeqVector x;
    for (std::uint64_t p = 1, c = code; p <= 8; ++p, c /= 3) x.set(p, static_cast<long>(c % 3) - 1);
    EquivalenceReport one = single("oracle-j");
    compare_j(one, x);
    return one;
  });
}

EquivalenceReport oracle_j_random(const SuiteOptions& opts) {
  return run_instances("oracle-j", opts, count_or(opts, 10000), [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    SeqVector x;
    const std::size_t n = 1 + rng.below(10);
    while (x.size() < n) x.set(1 + rng.below(16), gen::nonzero_rational(rng));
    EquivalenceReport one = single("oracle-j");
    compare_j(one, x);
    return one;
  });
}

EquivalenceReport oracle_j(const SuiteOptions& opts) {
  auto r = oracle_j_exhaustive(opts);
  r.absorb(oracle_j_random(opts));
  return r;
}

EquivalenceReport oracle_jt_exhaustive(const SuiteOptions& opts) {
  return run_instances("oracle-jt", opts, 2187, [](std::size_t code) {
    TreeVector x(2);
    for (NodeKey k = 1, c = code; k <= 7; ++k, c /= 3) x.set(k, static_cast<long>(c % 3) - 1);
    EquivalenceReport one = single("oracle-jt");
    compare_jt(one, x, 2);
    return one;
  });
}

EquivalenceReport oracle_jt_random(const SuiteOptions& opts) {
  const int depth = depth_or(opts, 2);
  if (depth > kMaxEnumerationDepth) {
    throw InputError("oracle-jt: brute force enumerates depth <= " + std::to_string(kMaxEnumerationDepth));
  }
  return run_instances("oracle-jt", opts, count_or(opts, 10000), [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    TreeVector x(depth);
    for (NodeKey k = 1; k <= tree_size(depth); ++k) x.set(k, gen::rational(rng, 2));
    EquivalenceReport one = single("oracle-jt");
    compare_jt(one, x, depth);
    return one;
  });
}

EquivalenceReport oracle_jt(const SuiteOptions& opts) {
  auto r = oracle_jt_random(opts);
  if (depth_or(opts, 2) == 2) r.absorb(oracle_jt_exhaustive(opts));
  return r;
}

EquivalenceReport dual_barrier(const SuiteOptions& opts) {
  const auto& constraints = enumerate_partitions(1);
  return run_instances("oracle-dual", opts, count_or(opts, 200), [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    DualVector f(1);
    while (f.empty()) {
      for (NodeKey k = 1; k <= 3; ++k) f.set(k, gen::rational(rng));
    }
    EquivalenceReport one = single("oracle-dual");
    const DualResult d = jtstar_norm(f, 1e-8);
    const double reference = oracle::barrier_dual_norm(f, constraints, 1e-9);
    if (std::abs(d.value - reference) > 1e-6) fail(one, io::encode(f), d.value, reference, "|jtstar_norm - barrier| <= 1e-6");
    check_dual_witness(one, f, d);
    return one;
  });
}

EquivalenceReport dual_segments(const SuiteOptions& opts) {
  const int max_depth = depth_or(opts, 8);
  const std::uint64_t offset = 2U << 20;
  return run_instances("oracle-dual", opts, count_or(opts, 100), [&](std::size_t i) {
    gen::Rng rng(opts.seed, offset + i);
    const int depth = random_depth(rng, 0, max_depth);
    const DualVector f = segment_functional(gen::segment(rng, depth), depth);
    EquivalenceReport one = single("oracle-dual");
    const DualResult d = jtstar_norm(f, 1e-7);
    if (std::abs(d.value - 1.0) > 1e-6) fail(one, io::encode(f), d.value, 1.0, "|s*| = 1 within 1e-6");
    check_dual_witness(one, f, d);
    return one;
  });
}

EquivalenceReport dual_l2_families(const SuiteOptions& opts) {
  const int max_depth = depth_or(opts, 8);
  const std::uint64_t offset = 3U << 20;
  return run_instances("oracle-dual", opts, count_or(opts, 100), [&](std::size_t i) {
    gen::Rng rng(opts.seed, offset + i);
    const int depth = random_depth(rng, 1, max_depth);
    const auto nodes = gen::antichain(rng, 5, depth);
    const auto segs = gen::segments_through(rng, nodes, depth);
    DualVector f(depth);
    double sum_sq = 0;
    for (const auto& s : segs) {
      const Rational l = gen::nonzero_rational(rng);
      sum_sq += to_double(l * l);
      f = f.plus(segment_functional(s, depth), l);
    }
    EquivalenceReport one = single("oracle-dual");
    const DualResult d = jtstar_norm(f, 1e-7);
    const double expected = std::sqrt(sum_sq);
    if (std::abs(d.value - expected) > 1e-6) {
      fail(one, io::encode(f), d.value, expected, "|sum l_i s_i*| = (sum l_i^2)^(1/2) within 1e-6");
    }
    check_dual_witness(one, f, d);
    return one;
  });
}

EquivalenceReport oracle_dual(const SuiteOptions& opts) {
  const std::size_t count = count_or(opts, 200);
  SuiteOptions half = opts;
  half.count = std::max<std::size_t>(1, count / 2);
  auto r = dual_barrier(opts);
  r.absorb(dual_segments(half));
  r.absorb(dual_l2_families(half));
  return r;
}

EquivalenceReport isometry_branch(const SuiteOptions& opts) {
  const int max_depth = depth_or(opts, 12);
  return run_instances("isometry-branch", opts, count_or(opts, 500), [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    const int depth = random_depth(rng, 0, max_depth);
    const Branch b = gen::branches(rng, 1, depth).front();
    const TreeVector x = gen::branch_vector(rng, b);
    const SeqVector chain = chain_coefficients(x, b);
    EquivalenceReport one = single("isometry-branch");
    const json input{{"x", io::encode(x)}, {"branch", io::encode(b)}};
    const NormCertificate tree = jt_norm_sq(x);
    const JNormResult seq = j_norm_sq(chain);
    if (tree.value_sq != seq.value_sq) fail(one, input, tree.value_sq, seq.value_sq, "jt(x)^2 = j(chain)^2");
    if (p_norm_sq(x, tree.witness) != tree.value_sq) {
      fail(one, input, p_norm_sq(x, tree.witness), tree.value_sq, cert("jt partition value = jt_norm_sq"));
    }
    if (j_partition_value(chain, seq.certificate) != seq.value_sq) {
      fail(one, input, j_partition_value(chain, seq.certificate), seq.value_sq, cert("j family value = j_norm_sq"));
    }
    return one;
  });
}

EquivalenceReport isometry_incomparable(const SuiteOptions& opts) {
  const int max_depth = depth_or(opts, 12);
  return run_instances("isometry-incomparable", opts, count_or(opts, 500), [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    const int depth = random_depth(rng, 0, max_depth);
    TreeVector x(depth);
    Rational sum_sq = 0;
    for (NodeKey k : gen::antichain(rng, 8, depth)) {
      const Rational l = gen::nonzero_rational(rng);
      x.set(k, l);
      sum_sq += l * l;
    }
    EquivalenceReport one = single("isometry-incomparable");
    const NormCertificate c = jt_norm_sq(x);
    if (c.value_sq != sum_sq) fail(one, io::encode(x), c.value_sq, sum_sq, "jt(sum l_i e_i)^2 = sum l_i^2");
    if (p_norm_sq(x, c.witness) != c.value_sq) {
      fail(one, io::encode(x), p_norm_sq(x, c.witness), c.value_sq, cert("jt partition value = jt_norm_sq"));
    }
    return one;
  });
}

EquivalenceReport pa_contraction(const SuiteOptions& opts) {
  const int max_depth = depth_or(opts, 8);
  return run_instances("pa-contraction", opts, count_or(opts, 1000), [&](std::size_t i) {
    gen::Rng rng(opts.seed, i);
    const int depth = random_depth(rng, 1, max_depth);
    const TreeVector x = gen::tree_vector(rng, depth, 16);
    const RestrictionSet a = gen::admissible_set(rng, depth);
    const TreeVector px = restrict(x, a);
    EquivalenceReport one = single("pa-contraction");
    const Rational lhs = jt_norm_sq(px).value_sq;
    const Rational rhs = jt_norm_sq(x).value_sq;
    if (lhs > rhs) fail(one, {{"x", io::encode(x)}, {"px", io::encode(px)}}, lhs, rhs, "jt(P_A x)^2 <= jt(x)^2");
    // Incomparable final segments split the norm into J norms along each chain.
    if (!a.chains().empty() && a.subtree_roots().empty() && a.keys().empty() && !a.band() && !a.is_whole_tree()) {
      Rational chains = 0;
      for (const auto& s : a.chains()) chains += j_norm_sq(segment_coefficients(x, s)).value_sq;
      if (chains != lhs) {
        fail(one, {{"x", io::encode(x)}, {"px", io::encode(px)}}, lhs, chains, "jt(P_A x)^2 = sum of chain j norms");
      }
    }
    return one;
  });
}

std::size_t certificate_violations(const EquivalenceReport& r) {
  const std::string prefix = kCertificateBound;
  return static_cast<std::size_t>(std::count_if(r.violations.begin(), r.violations.end(), [&](const Violation& v) {
    return v.bound.rfind(prefix, 0) == 0;
  }));
}

std::size_t value_violations(const EquivalenceReport& r) { return r.violations.size() - certificate_violations(r); }

}  // namespace jtree::suites
