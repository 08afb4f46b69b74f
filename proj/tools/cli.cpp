#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include "jtree/dual_norm.hpp"
#include "jtree/error.hpp"
#include "jtree/generators.hpp"
#include "jtree/json_io.hpp"
#include "jtree/suites.hpp"

namespace jtree::cli {

namespace {

using io::json;

struct Flags {
  std::string space;
  std::string name;
  std::string input;
  std::string out;
  std::optional<double> tol;
  std::optional<int> depth;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
  std::optional<std::size_t> terms;
  std::optional<std::string> eps;
  unsigned threads = 0;
  long max_iterations = 10000;
  bool list = false;
};

json read_input(const std::string& path, std::istream& in) {
  if (path == "-") return io::parse(in);
  std::ifstream file(path);
  if (!file) throw InputError("cannot open '" + path + "'");
  return io::parse(file);
}

void write_output(const json& doc, const std::string& path, std::ostream& out) {
  const std::string text = io::dump(doc);
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw InputError("cannot write '" + path + "'");
}

int depth_cap(const Flags& f) {
  const int d = f.depth.value_or(kMaxDepth);
  if (d < 0 || d > kMaxDepth) throw InputError("--depth must lie in [0, " + std::to_string(kMaxDepth) + "]");
  return d;
}

double tolerance(const Flags& f, double fallback) {
  const double t = f.tol.value_or(fallback);
  if (!(t > 0)) throw InputError("--tol must be positive");
  return t;
}

std::optional<Rational> eps_of(const Flags& f) {
  if (!f.eps) return std::nullopt;
  return parse_rational(*f.eps);
}

int cmd_norm(const Flags& f, std::istream& in, std::ostream& out) {
  const json doc = read_input(f.input, in);
  json report;
  if (f.space == "j") {
    const SeqVector x = io::decode_seq_vector(doc);
    report = io::encode(j_norm_sq(x));
  } else if (f.space == "jt") {
    const TreeVector x = io::decode_tree_vector(doc, depth_cap(f));
    report = io::encode(jt_norm_sq(x));
  } else {
    const DualVector g = io::decode_dual_vector(doc, depth_cap(f));
    if (f.max_iterations < 1) throw InputError("--max-iterations must be positive");
    report = io::encode(jtstar_norm(g, DualOptions{tolerance(f, 1e-6), f.max_iterations}));
  }
  report["space"] = f.space;
  write_output(report, f.out, out);
  return kPass;
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto& names = suites::suite_names();
  if (std::find(names.begin(), names.end(), f.name) == names.end()) {
    std::string valid;
    for (const auto& n : names) valid += (valid.empty() ? "" : ", ") + n;
    throw InputError("unknown suite '" + f.name + "'; valid suites: " + valid);
  }
  suites::SuiteOptions opts;
  opts.seed = f.seed.value_or(1);
  opts.count = f.count;
  opts.depth = f.depth;
  opts.eps = eps_of(f);
  opts.tol = tolerance(f, 1e-6);
  opts.threads = f.threads;
  const EquivalenceReport r = suites::run_suite(f.name, opts);
  write_output(io::encode(r), f.out, out);
  err << f.name << ": " << r.instances << " instances, " << r.violations.size() << " violations\n";
  return r.passed() ? kPass : kViolation;
}

int cmd_gen(const Flags& f, std::ostream& out) {
  gen::Rng rng(f.seed.value_or(1));
  const int depth = f.depth.value_or(kDefaultDepth);
  if (depth < 0 || depth > kMaxDepth) throw InputError("--depth must lie in [0, " + std::to_string(kMaxDepth) + "]");
  const Rational eps = eps_of(f).value_or(make_rational(1, 4));
  json doc;
  if (f.name == "tree-vector") {
    doc = io::encode(gen::tree_vector(rng, depth, f.terms.value_or(8)));
  } else if (f.name == "level-block") {
    doc = io::encode(gen::level_block(rng, f.terms.value_or(3), depth));
  } else if (f.name == "j-block-zero-sum") {
    const auto inst = gen::j_block_zero_sum(rng, f.terms.value_or(4), eps);
    doc = io::encode(inst.seq);
    doc["eps"] = io::encode(inst.eps);
    doc["alpha_sq"] = io::encode(inst.alpha_sq);
  } else if (f.name == "j-block-alpha") {
    const auto inst = gen::j_block_alpha(rng, f.terms.value_or(4), eps);
    doc = io::encode(inst.seq);
    doc["eps"] = io::encode(inst.eps);
    doc["alpha"] = io::encode(inst.alpha);
    doc["beta"] = io::encode(inst.beta);
  } else if (f.name == "branches") {
    json list = json::array();
    for (const auto& b : gen::branches(rng, f.count.value_or(4), depth)) list.push_back(io::encode(b));
    doc = {{"kind", "branches"}, {"branches", std::move(list)}};
  } else if (f.name == "p11") {
    doc = io::encode(gen::p11_geometric(rng, f.terms.value_or(8)));
  } else {
    throw InputError("unknown kind '" + f.name +
                     "'; valid kinds: tree-vector, level-block, j-block-zero-sum, j-block-alpha, branches, p11");
  }
  write_output(doc, f.out, out);
  return kPass;
}

int cmd_enumerate(const Flags& f, std::ostream& out) {
  const int depth = f.depth.value_or(1);
  const auto& partitions = enumerate_partitions(depth);
  json doc{{"depth", depth}, {"count", partitions.size()}};
  if (f.list) {
    json list = json::array();
    for (const auto& p : partitions) list.push_back(io::encode(p));
    doc["partitions"] = std::move(list);
  }
  write_output(doc, f.out, out);
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Norms of the James space J and the James tree space JT"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&f](CLI::App* sub) {
    sub->add_option("--out", f.out, "Output file (default stdout)");
    sub->add_option("--depth", f.depth, "Tree depth bound");
  };

  auto* norm = app.add_subcommand("norm", "Norm of a vector with its certificate");
  norm->add_option("space", f.space, "j, jt or jt-dual")->required()->check(CLI::IsMember({"j", "jt", "jt-dual"}));
  norm->add_option("input", f.input, "Vector file, or - for stdin")->required();
  norm->add_option("--tol", f.tol, "Absolute tolerance for jt-dual");
  norm->add_option("--max-iterations", f.max_iterations, "Iteration cap for jt-dual");
  add_common(norm);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", f.name, "Suite name")->required();
  verify->add_option("--seed", f.seed, "Generator seed");
  verify->add_option("--count", f.count, "Number of random instances");
  verify->add_option("--eps", f.eps, "Rational epsilon, e.g. 1/4");
  verify->add_option("--tol", f.tol, "Dual-norm tolerance");
  verify->add_option("--threads", f.threads, "Worker threads (0: all cores)");
  add_common(verify);

  auto* generate = app.add_subcommand("gen", "Write a generated instance");
  generate->add_option("kind", f.name, "tree-vector, level-block, j-block-zero-sum, j-block-alpha, branches, p11")
      ->required();
  generate->add_option("--seed", f.seed, "Generator seed");
  generate->add_option("--count", f.count, "Number of branches");
  generate->add_option("--terms", f.terms, "Number of terms (support size for tree-vector)");
  generate->add_option("--eps", f.eps, "Rational epsilon, e.g. 1/4");
  add_common(generate);

  auto* enumerate = app.add_subcommand("enumerate", "Count (and list) the disjoint segment families of a small tree");
  enumerate->add_flag("--list", f.list, "Include every family");
  add_common(enumerate);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    out << (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ? app.help() : std::string());
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*norm) return cmd_norm(f, in, out);
    if (*verify) return cmd_verify(f, out, err);
    if (*generate) return cmd_gen(f, out);
    return cmd_enumerate(f, out);
  } catch (const ConvergenceError& e) {
    err.precision(17);
    err << "error: " << e.what() << " (lower " << e.lower() << ", upper " << e.upper() << ", iterations "
        << e.iterations() << ")\n";
    return kNoConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNoConvergence;
  }
}

}  // namespace jtree::cli
