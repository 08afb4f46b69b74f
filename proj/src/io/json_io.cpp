#include "jtree/json_io.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "jtree/error.hpp"

namespace jtree::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

mpz_class integer(const json& j, const char* name) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? mpz_class(std::to_string(j.get<std::uint64_t>()))
                                  : mpz_class(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw InputError(std::string("field '") + name + "' is not an integer");
    return z;
  }
  throw InputError(std::string("field '") + name + "' must be an integer");
}

std::uint64_t positive(const json& j, const char* name) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() > 0)) {
    throw InputError(std::string("field '") + name + "' must be a positive integer");
  }
  const auto v = j.get<std::uint64_t>();
  if (v == 0) throw InputError(std::string("field '") + name + "' must be a positive integer");
  return v;
}

int depth_of(const json& j, int max_depth) {
  if (!j.contains("depth")) return std::min(kDefaultDepth, max_depth);
  const json& d = j.at("depth");
  if (!d.is_number_integer() || d.get<std::int64_t>() < 0) throw InputError("field 'depth' must be a nonnegative integer");
  const auto depth = d.get<std::int64_t>();
  if (depth > max_depth) {
    throw InputError("depth " + std::to_string(depth) + " exceeds the configured maximum " + std::to_string(max_depth));
  }
  return static_cast<int>(depth);
}

template <class V>
json encode_keyed(const V& x) {
  json entries = json::array();
  for (const auto& [k, v] : x) {
    json e{{"key", k}};
    put_rational(e, v);
    entries.push_back(std::move(e));
  }
  return {{"depth", x.depth()}, {"entries", std::move(entries)}};
}

template <class V>
V decode_keyed(const json& j, int max_depth) {
  V x(depth_of(j, max_depth));
  std::set<std::uint64_t> seen;
  for (const auto& e : field(j, "entries")) {
    const auto key = positive(field(e, "key"), "key");
    if (!key_in_depth(key, x.depth())) {
      throw InputError("key " + std::to_string(key) + " lies beyond depth " + std::to_string(x.depth()));
    }
    if (!seen.insert(key).second) throw InputError("key " + std::to_string(key) + " appears twice");
    x.set(key, decode_rational(e));
  }
  return x;
}

std::vector<Rational> decode_rationals(const json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(decode_rational(e));
  return out;
}

json encode_rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(encode(q));
  return out;
}

}  // namespace

json parse(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json parse(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void put_rational(json& obj, const Rational& q) {
  if (auto pair = as_int64_pair(q)) {
    obj["num"] = pair->first;
    obj["den"] = pair->second;
  } else {
    obj["num"] = q.get_num().get_str();
    obj["den"] = q.get_den().get_str();
  }
}

json encode(const Rational& q) {
  json j = json::object();
  put_rational(j, q);
  return j;
}

Rational decode_rational(const json& j) {
  const mpz_class num = integer(field(j, "num"), "num");
  const mpz_class den = integer(field(j, "den"), "den");
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

json encode(const Segment& s) { return {{"top", s.top()}, {"bottom", s.bottom()}}; }

Segment decode_segment(const json& j) {
  const auto top = positive(field(j, "top"), "top");
  const auto bottom = positive(field(j, "bottom"), "bottom");
  return Segment(top, bottom);
}

json encode(const Branch& b) { return {{"bits", b.bits()}}; }

Branch decode_branch(const json& j) {
  return guarded("branch", [&] { return Branch(field(j, "bits").get<std::string>()); });
}

json encode(const Partition& p) {
  json segs = json::array();
  for (const auto& s : p.segments()) segs.push_back(encode(s));
  return {{"segments", std::move(segs)}};
}

Partition decode_partition(const json& j) {
  std::vector<Segment> segs;
  for (const auto& s : field(j, "segments")) segs.push_back(decode_segment(s));
  return Partition(std::move(segs));
}

json encode(const IntervalPartition& p) {
  json ivs = json::array();
  for (const auto& iv : p.intervals()) ivs.push_back({{"lo", iv.lo}, {"hi", iv.hi}});
  return {{"intervals", std::move(ivs)}};
}

IntervalPartition decode_interval_partition(const json& j) {
  std::vector<Interval> ivs;
  for (const auto& iv : field(j, "intervals")) {
    ivs.push_back({positive(field(iv, "lo"), "lo"), positive(field(iv, "hi"), "hi")});
  }
  return IntervalPartition(std::move(ivs));
}

json encode(const SeqVector& x) {
  json entries = json::array();
  for (const auto& [p, v] : x) {
    json e{{"pos", p}};
    put_rational(e, v);
    entries.push_back(std::move(e));
  }
  return {{"entries", std::move(entries)}};
}

SeqVector decode_seq_vector(const json& j) {
  SeqVector x;
  std::set<std::uint64_t> seen;
  for (const auto& e : field(j, "entries")) {
    const auto pos = positive(field(e, "pos"), "pos");
    if (!seen.insert(pos).second) throw InputError("position " + std::to_string(pos) + " appears twice");
    x.set(pos, decode_rational(e));
  }
  return x;
}

json encode(const TreeVector& x) { return encode_keyed(x); }
json encode(const DualVector& f) { return encode_keyed(f); }

TreeVector decode_tree_vector(const json& j, int max_depth) { return decode_keyed<TreeVector>(j, max_depth); }
DualVector decode_dual_vector(const json& j, int max_depth) { return decode_keyed<DualVector>(j, max_depth); }

json encode(const NormCertificate& c) {
  return {{"value_sq", encode(c.value_sq)}, {"value", c.value()}, {"witness", encode(c.witness)}};
}

json encode(const JNormResult& r) {
  return {{"value_sq", encode(r.value_sq)},
          {"value", std::sqrt(to_double(r.value_sq))},
          {"certificate", encode(r.certificate)}};
}

json encode(const DualResult& r) {
  return {{"value", r.value},         {"tolerance", r.tolerance}, {"lower", r.lower},
          {"upper", r.upper},         {"iterations", r.iterations}, {"witness", encode(r.witness)}};
}

json encode(const LevelBlockSequence& seq) {
  json terms = json::array();
  for (const auto& t : seq.terms) terms.push_back(encode(t));
  return {{"kind", "level-block"}, {"terms", std::move(terms)}};
}

LevelBlockSequence decode_level_block(const json& j, int max_depth) {
  LevelBlockSequence seq;
  for (const auto& t : field(j, "terms")) seq.terms.push_back(decode_tree_vector(t, max_depth));
  seq.validate();
  return seq;
}

json encode(const BlockSequence& seq) {
  json terms = json::array();
  for (const auto& t : seq.terms) terms.push_back(encode(t));
  return {{"kind", "j-block"}, {"terms", std::move(terms)}};
}

BlockSequence decode_block_sequence(const json& j) {
  BlockSequence seq;
  for (const auto& t : field(j, "terms")) seq.terms.push_back(decode_seq_vector(t));
  seq.validate();
  return seq;
}

json encode(const P11Config& cfg) {
  return {{"kind", "p11"},
          {"a", encode_rationals(cfg.a)},
          {"b", encode_rationals(cfg.b)},
          {"bnorm", encode(cfg.bnorm)},
          {"eps", encode(cfg.eps)},
          {"delta", encode_rationals(cfg.delta)}};
}

P11Config decode_p11_config(const json& j) {
  P11Config cfg;
  cfg.a = decode_rationals(field(j, "a"));
  cfg.b = decode_rationals(field(j, "b"));
  cfg.bnorm = decode_rational(field(j, "bnorm"));
  cfg.eps = decode_rational(field(j, "eps"));
  cfg.delta = decode_rationals(field(j, "delta"));
  cfg.validate();
  return cfg;
}

json encode(const EquivalenceReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"input", v.input}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"bound", v.bound}});
  }
  json constants = json::object();
  for (const auto& [k, v] : report.constants) constants[k] = v;
  return {{"suite", report.suite},
          {"seed", report.seed},
          {"instances", report.instances},
          {"passed", report.passed()},
          {"constants", std::move(constants)},
          {"violations", std::move(violations)}};
}

}  // namespace jtree::io
