#pragma once

// JSON encodings. Rationals are {"num": n, "den": d} integer pairs; values outside the
// int64 range fall back to decimal strings in the same two fields.

#include <istream>
#include <string>
#include <vector>

#include "json.hpp"

#include "jtree/dual_norm.hpp"
#include "jtree/james_norm.hpp"
#include "jtree/jt_norm.hpp"
#include "jtree/verifier.hpp"

namespace jtree::io {

using nlohmann::json;

/// Parses one JSON document; syntax errors become InputError with the byte offset.
json parse(std::istream& in);
json parse(const std::string& text);

/// Serialized form used for every written file (2-space indent, trailing newline).
std::string dump(const json& doc);

json encode(const Rational& q);
Rational decode_rational(const json& j);
/// Writes num/den into an existing object (used by vector entries).
void put_rational(json& obj, const Rational& q);

json encode(const Segment& s);
Segment decode_segment(const json& j);

json encode(const Branch& b);
Branch decode_branch(const json& j);

json encode(const Partition& p);
Partition decode_partition(const json& j);

json encode(const IntervalPartition& p);
IntervalPartition decode_interval_partition(const json& j);

json encode(const SeqVector& x);
SeqVector decode_seq_vector(const json& j);

/// {"depth": d, "entries": [{"key": k, "num": n, "den": d}, ...]}
json encode(const TreeVector& x);
json encode(const DualVector& f);
/// A missing "depth" defaults to kDefaultDepth; depths above max_depth are refused.
TreeVector decode_tree_vector(const json& j, int max_depth = kMaxDepth);
DualVector decode_dual_vector(const json& j, int max_depth = kMaxDepth);

json encode(const NormCertificate& c);
json encode(const JNormResult& r);
json encode(const DualResult& r);

json encode(const LevelBlockSequence& seq);
LevelBlockSequence decode_level_block(const json& j, int max_depth = kMaxDepth);
json encode(const BlockSequence& seq);
BlockSequence decode_block_sequence(const json& j);

json encode(const P11Config& cfg);
P11Config decode_p11_config(const json& j);

json encode(const EquivalenceReport& report);

}  // namespace jtree::io
