#include "jtree/dyadic_tree.hpp"

#include <algorithm>
#include <bit>

#include "jtree/error.hpp"

namespace jtree {

NodeKey node_key(int level, std::uint64_t index) {
  if (level < 0 || level > 62) throw InputError("level " + std::to_string(level) + " out of range");
  const std::uint64_t width = std::uint64_t{1} << level;
  if (index >= width) {
    throw InputError("index " + std::to_string(index) + " out of range for level " + std::to_string(level));
  }
  return width + index;
}

int level_of(NodeKey key) {
  if (key == 0) throw InputError("node key must be positive");
  return std::bit_width(key) - 1;
}

std::uint64_t index_of(NodeKey key) { return key - (NodeKey{1} << level_of(key)); }

bool precedes(NodeKey a, NodeKey b) {
  if (a == 0 || b == 0) return false;
  while (b > a) b >>= 1;
  return a == b;
}

Segment::Segment(NodeKey top, NodeKey bottom) : top_(top), bottom_(bottom) {
  if (!precedes(top, bottom)) {
    throw InputError("segment top " + std::to_string(top) + " does not precede bottom " + std::to_string(bottom));
  }
}

bool Segment::contains(NodeKey key) const { return precedes(top_, key) && precedes(key, bottom_); }

std::size_t Segment::length() const {
  return static_cast<std::size_t>(level_of(bottom_) - level_of(top_)) + 1;
}

std::vector<NodeKey> Segment::members() const {
  std::vector<NodeKey> out;
  out.reserve(length());
  for (NodeKey k = bottom_; k >= top_; k >>= 1) {
    out.push_back(k);
    if (k == top_) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool Segment::intersects(const Segment& other) const { return contains(other.top_) || other.contains(top_); }

std::optional<Segment> segment_restrict(const Segment& s, NodeKey lo, NodeKey hi) {
  if (lo > hi) throw InputError("segment_restrict: empty key interval");
  std::optional<NodeKey> first;
  NodeKey last = 0;
  // Members are strictly increasing from top to bottom, so the kept ones are contiguous.
  for (NodeKey k : s.members()) {
    if (k < lo || k > hi) continue;
    if (!first) first = k;
    last = k;
  }
  if (!first) return std::nullopt;
  return Segment(*first, last);
}

Branch::Branch(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1') throw InputError("branch bits must be '0'/'1', got '" + bits_ + "'");
  }
  if (bits_.size() > 62) throw InputError("branch longer than 62 levels");
}

std::vector<NodeKey> Branch::keys() const {
  std::vector<NodeKey> out;
  out.reserve(bits_.size() + 1);
  NodeKey k = 1;
  out.push_back(k);
  for (char c : bits_) {
    k = 2 * k + static_cast<NodeKey>(c - '0');
    out.push_back(k);
  }
  return out;
}

NodeKey Branch::leaf() const { return keys().back(); }

bool Branch::contains(NodeKey key) const { return precedes(key, leaf()); }

std::optional<Segment> Branch::final_segment(NodeKey m) const {
  for (NodeKey k : keys()) {
    if (k > m) return Segment(k, leaf());
  }
  return std::nullopt;
}

NodeKey incomparable_tail_depth(const std::vector<Branch>& branches) {
  NodeKey meet = 0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    for (std::size_t j = i + 1; j < branches.size(); ++j) {
      if (branches[i] == branches[j]) {
        throw InputError("incomparable_tail_depth: branch '" + branches[i].bits() + "' appears twice");
      }
      const auto ki = branches[i].keys();
      const auto kj = branches[j].keys();
      std::size_t common = 0;
      while (common < ki.size() && common < kj.size() && ki[common] == kj[common]) ++common;
      meet = std::max(meet, ki[common - 1]);
    }
  }
  if (branches.size() >= 2) {
    for (const auto& b : branches) {
      if (!b.final_segment(meet)) {
        throw InputError("incomparable_tail_depth: branch '" + b.bits() + "' ends at or before key " +
                         std::to_string(meet) + " and cannot be separated");
      }
    }
  }
  return meet;
}

std::optional<std::pair<Segment, Segment>> find_overlap(const std::vector<Segment>& segments) {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      if (segments[i].intersects(segments[j])) return std::make_pair(segments[i], segments[j]);
    }
  }
  return std::nullopt;
}

Partition::Partition(std::vector<Segment> segments) : segments_(std::move(segments)) {
  std::sort(segments_.begin(), segments_.end());
  if (auto clash = find_overlap(segments_)) {
    throw InputError("partition segments (" + std::to_string(clash->first.top()) + "," +
                     std::to_string(clash->first.bottom()) + ") and (" + std::to_string(clash->second.top()) +
                     "," + std::to_string(clash->second.bottom()) + ") overlap");
  }
}

std::vector<Segment> all_segments(int depth) {
  if (depth < 0 || depth > kMaxDepth) throw InputError("depth out of range");
  std::vector<Segment> out;
  for (NodeKey top = 1; top <= tree_size(depth); ++top) {
    std::vector<NodeKey> frontier{top};
    while (!frontier.empty()) {
      std::vector<NodeKey> next;
      for (NodeKey b : frontier) {
        out.emplace_back(top, b);
        if (level_of(b) < depth) {
          next.push_back(left_child(b));
          next.push_back(right_child(b));
        }
      }
      frontier = std::move(next);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void extend_families(const std::vector<Segment>& segs, std::size_t from, std::vector<Segment>& chosen,
                     std::vector<Partition>& out) {
  for (std::size_t i = from; i < segs.size(); ++i) {
    const bool clash = std::any_of(chosen.begin(), chosen.end(),
                                   [&](const Segment& c) { return c.intersects(segs[i]); });
    if (clash) continue;
    chosen.push_back(segs[i]);
    out.emplace_back(chosen);
    extend_families(segs, i + 1, chosen, out);
    chosen.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int depth) {
  if (depth < 0) throw InputError("enumerate_partitions: negative depth");
  if (depth > kMaxEnumerationDepth) {
    const auto nodes = tree_size(depth);
    throw InputError("enumerate_partitions: depth " + std::to_string(depth) + " refused (" +
                     std::to_string(nodes) + " nodes, " + std::to_string(all_segments(depth).size()) +
                     " segments; family count grows at least like 2^" + std::to_string(nodes) + ")");
  }
  const auto segs = all_segments(depth);
  std::vector<Partition> out;
  std::vector<Segment> chosen;
  extend_families(segs, 0, chosen, out);
  return out;
}

}  // namespace jtree
