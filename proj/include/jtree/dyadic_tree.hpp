#pragma once

// Node arithmetic on the dyadic tree. A node at level n with index i (0 <= i < 2^n)
// has key 2^n + i; the children of key k are 2k and 2k+1. Keys are the only node
// identity used inside the library.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jtree {

using NodeKey = std::uint64_t;

inline constexpr int kDefaultDepth = 12;
inline constexpr int kMaxDepth = 24;

NodeKey node_key(int level, std::uint64_t index);

int level_of(NodeKey key);
std::uint64_t index_of(NodeKey key);
inline NodeKey parent_of(NodeKey key) { return key >> 1; }
inline NodeKey left_child(NodeKey key) { return key << 1; }
inline NodeKey right_child(NodeKey key) { return (key << 1) | 1U; }

/// Number of keys in the complete tree with levels 0..depth.
inline NodeKey tree_size(int depth) { return (NodeKey{1} << (depth + 1)) - 1; }
inline bool key_in_depth(NodeKey key, int depth) { return key >= 1 && key <= tree_size(depth); }

/// True iff a is an ancestor of b or a == b.
bool precedes(NodeKey a, NodeKey b);

inline bool incomparable(NodeKey a, NodeKey b) { return !precedes(a, b) && !precedes(b, a); }

/// A finite chain {bottom, parent(bottom), ..., top}. Never empty.
class Segment {
 public:
  Segment(NodeKey top, NodeKey bottom);

  NodeKey top() const noexcept { return top_; }
  NodeKey bottom() const noexcept { return bottom_; }

  bool contains(NodeKey key) const;
  std::size_t length() const;
  /// Members in root-to-leaf order.
  std::vector<NodeKey> members() const;
  bool intersects(const Segment& other) const;

  friend auto operator<=>(const Segment&, const Segment&) = default;

 private:
  NodeKey top_;
  NodeKey bottom_;
};

/// Restriction of s to the key interval [lo, hi]; empty when no member falls inside.
std::optional<Segment> segment_restrict(const Segment& s, NodeKey lo, NodeKey hi);

/// Root-initiated path given by left (0) / right (1) choices.
class Branch {
 public:
  explicit Branch(std::string bits);

  const std::string& bits() const noexcept { return bits_; }
  int depth() const noexcept { return static_cast<int>(bits_.size()); }
  /// Keys k_0 = 1, k_{j+1} = 2 k_j + bit_j; depth() + 1 entries.
  std::vector<NodeKey> keys() const;
  NodeKey leaf() const;
  bool contains(NodeKey key) const;
  /// Final segment {k in branch : k > m}; empty when the branch ends at or before m.
  std::optional<Segment> final_segment(NodeKey m) const;

  friend bool operator==(const Branch&, const Branch&) = default;

 private:
  std::string bits_;
};

/// Smallest key m after which the final segments of all branches are pairwise
/// incomparable; 0 for fewer than two branches.
NodeKey incomparable_tail_depth(const std::vector<Branch>& branches);

/// Pairwise disjoint segments kept in canonical (top, bottom) order.
class Partition {
 public:
  Partition() = default;
  /// Sorts the input and throws InputError if two segments share a node.
  explicit Partition(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  bool empty() const noexcept { return segments_.empty(); }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Segment> segments_;
};

/// First pair of overlapping segments, if any.
std::optional<std::pair<Segment, Segment>> find_overlap(const std::vector<Segment>& segments);

/// All segments of the complete tree of the given depth, in canonical order.
std::vector<Segment> all_segments(int depth);

inline constexpr int kMaxEnumerationDepth = 3;

/// Every nonempty family of pairwise disjoint segments of the complete tree of the
/// given depth (at most kMaxEnumerationDepth).
std::vector<Partition> enumerate_partitions(int depth);

}  // namespace jtree
