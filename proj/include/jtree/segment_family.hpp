#pragma once

// Maximum-weight family of pairwise disjoint segments on the dyadic tree, where the
// weight of a segment is a function of its coefficient sum.
//
// Only segments whose endpoints carry nonzero coefficients are candidates; any other
// segment can be trimmed to one of those without changing its sum. The search runs
// bottom-up over the ancestor closure C of the support (children have larger keys than
// parents, so decreasing key order is a valid schedule):
//
//   best(v) = max( best(2v) + best(2v+1),
//                  max_{b in supp, v <= b}  w(sum(v..b)) + off(v, b) )
//
// where off(v, b) collects best() of every child subtree hanging off the path v..b
// and of both children of b. There are O(|C| * depth) pairs (v, b).
//
// Ties: larger total weight, then fewer segments, then the lexicographically smallest
// canonical (top, bottom) list. All three keys are additive over disjoint subtrees
// (the last one via "first element of the symmetric difference"), so the choice made
// at every node is consistent with the global order.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jtree/dyadic_tree.hpp"

namespace jtree::detail {

/// True when a should be preferred over b in the lexicographic tie-break of two
/// canonical families of equal size and weight.
inline bool lex_preferred(const std::vector<Segment>& a, const std::vector<Segment>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) {
      ++ia;
      ++ib;
      continue;
    }
    return *ia < *ib;
  }
  return false;
}

template <class Scalar>
struct FamilyResult {
  Scalar value{};
  std::vector<Segment> family;  // canonical order
};

template <class Scalar, class WeightFn>
class SegmentFamilySolver {
 public:
  /// weight(sum) returns the segment weight; nonpositive weights are never used.
  SegmentFamilySolver(const std::map<NodeKey, Scalar>& coeffs, WeightFn weight)
      : weight_(std::move(weight)) {
    build_closure(coeffs);
  }

  FamilyResult<Scalar> solve() {
    if (nodes_.empty()) return {};
    for (std::size_t i = nodes_.size(); i-- > 0;) process(i);
    return {nodes_[0].best, nodes_[0].family};
  }

 private:
  struct Node {
    NodeKey key = 0;
    Scalar coeff{};
    bool in_support = false;
    int child[2] = {-1, -1};
    int parent = -1;
    Scalar best{};
    std::size_t count = 0;
    std::vector<Segment> family;
  };

  void build_closure(const std::map<NodeKey, Scalar>& coeffs) {
    std::map<NodeKey, std::pair<Scalar, bool>> keys;
    for (const auto& [k, v] : coeffs) {
      if (v == Scalar(0)) continue;
      keys[k] = {v, true};
      for (NodeKey a = k >> 1; a >= 1; a >>= 1) {
        if (!keys.emplace(a, std::make_pair(Scalar(0), false)).second) break;
      }
    }
    std::unordered_map<NodeKey, int> index;
    for (const auto& [k, entry] : keys) {
      Node n;
      n.key = k;
      n.coeff = entry.first;
      n.in_support = entry.second;
      index.emplace(k, static_cast<int>(nodes_.size()));
      nodes_.push_back(std::move(n));
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const NodeKey k = nodes_[i].key;
      if (k == 1) continue;
      const int p = index.at(k >> 1);
      nodes_[i].parent = p;
      nodes_[p].child[k & 1U] = static_cast<int>(i);
    }
  }

  Scalar child_best(int c) const { return c < 0 ? Scalar(0) : nodes_[c].best; }
  std::size_t child_count(int c) const { return c < 0 ? 0 : nodes_[c].count; }

  void append_family(int c, std::vector<Segment>& out) const {
    if (c >= 0) out.insert(out.end(), nodes_[c].family.begin(), nodes_[c].family.end());
  }

  std::vector<Segment> family_for_skip(const Node& v) const {
    std::vector<Segment> fam;
    append_family(v.child[0], fam);
    append_family(v.child[1], fam);
    std::sort(fam.begin(), fam.end());
    return fam;
  }

  std::vector<Segment> family_for_segment(int vi, int bi) const {
    std::vector<Segment> fam;
    fam.emplace_back(nodes_[vi].key, nodes_[bi].key);
    append_family(nodes_[bi].child[0], fam);
    append_family(nodes_[bi].child[1], fam);
    for (int w = bi; w != vi; w = nodes_[w].parent) {
      const Node& u = nodes_[nodes_[w].parent];
      const int sibling = u.child[0] == w ? u.child[1] : u.child[0];
      append_family(sibling, fam);
    }
    std::sort(fam.begin(), fam.end());
    return fam;
  }

  void process(std::size_t vi_sz) {
    const int vi = static_cast<int>(vi_sz);
    Node& v = nodes_[vi];

    Scalar best_value = child_best(v.child[0]) + child_best(v.child[1]);
    std::size_t best_count = child_count(v.child[0]) + child_count(v.child[1]);
    int best_bottom = -1;  // -1: v starts no segment
    std::optional<std::vector<Segment>> best_family;

    if (v.in_support) {
      struct Frame {
        int node;
        Scalar path_sum;
        Scalar off;
        std::size_t off_count;
      };
      std::vector<Frame> stack;
      stack.push_back({vi, v.coeff, Scalar(0), 0});
      while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const Node& u = nodes_[f.node];
        if (u.in_support) {
          const Scalar w = weight_(f.path_sum);
          if (w > Scalar(0)) {
            const Scalar value = w + f.off + child_best(u.child[0]) + child_best(u.child[1]);
            const std::size_t count = 1 + f.off_count + child_count(u.child[0]) + child_count(u.child[1]);
            bool take = false;
            if (value > best_value) {
              take = true;
            } else if (value == best_value) {
              if (count < best_count) {
                take = true;
              } else if (count == best_count) {
                if (!best_family) {
                  best_family = best_bottom < 0 ? family_for_skip(v) : family_for_segment(vi, best_bottom);
                }
                auto candidate = family_for_segment(vi, f.node);
                if (lex_preferred(candidate, *best_family)) {
                  best_family = std::move(candidate);
                  best_value = value;
                  best_count = count;
                  best_bottom = f.node;
                }
              }
            }
            if (take) {
              best_value = value;
              best_count = count;
              best_bottom = f.node;
              best_family.reset();
            }
          }
        }
        for (int side = 0; side < 2; ++side) {
          const int c = u.child[side];
          if (c < 0) continue;
          const int other = u.child[1 - side];
          stack.push_back({c, f.path_sum + nodes_[c].coeff, f.off + child_best(other),
                           f.off_count + child_count(other)});
        }
      }
    }

    if (!best_family) {
      best_family = best_bottom < 0 ? family_for_skip(v) : family_for_segment(vi, best_bottom);
    }
    v.best = best_value;
    v.count = best_count;
    v.family = std::move(*best_family);
  }

  WeightFn weight_;
  std::vector<Node> nodes_;
};

template <class Scalar, class WeightFn>
FamilyResult<Scalar> max_disjoint_family(const std::map<NodeKey, Scalar>& coeffs, WeightFn weight) {
  return SegmentFamilySolver<Scalar, WeightFn>(coeffs, std::move(weight)).solve();
}

}  // namespace jtree::detail
