#include "jtree/jt_norm.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "jtree/error.hpp"
#include "jtree/segment_family.hpp"

namespace jtree {

double NormCertificate::value() const { return std::sqrt(to_double(value_sq)); }

NormCertificate jt_norm_sq(const TreeVector& x) {
  std::map<NodeKey, Rational> coeffs(x.begin(), x.end());
  auto result = detail::max_disjoint_family(coeffs, [](const Rational& s) { return Rational(s * s); });
  return {result.value, Partition(std::move(result.family))};
}

Rational segment_sum(const TreeVector& x, const Segment& s) {
  Rational total = 0;
  // Walk whichever is shorter: the chain or the support.
  if (s.length() <= x.size()) {
    for (NodeKey k : s.members()) total += x.get(k);
  } else {
    for (const auto& [k, v] : x) {
      if (s.contains(k)) total += v;
    }
  }
  return total;
}

Rational p_norm_sq(const TreeVector& x, const Partition& partition) {
  Rational total = 0;
  for (const auto& s : partition.segments()) {
    const Rational v = segment_sum(x, s);
    total += v * v;
  }
  return total;
}

RestrictionSet RestrictionSet::whole_tree() {
  RestrictionSet a;
  a.whole_ = true;
  return a;
}

RestrictionSet RestrictionSet::subtrees(std::vector<NodeKey> roots, int depth) {
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i] == 0) throw InputError("subtree root must be a positive key");
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!incomparable(roots[i], roots[j])) {
        throw InputError("subtree roots " + std::to_string(roots[i]) + " and " + std::to_string(roots[j]) +
                         " are comparable");
      }
    }
  }
  RestrictionSet a;
  a.roots_ = std::move(roots);
  a.validate(depth);
  return a;
}

RestrictionSet RestrictionSet::final_segments(const std::vector<std::pair<Branch, NodeKey>>& tails, int depth) {
  RestrictionSet a;
  for (const auto& [branch, m] : tails) {
    auto seg = branch.final_segment(m);
    if (!seg) {
      throw InputError("branch '" + branch.bits() + "' has no node beyond key " + std::to_string(m));
    }
    for (const auto& other : a.chains_) {
      if (!incomparable(other.top(), seg->top())) {
        throw InputError("final segments starting at " + std::to_string(other.top()) + " and " +
                         std::to_string(seg->top()) + " are not incomparable");
      }
    }
    a.chains_.push_back(*seg);
  }
  std::sort(a.chains_.begin(), a.chains_.end());
  a.validate(depth);
  return a;
}

RestrictionSet RestrictionSet::level_band(int lo, int hi) {
  if (lo < 0 || lo > hi) throw InputError("level band [" + std::to_string(lo) + "," + std::to_string(hi) + "] is empty");
  RestrictionSet a;
  a.band_ = std::make_pair(lo, hi);
  return a;
}

RestrictionSet RestrictionSet::from_keys(std::set<NodeKey> keys, int depth) {
  RestrictionSet a;
  for (NodeKey k : keys) {
    if (!key_in_depth(k, depth)) throw InputError("key " + std::to_string(k) + " outside the tree");
  }
  a.keys_ = std::move(keys);
  a.validate(depth);
  return a;
}

RestrictionSet RestrictionSet::unite(const RestrictionSet& a, const RestrictionSet& b, int depth) {
  if (a.band_ || b.band_) {
    throw InputError("level bands cannot be united with other restriction sets");
  }
  RestrictionSet u;
  u.whole_ = a.whole_ || b.whole_;
  u.roots_ = a.roots_;
  u.roots_.insert(u.roots_.end(), b.roots_.begin(), b.roots_.end());
  std::sort(u.roots_.begin(), u.roots_.end());
  u.roots_.erase(std::unique(u.roots_.begin(), u.roots_.end()), u.roots_.end());
  u.chains_ = a.chains_;
  u.chains_.insert(u.chains_.end(), b.chains_.begin(), b.chains_.end());
  std::sort(u.chains_.begin(), u.chains_.end());
  u.chains_.erase(std::unique(u.chains_.begin(), u.chains_.end()), u.chains_.end());
  u.keys_ = a.keys_;
  u.keys_.insert(b.keys_.begin(), b.keys_.end());
  u.validate(depth);
  return u;
}

bool RestrictionSet::contains(NodeKey key) const {
  if (whole_) return true;
  if (band_) {
    const int lvl = level_of(key);
    return lvl >= band_->first && lvl <= band_->second;
  }
  if (keys_.count(key) != 0) return true;
  for (NodeKey r : roots_) {
    if (precedes(r, key)) return true;
  }
  for (const auto& c : chains_) {
    if (c.contains(key)) return true;
  }
  return false;
}

std::vector<NodeKey> RestrictionSet::members(int depth) const {
  std::vector<NodeKey> out;
  if (whole_ || band_) {
    // Whole tree and level bands are admissible by structure; callers never enumerate them.
    return out;
  }
  for (NodeKey r : roots_) {
    if (!key_in_depth(r, depth)) continue;
    std::vector<NodeKey> frontier{r};
    while (!frontier.empty()) {
      std::vector<NodeKey> next;
      for (NodeKey k : frontier) {
        out.push_back(k);
        if (level_of(k) < depth) {
          next.push_back(left_child(k));
          next.push_back(right_child(k));
        }
      }
      frontier = std::move(next);
    }
  }
  for (const auto& c : chains_) {
    for (NodeKey k : c.members()) {
      if (key_in_depth(k, depth)) out.push_back(k);
    }
  }
  for (NodeKey k : keys_) {
    if (key_in_depth(k, depth)) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Segment> RestrictionSet::find_violation(int depth) const {
  if (whole_ || band_) return std::nullopt;
  // s ∩ A fails to be a segment exactly when some a ≺ b ≺ c has a, c in A and b not in A.
  // For each member c, walk towards the root: once the walk leaves A it must never re-enter.
  const auto mem = members(depth);
  auto in_a = [&](NodeKey k) { return std::binary_search(mem.begin(), mem.end(), k); };
  for (NodeKey c : mem) {
    bool left = false;
    for (NodeKey a = c >> 1; a >= 1; a >>= 1) {
      if (!in_a(a)) {
        left = true;
      } else if (left) {
        return Segment(a, c);
      }
    }
  }
  return std::nullopt;
}

void RestrictionSet::validate(int depth) const {
  if (auto bad = find_violation(depth)) {
    throw InputError("restriction set is not admissible: segment (" + std::to_string(bad->top()) + "," +
                     std::to_string(bad->bottom()) + ") meets it in a non-segment");
  }
}

TreeVector restrict(const TreeVector& x, const RestrictionSet& a) {
  a.validate(x.depth());
  TreeVector out(x.depth());
  for (const auto& [k, v] : x) {
    if (a.contains(k)) out.set(k, v);
  }
  return out;
}

SeqVector chain_coefficients(const TreeVector& x, const Branch& b) {
  const auto keys = b.keys();
  SeqVector out;
  std::size_t matched = 0;
  for (std::size_t j = 0; j < keys.size(); ++j) {
    const Rational v = x.get(keys[j]);
    if (v != 0) {
      out.set(j + 1, v);
      ++matched;
    }
  }
  if (matched != x.size()) {
    for (const auto& [k, v] : x) {
      if (!b.contains(k)) {
        throw InputError("chain_coefficients: node " + std::to_string(k) + " is off branch '" + b.bits() + "'");
      }
    }
  }
  return out;
}

SeqVector segment_coefficients(const TreeVector& x, const Segment& s) {
  const auto keys = s.members();
  SeqVector out;
  for (std::size_t j = 0; j < keys.size(); ++j) out.set(j + 1, x.get(keys[j]));
  return out;
}

}  // namespace jtree
