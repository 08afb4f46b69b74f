#include "jtree/vectors.hpp"

#include <algorithm>

#include "jtree/error.hpp"

namespace jtree {

SparseVector::SparseVector(std::initializer_list<std::pair<const std::uint64_t, Rational>> init) {
  for (const auto& [k, v] : init) set(k, v);
}

void SparseVector::set(std::uint64_t key, const Rational& value) {
  if (key == 0) throw InputError("coefficient keys must be positive");
  Rational v = value;
  v.canonicalize();
  if (v == 0) {
    entries_.erase(key);
  } else {
    entries_[key] = std::move(v);
  }
}

void SparseVector::add(std::uint64_t key, const Rational& value) { set(key, get(key) + value); }

Rational SparseVector::get(std::uint64_t key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? Rational(0) : it->second;
}

std::uint64_t SparseVector::min_key() const {
  if (entries_.empty()) throw InputError("support of the zero vector is empty");
  return entries_.begin()->first;
}

std::uint64_t SparseVector::max_key() const {
  if (entries_.empty()) throw InputError("support of the zero vector is empty");
  return entries_.rbegin()->first;
}

void SparseVector::scale_in_place(const Rational& c) {
  if (c == 0) {
    entries_.clear();
    return;
  }
  for (auto& [k, v] : entries_) v *= c;
}

void SparseVector::add_in_place(const SparseVector& other, const Rational& c) {
  for (const auto& [k, v] : other.entries_) set(k, get(k) + c * v);
}

SeqVector SeqVector::scaled(const Rational& c) const {
  SeqVector out = *this;
  out.scale_in_place(c);
  return out;
}

SeqVector SeqVector::plus(const SeqVector& other, const Rational& c) const {
  SeqVector out = *this;
  out.add_in_place(other, c);
  return out;
}

SeqVector SeqVector::unit(std::uint64_t pos, const Rational& c) {
  SeqVector out;
  out.set(pos, c);
  return out;
}

TreeCoefficients::TreeCoefficients(int depth) : depth_(depth) {
  if (depth < 0 || depth > kMaxDepth) {
    throw InputError("depth " + std::to_string(depth) + " outside [0, " + std::to_string(kMaxDepth) + "]");
  }
}

TreeCoefficients::TreeCoefficients(int depth, std::initializer_list<std::pair<const std::uint64_t, Rational>> init)
    : TreeCoefficients(depth) {
  for (const auto& [k, v] : init) set(k, v);
}

void TreeCoefficients::check_key(NodeKey key) const {
  if (!key_in_depth(key, depth_)) {
    throw InputError("node key " + std::to_string(key) + " outside the depth-" + std::to_string(depth_) + " tree");
  }
}

void TreeCoefficients::set(NodeKey key, const Rational& value) {
  check_key(key);
  SparseVector::set(key, value);
}

void TreeCoefficients::add(NodeKey key, const Rational& value) {
  check_key(key);
  SparseVector::add(key, value);
}

namespace {

template <class V>
V sum_with(const V& a, const V& b, const Rational& c) {
  V out(std::max(a.depth(), b.depth()));
  for (const auto& [k, v] : a) out.set(k, v);
  for (const auto& [k, v] : b) out.add(k, c * v);
  return out;
}

}  // namespace

TreeVector TreeVector::scaled(const Rational& c) const {
  TreeVector out = *this;
  out.scale_in_place(c);
  return out;
}

TreeVector TreeVector::plus(const TreeVector& other, const Rational& c) const { return sum_with(*this, other, c); }

DualVector DualVector::scaled(const Rational& c) const {
  DualVector out = *this;
  out.scale_in_place(c);
  return out;
}

DualVector DualVector::plus(const DualVector& other, const Rational& c) const { return sum_with(*this, other, c); }

}  // namespace jtree
