#pragma once

// Finite-support coefficient maps. Zero coefficients are never stored.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>

#include "jtree/dyadic_tree.hpp"
#include "jtree/rational.hpp"

namespace jtree {

class SparseVector {
 public:
  using Map = std::map<std::uint64_t, Rational>;

  SparseVector() = default;
  SparseVector(std::initializer_list<std::pair<const std::uint64_t, Rational>> init);

  /// Stores value at key (erasing it when zero). Keys must be positive.
  void set(std::uint64_t key, const Rational& value);
  void add(std::uint64_t key, const Rational& value);
  Rational get(std::uint64_t key) const;

  const Map& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

  /// Smallest and largest key of the support; requires a nonempty vector.
  std::uint64_t min_key() const;
  std::uint64_t max_key() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 protected:
  void scale_in_place(const Rational& c);
  void add_in_place(const SparseVector& other, const Rational& c);

 private:
  Map entries_;
};

/// Element of J: positions 1, 2, ... to rationals.
class SeqVector : public SparseVector {
 public:
  using SparseVector::SparseVector;

  SeqVector scaled(const Rational& c) const;
  SeqVector plus(const SeqVector& other, const Rational& c = 1) const;
  /// Unit vector at a position.
  static SeqVector unit(std::uint64_t pos, const Rational& c = 1);
};

/// Coefficients indexed by node key, all within a depth bound.
class TreeCoefficients : public SparseVector {
 public:
  explicit TreeCoefficients(int depth = kDefaultDepth);
  TreeCoefficients(int depth, std::initializer_list<std::pair<const std::uint64_t, Rational>> init);

  int depth() const noexcept { return depth_; }
  /// Same as SparseVector::set but rejects keys beyond the depth bound.
  void set(NodeKey key, const Rational& value);
  void add(NodeKey key, const Rational& value);

  friend bool operator==(const TreeCoefficients&, const TreeCoefficients&) = default;

 protected:
  void check_key(NodeKey key) const;

 private:
  int depth_;
};

/// Element x of JT on the truncated tree.
class TreeVector : public TreeCoefficients {
 public:
  using TreeCoefficients::TreeCoefficients;

  TreeVector scaled(const Rational& c) const;
  TreeVector plus(const TreeVector& other, const Rational& c = 1) const;
};

/// Finite combination of coordinate functionals e_k* (an element of JT*).
class DualVector : public TreeCoefficients {
 public:
  using TreeCoefficients::TreeCoefficients;

  DualVector scaled(const Rational& c) const;
  DualVector plus(const DualVector& other, const Rational& c = 1) const;
};

}  // namespace jtree
