#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/rational.hpp"

namespace momentlab {

// Merge radius for float-mode atom deduplication.
inline constexpr double kAtomMergeTol = 1e-12;

template <typename T>
struct Atom {
  T position{};
  T weight{};
  bool operator==(const Atom&) const = default;
};

// Finitely supported non-negative measure on the line. Atoms are kept
// sorted by position and pairwise distinct; constructing with a repeated
// position merges the weights (exact equality for Rational, a 1e-12 radius
// for double).
template <typename T>
class Measure {
 public:
  Measure() = default;

  explicit Measure(std::vector<Atom<T>> atoms) {
    for (const auto& a : atoms) {
      if (a.weight < T(0)) throw validity_error("measure with a negative weight");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom<T>& a, const Atom<T>& b) { return a.position < b.position; });
    for (const auto& a : atoms) {
      if (!atoms_.empty() && same_position(atoms_.back().position, a.position)) {
        atoms_.back().weight += a.weight;
      } else {
        atoms_.push_back(a);
      }
    }
  }

  static Measure point_mass(const T& x, const T& w = T(1)) {
    return Measure({Atom<T>{x, w}});
  }

  const std::vector<Atom<T>>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  T total_mass() const {
    T m(0);
    for (const auto& a : atoms_) m += a.weight;
    return m;
  }

  bool supported_in(const T& lo, const T& hi) const {
    for (const auto& a : atoms_)
      if (a.position < lo || a.position > hi) return false;
    return true;
  }

  // Pushforward under x -> -x.
  Measure reflected() const {
    std::vector<Atom<T>> flipped;
    flipped.reserve(atoms_.size());
    for (const auto& a : atoms_) flipped.push_back({T(-a.position), a.weight});
    return Measure(std::move(flipped));
  }

  bool operator==(const Measure&) const = default;

 private:
  static bool same_position(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, double>) {
      return std::abs(a - b) <= kAtomMergeTol;
    } else {
      return a == b;
    }
  }

  std::vector<Atom<T>> atoms_;
};

template <typename T>
struct MultiAtom {
  std::vector<T> position;
  T weight{};
  bool operator==(const MultiAtom&) const = default;
};

// Finitely supported non-negative measure on R^d.
template <typename T>
class MultiMeasure {
 public:
  MultiMeasure() = default;

  MultiMeasure(std::size_t dim, std::vector<MultiAtom<T>> atoms) : dim_(dim) {
    for (const auto& a : atoms) {
      if (a.position.size() != dim_)
        throw validity_error("atom dimension mismatch");
      if (a.weight < T(0)) throw validity_error("measure with a negative weight");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const MultiAtom<T>& a, const MultiAtom<T>& b) {
                return a.position < b.position;
              });
    for (const auto& a : atoms) {
      if (!atoms_.empty() && atoms_.back().position == a.position) {
        atoms_.back().weight += a.weight;
      } else {
        atoms_.push_back(a);
      }
    }
  }

  static MultiMeasure point_mass(std::vector<T> x, const T& w = T(1)) {
    const std::size_t d = x.size();
    return MultiMeasure(d, {MultiAtom<T>{std::move(x), w}});
  }

  std::size_t dim() const { return dim_; }
  const std::vector<MultiAtom<T>>& atoms() const { return atoms_; }

  bool supported_in_unit_box() const {
    for (const auto& a : atoms_)
      for (const auto& x : a.position)
        if (x < T(-1) || x > T(1)) return false;
    return true;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<MultiAtom<T>> atoms_;
};

}  // namespace momentlab
