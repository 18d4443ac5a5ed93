#pragma once

#include <cstddef>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/rational.hpp"

namespace momentlab {

// Degree reported for the zero polynomial.
inline constexpr int kZeroPolyDegree = -1;

// Univariate polynomial over Rational, coefficient index = degree.
// Trailing zero coefficients are trimmed on construction, so equality is
// plain coefficient equality.
class UniPoly {
 public:
  UniPoly() = default;

  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(const Rational& v) { return UniPoly({v}); }

  // c * x^k
  static UniPoly monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = c;
    return UniPoly(std::move(v));
  }

  int degree() const {
    return c_.empty() ? kZeroPolyDegree : static_cast<int>(c_.size()) - 1;
  }

  bool is_zero() const { return c_.empty(); }

  Rational coeff(std::size_t k) const {
    return k < c_.size() ? c_[k] : Rational(0);
  }

  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  UniPoly truncated(int degree_cap) const {
    if (degree_cap < 0) return UniPoly();
    if (degree() <= degree_cap) return *this;
    std::vector<Rational> v(c_.begin(), c_.begin() + degree_cap + 1);
    return UniPoly(std::move(v));
  }

  bool operator==(const UniPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UniPoly& o) const { return !(*this == o); }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return UniPoly(std::move(v));
  }

  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return UniPoly(std::move(v));
  }

  friend UniPoly operator-(const UniPoly& a) {
    std::vector<Rational> v = a.c_;
    for (auto& x : v) x = -x;
    return UniPoly(std::move(v));
  }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    return mul_capped(a, b, -1);
  }

  // Product with every coefficient above degree_cap dropped; cap < 0 means
  // no truncation.
  static UniPoly mul_capped(const UniPoly& a, const UniPoly& b, int degree_cap) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    const std::size_t full = a.c_.size() + b.c_.size() - 1;
    const std::size_t len =
        degree_cap < 0 ? full
                       : std::min(full, static_cast<std::size_t>(degree_cap) + 1);
    std::vector<Rational> v(len, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j)
        v[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

// Determinant of a matrix of polynomials, truncated after degree_cap.
// Cofactor expansion along the first column; every intermediate product is
// truncated at the cap, which keeps the cost polynomial in the cap.
inline UniPoly det_series(const Matrix<UniPoly>& a, int degree_cap) {
  if (!a.square()) throw dimension_error("determinant of a non-square matrix");
  if (degree_cap < 0) throw domain_error("negative degree cap");
  const std::size_t n = a.rows();
  if (n == 0) return UniPoly::constant(Rational(1));
  if (n == 1) return a(0, 0).truncated(degree_cap);
  UniPoly acc;
  std::vector<std::size_t> cols;
  for (std::size_t j = 1; j < n; ++j) cols.push_back(j);
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, 0).is_zero()) continue;
    std::vector<std::size_t> rows;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) rows.push_back(k);
    UniPoly term = UniPoly::mul_capped(
        a(i, 0), det_series(a.submatrix(rows, cols), degree_cap), degree_cap);
    acc = (i % 2 == 0) ? acc + term : acc - term;
  }
  return acc.truncated(degree_cap);
}

}  // namespace momentlab
