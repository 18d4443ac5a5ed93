#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/rational.hpp"

namespace momentlab {

// Exact determinant by fraction-free (Bareiss) elimination with row
// pivoting. Every division below is exact, so no rounding can occur.
inline Rational det_exact(const Matrix<Rational>& a) {
  if (!a.square()) throw dimension_error("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);
  Matrix<Rational> m = a;
  Rational prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t pivot = k;
      while (pivot < n && m(pivot, k) == 0) ++pivot;
      if (pivot == n) return Rational(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = Rational(0);
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Rational(-m(n - 1, n - 1));
}

// Determinant of the submatrix selected by row_set x col_set.
inline Rational minor_det(const Matrix<Rational>& a,
                          const std::vector<std::size_t>& row_set,
                          const std::vector<std::size_t>& col_set) {
  if (row_set.size() != col_set.size())
    throw index_error("minor index sets of unequal size");
  return det_exact(a.submatrix(row_set, col_set));
}

// adj(A), satisfying A * adj(A) = det(A) * I exactly.
inline Matrix<Rational> adjugate(const Matrix<Rational>& a) {
  if (!a.square()) throw dimension_error("adjugate of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  if (n == 1) return Matrix<Rational>::identity(1);
  Matrix<Rational> adj(n, n);
  std::vector<std::size_t> all_rows, all_cols;
  for (std::size_t i = 0; i < n; ++i) all_rows.push_back(i);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rs, cs;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) rs.push_back(k);
        if (k != j) cs.push_back(k);
      }
      Rational cof = det_exact(a.submatrix(rs, cs));
      if ((i + j) % 2 == 1) cof = -cof;
      adj(j, i) = cof;
    }
  }
  return adj;
}

// Floating determinant via partially pivoted elimination.
inline double det_float(const Matrix<double>& a) {
  if (!a.square()) throw dimension_error("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1.0;
  Matrix<double> m = a;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(pivot, k))) pivot = i;
    if (m(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

inline Rational one_adj_one(const Matrix<Rational>& a) {
  const Matrix<Rational> adj = adjugate(a);
  Rational sum(0);
  for (std::size_t i = 0; i < adj.rows(); ++i)
    for (std::size_t j = 0; j < adj.cols(); ++j) sum += adj(i, j);
  return sum;
}

}  // namespace momentlab
