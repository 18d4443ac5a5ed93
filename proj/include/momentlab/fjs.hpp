#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/linalg.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/rational.hpp"
#include "momentlab/unipoly.hpp"

namespace momentlab {

// The 4x4 totally non-negative matrix of Fallat--Johnson--Sokal. It would
// be Hankel but for the (3,2) entry (284 against the (2,3) entry 276), and
// it has rank 3.
inline Matrix<Rational> fjs_matrix() {
  return Matrix<Rational>::from_rows({{3, 6, 14, 36},
                                      {6, 14, 36, 98},
                                      {14, 36, 98, 276},
                                      {36, 98, 284, 842}});
}

// A(x) = 1 + x*M, totally non-negative for every x >= 0.
inline Matrix<Rational> fjs_family(const Rational& x) {
  if (x < 0) throw domain_error("fjs_family requires x >= 0");
  return Matrix<Rational>::ones(4, 4) + scale(x, fjs_matrix());
}

// Exact determinant table behind the quartic coefficient: one entry per
// permutation (i1,i2,i3,i4) of (2,1,1,0), valued at
// det(m1^{.i1} | m2^{.i2} | m3^{.i3} | m4^{.i4}) where m_l are the columns
// of the FJS matrix and ^{.0} is the all-ones column.
inline std::map<std::array<int, 4>, Rational> quartic_term_table() {
  const Matrix<Rational> m = fjs_matrix();
  std::array<int, 4> exps = {0, 1, 1, 2};
  std::sort(exps.begin(), exps.end());
  std::map<std::array<int, 4>, Rational> table;
  do {
    Matrix<Rational> cols(4, 4);
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t i = 0; i < 4; ++i)
        cols(i, j) = pow_rational(m(i, j), exps[j]);
    table.emplace(exps, det_exact(cols));
  } while (std::next_permutation(exps.begin(), exps.end()));
  return table;
}

struct QuarticIdentity {
  Rational computed;
  Rational predicted;
};

// Coefficient of x^4 in det(sum_j alpha_j x^j M^{.j}) against the closed
// form -57168 * alpha_0 * alpha_1^2 * alpha_2.
inline QuarticIdentity quartic_coeff_identity(const std::array<Rational, 5>& alpha) {
  const Matrix<Rational> m = fjs_matrix();
  Matrix<UniPoly> p(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      std::vector<Rational> coeffs(5);
      for (std::size_t k = 0; k < 5; ++k)
        coeffs[k] = alpha[k] * pow_rational(m(i, j), static_cast<long long>(k));
      p(i, j) = UniPoly(std::move(coeffs));
    }
  const UniPoly det = det_series(p, 4);
  QuarticIdentity out;
  out.computed = det.coeff(4);
  out.predicted = Rational(-57168) * alpha[0] * alpha[1] * alpha[1] * alpha[2];
  return out;
}

// Scans the grid in increasing order for det((1 + x*M)^{.alpha}) < -1e-12.
// Returns the smallest such grid point, if any.
inline std::optional<double> find_negative_power_det(double alpha,
                                                     const std::vector<double>& x_grid) {
  if (!(alpha >= 1.0)) throw domain_error("power-determinant scan requires alpha >= 1");
  std::vector<double> grid = x_grid;
  std::sort(grid.begin(), grid.end());
  const Matrix<double> m = to_float(fjs_matrix());
  for (double x : grid) {
    if (!(x > 0.0)) throw domain_error("power-determinant scan requires positive grid");
    Matrix<double> a(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = 1.0 + x * m(i, j);
    if (det_float(hadamard_pow(a, alpha)) < -1e-12) return x;
  }
  return std::nullopt;
}

inline std::vector<double> default_delta_grid() {
  std::vector<double> g;
  double x = 0.1;
  for (int k = 1; k <= 8; ++k, x /= 10.0) g.push_back(x);
  return g;
}

}  // namespace momentlab
