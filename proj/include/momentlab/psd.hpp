#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/jacobi.hpp"
#include "momentlab/linalg.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/rational.hpp"

namespace momentlab {

inline constexpr std::size_t kExactPsdMaxDim = 10;
inline constexpr double kDefaultPsdTol = 1e-10;

// A principal minor that came out negative; witnesses a PSD failure.
struct PsdViolation {
  std::vector<std::size_t> indices;
  Rational value;
};

// Scans all 2^N - 1 principal minors in subset order; returns the first
// negative one, or nothing if the matrix is PSD. Exact.
inline std::optional<PsdViolation> psd_violation(const Matrix<Rational>& a) {
  if (!a.square()) throw dimension_error("PSD test on a non-square matrix");
  if (!is_symmetric(a)) throw structure_error("PSD test on an asymmetric matrix");
  const std::size_t n = a.rows();
  if (n > kExactPsdMaxDim)
    throw size_error("exact PSD test capped at dimension 10");
  for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) idx.push_back(i);
    const Rational d = det_exact(a.submatrix(idx, idx));
    if (d < 0) return PsdViolation{idx, d};
  }
  return std::nullopt;
}

// Exact PSD test: every principal minor must be non-negative.
inline bool is_psd(const Matrix<Rational>& a) { return !psd_violation(a).has_value(); }

// Float PSD test: minimum eigenvalue of the symmetrized matrix, with a
// tolerance scaled by max(1, ||A||_inf).
inline bool is_psd(const Matrix<double>& a, double tol = kDefaultPsdTol) {
  if (!a.square()) throw dimension_error("PSD test on a non-square matrix");
  const double scale = std::max(1.0, inf_norm(a));
  if (!is_symmetric_within(a, tol * scale))
    throw structure_error("PSD test on a matrix asymmetric beyond tolerance");
  return min_eigenvalue(a) >= -tol * scale;
}

}  // namespace momentlab
