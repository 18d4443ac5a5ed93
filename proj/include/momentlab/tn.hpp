#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/linalg.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/psd.hpp"
#include "momentlab/rational.hpp"

namespace momentlab {

inline constexpr std::size_t kBruteForceTnMaxDim = 8;

struct TNWitness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  Rational minor;
};

struct TNReport {
  bool verdict = true;
  std::optional<TNWitness> witness;
  std::size_t minors_checked = 0;
};

namespace detail {

// k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  if (k > n) return out;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i-- > 0) {
      if (cur[i] + (k - i) < n) {
        ++cur[i];
        for (std::size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

}  // namespace detail

// Enumerates every square minor of every order. The first negative minor
// found (smallest order, lexicographic index sets) becomes the witness.
inline TNReport is_tn_bruteforce(const Matrix<Rational>& a) {
  if (a.rows() > kBruteForceTnMaxDim || a.cols() > kBruteForceTnMaxDim)
    throw size_error("brute-force TN test capped at 8x8");
  TNReport report;
  const std::size_t kmax = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    const auto row_sets = detail::subsets(a.rows(), k);
    const auto col_sets = detail::subsets(a.cols(), k);
    for (const auto& rs : row_sets) {
      for (const auto& cs : col_sets) {
        const Rational d = det_exact(a.submatrix(rs, cs));
        ++report.minors_checked;
        if (d < 0) {
          report.verdict = false;
          report.witness = TNWitness{rs, cs, d};
          return report;
        }
      }
    }
  }
  return report;
}

// Square truncation used by the Hankel TN criterion: delete the first
// column and last row, then pad with a zero row and column.
inline Matrix<Rational> hankel_shift_completion(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  Matrix<Rational> b(n, n, Rational(0));
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) b(i, j) = a(i, j + 1);
  return b;
}

// TN criterion for Hankel matrices: A is totally non-negative iff A and
// its zero-padded shift completion both have all principal minors
// non-negative, i.e. both are PSD.
inline bool is_tn_hankel(const Matrix<Rational>& a) {
  if (!is_hankel(a)) throw structure_error("Hankel TN criterion on a non-Hankel matrix");
  return is_psd(a) && is_psd(hankel_shift_completion(a));
}

// Oracle equivalence: both TN routes must agree on Hankel input.
inline bool tn_equiv_check(const Matrix<Rational>& a) {
  if (a.rows() > 6) throw size_error("TN equivalence check capped at 6x6");
  const bool brute = is_tn_bruteforce(a).verdict;
  const bool hankel = is_tn_hankel(a);
  if (brute != hankel)
    throw invariant_error("brute-force and Hankel TN criteria disagree");
  return brute;
}

// For a matrix with positive entries, non-negativity of the contiguous
// 2x2 minors certifies non-negativity of all 2x2 minors.
inline bool contiguous_2x2_nonneg(const Matrix<Rational>& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(a(i, j) > 0))
        throw domain_error("contiguous 2x2 certificate requires positive entries");
  for (std::size_t i = 0; i + 1 < a.rows(); ++i)
    for (std::size_t j = 0; j + 1 < a.cols(); ++j)
      if (a(i, j) * a(i + 1, j + 1) < a(i, j + 1) * a(i + 1, j)) return false;
  return true;
}

}  // namespace momentlab
