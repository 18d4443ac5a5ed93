#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/measure.hpp"
#include "momentlab/psd.hpp"
#include "momentlab/rational.hpp"

namespace momentlab {

// Truncated moment sequence s_0..s_k, optionally remembering the measure
// it was computed from.
template <typename T>
struct MomentSeq {
  std::vector<T> values;
  std::optional<Measure<T>> source;

  std::size_t order() const {
    if (values.empty()) throw truncation_error("empty moment sequence");
    return values.size() - 1;
  }
  const T& operator[](std::size_t n) const { return values.at(n); }
};

// values[n] = sum_i w_i x_i^n for 0 <= n <= k; exact in Rational mode.
template <typename T>
MomentSeq<T> moments_of(const Measure<T>& mu, std::size_t k) {
  MomentSeq<T> s;
  s.values.assign(k + 1, T(0));
  for (const auto& atom : mu.atoms()) {
    T p(1);
    for (std::size_t n = 0; n <= k; ++n) {
      s.values[n] += atom.weight * p;
      p *= atom.position;
    }
  }
  s.source = mu;
  return s;
}

// N x N matrix with entry(i,j) = s_{i+j}; needs at least 2N-1 values.
template <typename T>
Matrix<T> hankel_from(const MomentSeq<T>& s, std::size_t n) {
  if (n == 0) throw truncation_error("empty Hankel truncation");
  if (s.values.size() < 2 * n - 1)
    throw truncation_error("moment sequence too short for the requested Hankel size");
  Matrix<T> h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = s.values[i + j];
  return h;
}

template <typename T>
MomentSeq<T> shift(const MomentSeq<T>& s, std::size_t by) {
  if (by > s.order()) throw truncation_error("shift beyond truncation order");
  MomentSeq<T> out;
  out.values.assign(s.values.begin() + static_cast<std::ptrdiff_t>(by), s.values.end());
  return out;
}

// s_k -> (-1)^k s_k; the moment sequence of the reflected measure.
template <typename T>
MomentSeq<T> reflect(const MomentSeq<T>& s) {
  MomentSeq<T> out;
  out.values = s.values;
  for (std::size_t n = 1; n < out.values.size(); n += 2) out.values[n] = -out.values[n];
  return out;
}

enum class SupportSet {
  kRealLine,       // R
  kNonNegative,    // [0, infinity)
  kSymmetricUnit,  // [-1, 1]
  kUnitInterval,   // [0, 1]
};

enum class CheckMode { kExact, kFloat };

namespace detail {

// Hankel-type matrix with entry(i,j) = sum_m w_m * s_{i+j+m}, sized as
// large as the truncation permits.
template <typename T>
Matrix<T> localizing_matrix(const MomentSeq<T>& s, const std::vector<int>& w) {
  const std::size_t k = s.order();
  const std::size_t reach = w.size() - 1;
  if (k < reach) throw truncation_error("moment sequence too short for localizer");
  const std::size_t n = (k - reach) / 2 + 1;
  Matrix<T> m(n, n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t t = 0; t < w.size(); ++t)
        m(i, j) += T(w[t]) * s.values[i + j + t];
  return m;
}

template <typename T>
bool psd_block(const Matrix<T>& m, CheckMode mode, double tol) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (mode == CheckMode::kExact) return is_psd(m);
    return is_psd(to_float(m), tol);
  } else {
    return is_psd(m, tol);
  }
}

}  // namespace detail

namespace detail {

// Localizer weights per support set, with a printable block name each.
inline std::vector<std::pair<std::string, std::vector<int>>> support_blocks(SupportSet set) {
  std::vector<std::pair<std::string, std::vector<int>>> blocks = {{"base", {1}}};
  switch (set) {
    case SupportSet::kRealLine:
      break;
    case SupportSet::kNonNegative:
      blocks.push_back({"t", {0, 1}});
      break;
    case SupportSet::kSymmetricUnit:
      blocks.push_back({"1-t^2", {1, 0, -1}});
      break;
    case SupportSet::kUnitInterval:
      blocks.push_back({"t", {0, 1}});
      blocks.push_back({"1-t", {1, -1}});
      blocks.push_back({"1-t^2", {1, 0, -1}});
      break;
  }
  return blocks;
}

}  // namespace detail

// A localizing block whose PSD test failed, with the negative principal
// minor as certificate.
struct SupportViolation {
  std::string block;
  std::vector<std::size_t> indices;
  Rational minor;
};

// Exact-mode certificate search over the necessary truncated blocks.
inline std::optional<SupportViolation> support_violation_exact(const MomentSeq<Rational>& s,
                                                               SupportSet set) {
  if (s.order() < 2)
    throw truncation_error("need at least s_0..s_2 for a support check");
  for (const auto& [name, weights] : detail::support_blocks(set)) {
    const auto block = detail::localizing_matrix(s, weights);
    if (auto bad = psd_violation(block))
      return SupportViolation{name, bad->indices, bad->value};
  }
  return std::nullopt;
}

// Necessary truncated positivity conditions for a moment sequence of a
// measure supported on the given set. This is a necessity test only: a
// `true` means the sequence passes the truncated criteria, not that a
// representing measure exists (tight truncated characterizations involve
// an extremal final moment, which is out of scope here).
template <typename T>
bool passes_truncated_criteria(const MomentSeq<T>& s, SupportSet set,
                               CheckMode mode = CheckMode::kExact,
                               double tol = kDefaultPsdTol) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (mode == CheckMode::kExact) return !support_violation_exact(s, set).has_value();
  }
  if (s.order() < 2)
    throw truncation_error("need at least s_0..s_2 for a support check");
  for (const auto& [name, weights] : detail::support_blocks(set)) {
    if (!detail::psd_block(detail::localizing_matrix(s, weights), mode, tol)) return false;
  }
  return true;
}

template <typename T>
T pow_entry(const T& x, std::size_t e) {
  T acc(1);
  for (std::size_t i = 0; i < e; ++i) acc *= x;
  return acc;
}

// True iff u u^T is a Hankel matrix: the entries of u form a geometric
// progression, or every entry but the last is zero. The geometric case is
// checked in cross-multiplied form, u_j * u_0^j == u_1^j * u_0, so no
// division happens.
template <typename T>
bool is_rank_one_hankel(const std::vector<T>& u) {
  if (u.empty()) throw validity_error("empty vector");
  const std::size_t n = u.size();
  if (n <= 2) return true;
  if (u[0] == T(0)) {
    for (std::size_t j = 1; j + 1 < n; ++j)
      if (u[j] != T(0)) return false;
    return true;
  }
  for (std::size_t j = 2; j < n; ++j)
    if (u[j] * pow_entry(u[0], j) != pow_entry(u[1], j) * u[0]) return false;
  return true;
}

// Strict checkerboard sign pattern: (-1)^{i+j} a_ij > 0 for every entry.
template <typename T>
bool is_checkerboard(const Matrix<T>& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T& v = a(i, j);
      if ((i + j) % 2 == 0 ? !(v > T(0)) : !(v < T(0))) return false;
    }
  return true;
}

}  // namespace momentlab
