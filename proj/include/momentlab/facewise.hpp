#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/rational.hpp"

namespace momentlab {

// Sparse polynomial in a fixed number of variables, exponent vector per
// term. Facewise maps restrict these to non-negative coefficients, which
// certifies absolute monotonicity on the closed orthant.
class MultiPoly {
 public:
  MultiPoly() = default;

  MultiPoly(std::size_t nvars, std::vector<std::pair<std::vector<int>, Rational>> terms)
      : nvars_(nvars) {
    for (auto& [exps, coeff] : terms) {
      if (exps.size() != nvars_) throw validity_error("term arity mismatch");
      for (int e : exps)
        if (e < 0) throw validity_error("negative exponent");
      if (coeff == 0) continue;
      bool merged = false;
      for (auto& [have, c] : terms_) {
        if (have == exps) {
          c += coeff;
          merged = true;
          break;
        }
      }
      if (!merged) terms_.emplace_back(exps, coeff);
    }
    std::erase_if(terms_, [](const auto& t) { return t.second == 0; });
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  static MultiPoly constant(std::size_t nvars, const Rational& c) {
    return MultiPoly(nvars, {{std::vector<int>(nvars, 0), c}});
  }

  // Univariate coefficient list lifted to a one-variable MultiPoly.
  static MultiPoly univariate(const std::vector<Rational>& coeffs) {
    std::vector<std::pair<std::vector<int>, Rational>> terms;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      terms.push_back({{static_cast<int>(k)}, coeffs[k]});
    return MultiPoly(1, std::move(terms));
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<std::pair<std::vector<int>, Rational>>& terms() const { return terms_; }

  bool nonneg_coeffs() const {
    for (const auto& [exps, c] : terms_)
      if (c < 0) return false;
    return true;
  }

  Rational eval(const std::vector<Rational>& x) const {
    if (x.size() != nvars_) throw dimension_error("evaluation arity mismatch");
    Rational acc(0);
    for (const auto& [exps, c] : terms_) {
      Rational term = c;
      for (std::size_t l = 0; l < nvars_; ++l) term *= pow_rational(x[l], exps[l]);
      acc += term;
    }
    return acc;
  }

  bool operator==(const MultiPoly&) const = default;

 private:
  std::size_t nvars_ = 0;
  std::vector<std::pair<std::vector<int>, Rational>> terms_;
};

// Piecewise description of a function on [0, infinity)^m: one polynomial
// g_J with non-negative coefficients per face J of the orthant, evaluated
// on the positive coordinates of the face.
struct FacewiseMap {
  std::size_t m = 0;
  // key: strictly increasing 1-based index subset J
  std::map<std::vector<int>, MultiPoly> pieces;

  FacewiseMap(std::size_t arity, std::map<std::vector<int>, MultiPoly> g)
      : m(arity), pieces(std::move(g)) {
    std::size_t expected = std::size_t(1) << m;
    if (pieces.size() != expected)
      throw validity_error("facewise map needs one piece per subset of [m]");
    for (const auto& [j, poly] : pieces) {
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i] < 1 || j[i] > static_cast<int>(m) || (i > 0 && j[i] <= j[i - 1]))
          throw validity_error("facewise subset must be increasing within [m]");
      }
      if (poly.nvars() != j.size()) throw validity_error("piece arity mismatch");
      if (!poly.nonneg_coeffs())
        throw validity_error("facewise pieces need non-negative coefficients");
    }
  }

  const MultiPoly& piece(const std::vector<int>& j) const {
    auto it = pieces.find(j);
    if (it == pieces.end()) throw config_error("missing facewise piece");
    return it->second;
  }
};

namespace detail {

inline std::vector<std::vector<int>> all_subsets(std::size_t m) {
  std::vector<std::vector<int>> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
    std::vector<int> j;
    for (std::size_t l = 0; l < m; ++l)
      if (mask & (std::size_t(1) << l)) j.push_back(static_cast<int>(l) + 1);
    out.push_back(std::move(j));
  }
  return out;
}

inline bool subset_of(const std::vector<int>& k, const std::vector<int>& j) {
  return std::includes(j.begin(), j.end(), k.begin(), k.end());
}

}  // namespace detail

// Evaluates the map at a point of the closed orthant: pick out the face
// J = {l : x_l > 0} and evaluate its piece on the positive coordinates.
inline Rational facewise_eval(const FacewiseMap& f, const std::vector<Rational>& x) {
  if (x.size() != f.m) throw dimension_error("facewise evaluation arity mismatch");
  std::vector<int> j;
  std::vector<Rational> positive;
  for (std::size_t l = 0; l < f.m; ++l) {
    if (x[l] < 0) throw domain_error("facewise map evaluated off the closed orthant");
    if (x[l] > 0) {
      j.push_back(static_cast<int>(l) + 1);
      positive.push_back(x[l]);
    }
  }
  return f.piece(j).eval(positive);
}

// Closed extension of the piece g_J, evaluated at a point indexed by J
// (zeros allowed).
inline Rational facewise_closed_eval(const FacewiseMap& f, const std::vector<int>& j,
                                     const std::vector<Rational>& x_on_j) {
  return f.piece(j).eval(x_on_j);
}

// Checks 0 <= g~_K <= g~_J pointwise on the grid for every K subset of J.
// The closed extension of g_J to the K-face evaluates g_J with the J\K
// coordinates set to zero.
inline bool facewise_extension_check(const FacewiseMap& f,
                                     const std::vector<Rational>& grid) {
  if (grid.empty()) throw domain_error("empty grid");
  for (const auto& g : grid)
    if (g < 0) throw domain_error("grid off the closed orthant");

  const auto subsets = detail::all_subsets(f.m);
  for (const auto& j : subsets) {
    for (const auto& k : subsets) {
      if (k.size() >= j.size() || !detail::subset_of(k, j)) continue;
      // iterate over grid^|K|
      std::vector<std::size_t> idx(k.size(), 0);
      bool done = false;
      while (!done) {
        std::vector<Rational> xk(k.size());
        for (std::size_t t = 0; t < k.size(); ++t) xk[t] = grid[idx[t]];
        std::vector<Rational> xj(j.size(), Rational(0));
        for (std::size_t t = 0; t < k.size(); ++t) {
          const auto pos = std::lower_bound(j.begin(), j.end(), k[t]) - j.begin();
          xj[static_cast<std::size_t>(pos)] = xk[t];
        }
        const Rational lo = facewise_closed_eval(f, k, xk);
        const Rational hi = facewise_closed_eval(f, j, xj);
        if (lo < 0 || lo > hi) return false;
        done = true;
        for (std::size_t t = 0; t < idx.size(); ++t) {
          if (++idx[t] < grid.size()) {
            done = false;
            break;
          }
          idx[t] = 0;
        }
      }
    }
  }
  return true;
}

namespace detail {

// Hankel matrices of measures on [0,1] have zero entries only in the
// pure point-mass-at-0 pattern; enforce that shape on facewise input.
inline void validate_facewise_argument(const Matrix<Rational>& a) {
  if (!is_hankel(a)) throw structure_error("facewise arguments must be Hankel");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) < 0) throw domain_error("facewise arguments need entries >= 0");
  const bool zero_mass = a(0, 0) == 0;
  const bool zero_tail = a.rows() < 2 || a(1, 1) == 0;
  if (zero_mass || zero_tail) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if ((zero_mass || i || j) && a(i, j) != 0)
          throw validity_error("zero pattern incompatible with a [0,1] moment matrix");
  }
}

}  // namespace detail

// Entrywise application F(a_{1,ij}, ..., a_{m,ij}).
inline Matrix<Rational> facewise_apply(const FacewiseMap& f,
                                       const std::vector<Matrix<Rational>>& as) {
  if (as.size() != f.m) throw dimension_error("facewise arity mismatch");
  if (as.empty()) throw dimension_error("facewise application needs at least one matrix");
  const std::size_t n = as[0].rows();
  for (const auto& a : as) {
    if (a.rows() != n || a.cols() != n) throw dimension_error("facewise shape mismatch");
    detail::validate_facewise_argument(a);
  }
  Matrix<Rational> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> x(f.m);
      for (std::size_t l = 0; l < f.m; ++l) x[l] = as[l](i, j);
      out(i, j) = facewise_eval(f, x);
    }
  return out;
}

struct FacewiseDecomposition {
  Matrix<Rational> direct;
  std::vector<int> face_j;  // {l : a_{l,11} > 0}
  std::vector<int> face_k;  // {l : a_{l,22} > 0}
  Rational g_j_corner;      // g_J at the (1,1) entries over J
  Rational g_k_corner;      // g~_K at the same point
  Matrix<Rational> base_piece;  // g_K applied entrywise over K
  Matrix<Rational> reconstructed;
};

// Splits the application into the rank-one corner bump plus the K-face
// application: F[A_1..A_m] = (g_J - g_K) H_{delta_0} + g_K[A_l : l in K].
inline FacewiseDecomposition facewise_apply_decomposed(
    const FacewiseMap& f, const std::vector<Matrix<Rational>>& as) {
  FacewiseDecomposition out;
  out.direct = facewise_apply(f, as);
  const std::size_t n = out.direct.rows();
  if (n < 2) throw dimension_error("decomposition needs at least 2x2 matrices");

  std::vector<Rational> corner_over_j, corner_over_k;
  for (std::size_t l = 0; l < f.m; ++l) {
    if (as[l](0, 0) > 0) {
      out.face_j.push_back(static_cast<int>(l) + 1);
      corner_over_j.push_back(as[l](0, 0));
    }
    if (as[l](1, 1) > 0) out.face_k.push_back(static_cast<int>(l) + 1);
  }
  for (int l : out.face_k) corner_over_k.push_back(as[static_cast<std::size_t>(l) - 1](0, 0));

  out.g_j_corner = facewise_closed_eval(f, out.face_j, corner_over_j);
  out.g_k_corner = facewise_closed_eval(f, out.face_k, corner_over_k);

  out.base_piece = Matrix<Rational>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> x;
      for (int l : out.face_k) x.push_back(as[static_cast<std::size_t>(l) - 1](i, j));
      out.base_piece(i, j) = facewise_closed_eval(f, out.face_k, x);
    }

  out.reconstructed = out.base_piece;
  out.reconstructed(0, 0) += out.g_j_corner - out.g_k_corner;
  return out;
}

}  // namespace momentlab
