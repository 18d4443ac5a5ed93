#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/measure.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/psd.hpp"
#include "momentlab/rational.hpp"

namespace momentlab {

// Moments s_alpha of a measure on R^d, complete for every multi-index with
// |alpha|_inf <= 2*level + 2. `level` is the kernel truncation the family
// was built for; the extra orders feed the localized kernels.
struct MultiMomentFamily {
  std::size_t dim = 0;
  std::size_t level = 0;
  bool support_in_unit_box = true;
  std::map<std::vector<int>, Rational> values;

  std::size_t order() const { return 2 * level + 2; }

  const Rational& at(const std::vector<int>& alpha) const {
    auto it = values.find(alpha);
    if (it == values.end()) throw index_error("multi-index outside the stored family");
    return it->second;
  }
};

namespace detail {

inline void enumerate_box(std::size_t dim, int cap,
                          std::vector<int>& current,
                          std::vector<std::vector<int>>& out) {
  if (current.size() == dim) {
    out.push_back(current);
    return;
  }
  for (int v = 0; v <= cap; ++v) {
    current.push_back(v);
    enumerate_box(dim, cap, current, out);
    current.pop_back();
  }
}

// All alpha in N_0^d with |alpha|_inf <= cap, in lexicographic order.
inline std::vector<std::vector<int>> multi_indices(std::size_t dim, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  enumerate_box(dim, cap, current, out);
  return out;
}

}  // namespace detail

// Builds s_alpha = sum_i w_i x_i^alpha for |alpha|_inf <= 2*level + 2.
// Atoms outside [-1,1]^d only clear the support flag; the construction and
// later checks still run.
inline MultiMomentFamily multi_moments_of(const MultiMeasure<Rational>& mu,
                                          std::size_t level) {
  MultiMomentFamily fam;
  fam.dim = mu.dim();
  fam.level = level;
  fam.support_in_unit_box = mu.supported_in_unit_box();
  for (const auto& alpha : detail::multi_indices(mu.dim(), static_cast<int>(fam.order()))) {
    Rational s(0);
    for (const auto& atom : mu.atoms()) {
      Rational term = atom.weight;
      for (std::size_t l = 0; l < mu.dim(); ++l)
        term *= pow_rational(atom.position[l], alpha[l]);
      s += term;
    }
    fam.values.emplace(alpha, s);
  }
  return fam;
}

// Truncated positivity criteria for support in [-1,1]^d: the base kernel
// (s_{alpha+beta}) and, for each coordinate j, the localized kernel
// (s_{alpha+beta} - s_{alpha+beta+2e_j}), indexed by |alpha|_inf <= level,
// must all be PSD. Exact when the kernel fits the exact-PSD cap, floating
// with the given tolerance otherwise.
inline bool check_multi_psd(const MultiMomentFamily& fam,
                            double tol = kDefaultPsdTol) {
  const auto idx = detail::multi_indices(fam.dim, static_cast<int>(fam.level));
  const std::size_t n = idx.size();

  auto kernel = [&](int extra_coord) {
    Matrix<Rational> k(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<int> sum(fam.dim);
        for (std::size_t l = 0; l < fam.dim; ++l) sum[l] = idx[a][l] + idx[b][l];
        Rational v = fam.at(sum);
        if (extra_coord >= 0) {
          sum[extra_coord] += 2;
          v -= fam.at(sum);
        }
        k(a, b) = v;
      }
    return k;
  };

  auto psd = [&](const Matrix<Rational>& k) {
    if (k.rows() <= kExactPsdMaxDim) return is_psd(k);
    return is_psd(to_float(k), tol);
  };

  if (!psd(kernel(-1))) return false;
  for (std::size_t j = 0; j < fam.dim; ++j)
    if (!psd(kernel(static_cast<int>(j)))) return false;
  return true;
}

}  // namespace momentlab
