#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/jacobi.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/measure.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/psd.hpp"
#include "momentlab/rational.hpp"

namespace momentlab {

// ---------------------------------------------------------------------------
// Transform variants

struct Polynomial {
  std::vector<Rational> coeffs;  // index = degree

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  }
  double operator()(double x) const {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + to_double(coeffs[i]);
    return acc;
  }
  bool nonneg_coeffs() const {
    for (const auto& c : coeffs)
      if (c < 0) return false;
    return true;
  }
};

struct PowerMap {
  double alpha = 1.0;

  bool integral() const { return alpha == std::floor(alpha) && std::abs(alpha) < 1e9; }
};

// F(z) = sum_{j<N} c_j z^j + c' z^M
struct PolyPlusPower {
  std::vector<Rational> lower;
  Rational tail_coeff;
  std::size_t tail_degree = 0;
};

// F(x) = base(x) for x > 0, 0 at 0, -base(-x) for x < 0.
struct OddExtension {
  Polynomial base;
};

// F(x) = base(|x|) off the origin, a chosen value at 0.
struct EvenExtension {
  Polynomial base;
  Rational value_at_zero;
};

// Absolutely monotonic polynomial interior with prescribed values at the
// origin and at the endpoints of [-rho, rho].
struct JumpMap {
  Polynomial base;
  Rational value_at_zero;
  Rational value_at_plus;
  Rational value_at_minus;
  Rational rho;
};

struct Tabulated {
  std::vector<std::pair<Rational, Rational>> samples;
};

using Transform = std::variant<Polynomial, PowerMap, PolyPlusPower, OddExtension,
                               EvenExtension, JumpMap, Tabulated>;

// ---------------------------------------------------------------------------
// Scalar evaluation

// Exact evaluation. Throws domain_error where the variant has no exact
// value (non-integer powers) or the argument leaves its domain.
inline Rational eval(const Transform& t, const Rational& x) {
  struct Visitor {
    const Rational& x;

    Rational operator()(const Polynomial& p) const { return p(x); }
    Rational operator()(const PowerMap& p) const {
      if (!p.integral())
        throw domain_error("non-integer power has no exact evaluation");
      const long long a = static_cast<long long>(p.alpha);
      if (x == 0) {
        if (a > 0) return Rational(0);
        if (a == 0) return Rational(1);
        throw domain_error("zero to a negative power");
      }
      return pow_rational(x, a);
    }
    Rational operator()(const PolyPlusPower& p) const {
      Rational acc(0);
      for (std::size_t i = p.lower.size(); i-- > 0;) acc = acc * x + p.lower[i];
      return acc + p.tail_coeff * pow_rational(x, static_cast<long long>(p.tail_degree));
    }
    Rational operator()(const OddExtension& p) const {
      if (x > 0) return p.base(x);
      if (x == 0) return Rational(0);
      return -p.base(Rational(-x));
    }
    Rational operator()(const EvenExtension& p) const {
      if (x == 0) return p.value_at_zero;
      return p.base(x > 0 ? x : Rational(-x));
    }
    Rational operator()(const JumpMap& p) const {
      if (x > p.rho || x < -p.rho)
        throw domain_error("argument outside the closed interval of a jump transform");
      if (x == p.rho) return p.value_at_plus;
      if (x == -p.rho) return p.value_at_minus;
      if (x == 0) return p.value_at_zero;
      return p.base(x);
    }
    Rational operator()(const Tabulated& p) const {
      for (const auto& [key, value] : p.samples)
        if (key == x) return value;
      throw domain_error("argument missing from tabulated transform");
    }
  };
  return std::visit(Visitor{x}, t);
}

// Floating evaluation; powers of non-negative arguments are available for
// every real exponent, with 0^alpha = 0 for alpha > 0 and 0^0 = 1.
inline double eval_f(const Transform& t, double x) {
  struct Visitor {
    double x;

    double operator()(const Polynomial& p) const { return p(x); }
    double operator()(const PowerMap& p) const {
      if (x > 0.0) return std::pow(x, p.alpha);
      if (x == 0.0) {
        if (p.alpha > 0.0) return 0.0;
        if (p.alpha == 0.0) return 1.0;
        throw domain_error("zero to a negative power");
      }
      if (p.integral()) return std::pow(x, p.alpha);
      throw domain_error("non-integer power of a negative entry");
    }
    double operator()(const PolyPlusPower& p) const {
      double acc = 0.0;
      for (std::size_t i = p.lower.size(); i-- > 0;) acc = acc * x + to_double(p.lower[i]);
      return acc + to_double(p.tail_coeff) * std::pow(x, static_cast<double>(p.tail_degree));
    }
    double operator()(const OddExtension& p) const {
      if (x > 0.0) return p.base(x);
      if (x == 0.0) return 0.0;
      return -p.base(-x);
    }
    double operator()(const EvenExtension& p) const {
      if (x == 0.0) return to_double(p.value_at_zero);
      return p.base(std::abs(x));
    }
    double operator()(const JumpMap& p) const {
      const double rho = to_double(p.rho);
      if (x > rho || x < -rho)
        throw domain_error("argument outside the closed interval of a jump transform");
      if (x == rho) return to_double(p.value_at_plus);
      if (x == -rho) return to_double(p.value_at_minus);
      if (x == 0.0) return to_double(p.value_at_zero);
      return p.base(x);
    }
    double operator()(const Tabulated& p) const {
      for (const auto& [key, value] : p.samples)
        if (to_double(key) == x) return to_double(value);
      throw domain_error("argument missing from tabulated transform");
    }
  };
  return std::visit(Visitor{x}, t);
}

// True when exact evaluation is available everywhere on rational input.
inline bool exact_capable(const Transform& t) {
  if (const auto* p = std::get_if<PowerMap>(&t)) return p->integral();
  return true;
}

inline std::string describe(const Transform& t) {
  struct Visitor {
    std::string operator()(const Polynomial& p) const {
      std::ostringstream os;
      os << "poly[";
      for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        os << (i ? "," : "") << to_string(p.coeffs[i]);
      os << "]";
      return os.str();
    }
    std::string operator()(const PowerMap& p) const {
      return "power(" + format_double(p.alpha) + ")";
    }
    std::string operator()(const PolyPlusPower& p) const {
      std::ostringstream os;
      os << "poly_plus_power[";
      for (std::size_t i = 0; i < p.lower.size(); ++i)
        os << (i ? "," : "") << to_string(p.lower[i]);
      os << ";" << to_string(p.tail_coeff) << "z^" << p.tail_degree << "]";
      return os.str();
    }
    std::string operator()(const OddExtension& p) const {
      return "odd_ext(" + Visitor{}(p.base) + ")";
    }
    std::string operator()(const EvenExtension& p) const {
      return "even_ext(" + Visitor{}(p.base) + ";f0=" + to_string(p.value_at_zero) + ")";
    }
    std::string operator()(const JumpMap& p) const {
      return "jump(" + Visitor{}(p.base) + ";0:" + to_string(p.value_at_zero) +
             ";+:" + to_string(p.value_at_plus) + ";-:" + to_string(p.value_at_minus) +
             ";rho=" + to_string(p.rho) + ")";
    }
    std::string operator()(const Tabulated&) const { return "tabulated"; }
  };
  return std::visit(Visitor{}, t);
}

// ---------------------------------------------------------------------------
// Entrywise application

template <typename T>
Matrix<T> apply_entrywise(const Transform& t, const Matrix<T>& a) {
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      try {
        if constexpr (std::is_same_v<T, Rational>) {
          out(i, j) = eval(t, a(i, j));
        } else {
          out(i, j) = eval_f(t, a(i, j));
        }
      } catch (const domain_error& e) {
        throw domain_error("entry (" + std::to_string(i) + "," + std::to_string(j) +
                           "): " + e.what());
      }
    }
  return out;
}

template <typename T>
MomentSeq<T> apply_entrywise(const Transform& t, const MomentSeq<T>& s) {
  MomentSeq<T> out;
  out.values.reserve(s.values.size());
  for (std::size_t n = 0; n < s.values.size(); ++n) {
    try {
      if constexpr (std::is_same_v<T, Rational>) {
        out.values.push_back(eval(t, s.values[n]));
      } else {
        out.values.push_back(eval_f(t, s.values[n]));
      }
    } catch (const domain_error& e) {
      throw domain_error("moment s_" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Forward-difference monotonicity samplers. Necessary-condition tests on a
// finite grid: they can refute absolute/complete monotonicity, never prove it.

inline constexpr double kMonotoneTol = 1e-9;

namespace detail {

inline bool forward_difference_test(const std::function<double(double)>& f, double a,
                                    double b, int n_max, int grid, bool alternate) {
  if (!(a < b)) throw domain_error("empty interval");
  if (n_max < 1) throw domain_error("n_max must be at least 1");
  if (grid < 2) throw domain_error("grid too coarse");
  for (int n = 1; n <= n_max; ++n) {
    for (int gi = 0; gi < grid; ++gi) {
      const double x = a + (b - a) * (gi + 0.25) / grid;
      for (int hj = 1; hj <= 3; ++hj) {
        const double h = (b - x) / (n + 1) * hj / 3.0;
        if (!(h > 0.0) || !(x + n * h < b)) continue;
        double delta = 0.0;
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        for (int k = 0; k <= n; ++k) {
          delta += sign * to_double(binomial(n, k)) * f(x + k * h);
          sign = -sign;
        }
        if (alternate && n % 2 == 1) delta = -delta;
        if (delta < -kMonotoneTol) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// Samples Delta^n_h f(x) >= -1e-9 over the open interval (a, b).
inline bool abs_monotone_test(const std::function<double(double)>& f, double a, double b,
                              int n_max, int grid = 16) {
  return detail::forward_difference_test(f, a, b, n_max, grid, /*alternate=*/false);
}

// Samples (-1)^n Delta^n_h f(x) >= -1e-9.
inline bool completely_monotone_test(const std::function<double(double)>& f, double a,
                                     double b, int n_max, int grid = 16) {
  return detail::forward_difference_test(f, a, b, n_max, grid, /*alternate=*/true);
}

inline std::function<double(double)> as_function(const Transform& t) {
  return [t](double x) { return eval_f(t, x); };
}

// ---------------------------------------------------------------------------
// Polynomial-preserver threshold machinery

// C(c; z^M; N, rho) = sum_j binom(M,j)^2 binom(M-j-1, N-j-1)^2 rho^{M-j}/c_j.
// The largest admissible negative tail coefficient is -1/C.
inline Rational critical_value(const std::vector<Rational>& c, long long m,
                               const Rational& rho) {
  const long long n = static_cast<long long>(c.size());
  if (n == 0) throw domain_error("empty coefficient vector");
  for (const auto& cj : c)
    if (!(cj > 0)) throw domain_error("critical value needs strictly positive c_j");
  if (m < n) throw domain_error("tail degree must be at least the coefficient count");
  if (!(rho > 0)) throw domain_error("rho must be positive");
  Rational sum(0);
  for (long long j = 0; j < n; ++j) {
    const Rational b1 = binomial(m, j);
    const Rational b2 = binomial(m - j - 1, n - j - 1);
    sum += b1 * b1 * b2 * b2 * pow_rational(rho, m - j) / c[j];
  }
  return sum;
}

// Hook-shaped Schur polynomial at all-ones arguments:
// s_{mu(M,N,j)}(1,...,1) = binom(M,j) binom(M-j-1, N-j-1).
inline BigInt hook_schur_ones(long long m, long long n, long long j) {
  if (!(0 <= j && j <= n - 1 && n - 1 <= m - 1))
    throw domain_error("hook indices need 0 <= j <= N-1 <= M-1");
  return numerator(binomial(m, j) * binomial(m - j - 1, n - j - 1));
}

// u(eps) = (1-eps, (1-eps)^2, ..., (1-eps)^N)
inline std::vector<Rational> threshold_vector(const Rational& eps, std::size_t n) {
  std::vector<Rational> u(n);
  Rational p(1);
  for (std::size_t i = 0; i < n; ++i) {
    p *= Rational(1) - eps;
    u[i] = p;
  }
  return u;
}

enum class ThresholdKind { kInner, kOuter };

// The two rank-one Hankel sequences used to saturate the critical value:
// inner: b^n rho u(b) u(b)^T,  outer: rho u(b^n) u(b^n)^T.
inline Matrix<Rational> threshold_family(const Rational& b, std::size_t n, std::size_t dim,
                                         const Rational& rho, ThresholdKind kind) {
  if (!(b > 0 && b < 1)) throw domain_error("threshold family needs b in (0,1)");
  std::vector<Rational> u;
  Rational factor;
  if (kind == ThresholdKind::kInner) {
    u = threshold_vector(b, dim);
    factor = rho * pow_rational(b, static_cast<long long>(n));
  } else {
    u = threshold_vector(pow_rational(b, static_cast<long long>(n)), dim);
    factor = rho;
  }
  Matrix<Rational> m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = factor * u[i] * u[j];
  return m;
}

// ---------------------------------------------------------------------------
// Real powers of (1 + x_i x_j) matrices

inline Matrix<double> jain_matrix(const std::vector<double>& xs, double alpha) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0)) throw domain_error("jain matrix needs positive points");
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j]) throw domain_error("jain matrix needs pairwise distinct points");
  }
  Matrix<double> m(xs.size(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      m(i, j) = std::pow(1.0 + xs[i] * xs[j], alpha);
  return m;
}

inline double jain_min_eig(const std::vector<double>& xs, double alpha) {
  return min_eigenvalue(jain_matrix(xs, alpha));
}

inline bool jain_psd(const std::vector<double>& xs, double alpha,
                     double tol = kDefaultPsdTol) {
  return is_psd(jain_matrix(xs, alpha), tol);
}

// ---------------------------------------------------------------------------
// Odd extensions and their composite identity

// For measures on [-1,0] and F the odd extension of base, F[H_mu] equals
// the checkerboard matrix Hadamard-multiplied with base applied to the
// checkerboard-flipped H_mu. Point masses at the origin do not fit that
// factorization (base(0) need not vanish) and are checked directly against
// F[H_{a delta_0}] = H_{F(a) delta_0}.
inline bool odd_composite_identity(const Polynomial& base, const Measure<Rational>& mu,
                                   std::size_t n) {
  if (!mu.supported_in(Rational(-1), Rational(0)))
    throw domain_error("composite identity needs support in [-1,0]");
  const Transform odd = OddExtension{base};
  const auto h = hankel_from(moments_of(mu, 2 * n - 2), n);
  const auto lhs = apply_entrywise(odd, h);

  bool origin_only = true;
  for (const auto& atom : mu.atoms())
    if (atom.position != 0 && atom.weight != 0) origin_only = false;
  if (origin_only) {
    const Rational a = mu.total_mass();
    const Rational fa = a > 0 ? base(a) : Rational(0);
    const auto expected =
        hankel_from(moments_of(Measure<Rational>::point_mass(Rational(0), fa), 2 * n - 2), n);
    return lhs == expected;
  }

  Matrix<Rational> checker(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      checker(i, j) = ((i + j) % 2 == 0) ? Rational(1) : Rational(-1);
  const auto rhs = hadamard(checker, apply_entrywise(Transform{base}, hadamard(checker, h)));
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Boundary-jump obstructions

// H_a = (a 0 a; 0 a a; a a 2a): positive Hankel, moments of a measure
// concentrating at the ends of [0,1]; sends value_at_zero gaps to negative
// determinants as a -> 0+.
inline Matrix<Rational> h_a_matrix(const Rational& a) {
  return Matrix<Rational>::from_rows({{a, Rational(0), a},
                                      {Rational(0), a, a},
                                      {a, a, Rational(2) * a}});
}

// (rho rho a; rho rho rho; a rho rho): determinant -rho (rho - a)^2, the
// block-structure obstruction for entries equal to the endpoint.
inline Matrix<Rational> corner_obstruction(const Rational& rho, const Rational& a) {
  return Matrix<Rational>::from_rows({{rho, rho, a},
                                      {rho, rho, rho},
                                      {a, rho, rho}});
}

// Rank-one +/-rho checkerboard block of the given size.
inline Matrix<Rational> sign_block_matrix(const Rational& rho, std::size_t n) {
  Matrix<Rational> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = ((i + j) % 2 == 0) ? rho : Rational(-rho);
  return m;
}

struct JumpCheck {
  Matrix<Rational> image;
  bool psd = false;
};

// Whether the jump at -rho is bounded by the jump at rho:
// |F(-rho) - base(-rho)| <= F(rho) - base(rho).
inline bool jump_inequality_holds(const JumpMap& t) {
  const Rational plus_gap = t.value_at_plus - t.base(t.rho);
  const Rational minus_gap = t.value_at_minus - t.base(Rational(-t.rho));
  return abs_rational(minus_gap) <= plus_gap;
}

// Applies the jump-decorated transform entrywise and reports the exact PSD
// verdict of the image.
inline JumpCheck jump_apply_check(const JumpMap& t, const Matrix<Rational>& a) {
  if (!t.base.nonneg_coeffs())
    throw domain_error("jump transform needs an absolutely monotonic base");
  JumpCheck out;
  out.image = apply_entrywise(Transform{t}, a);
  out.psd = is_psd(out.image);
  return out;
}

// ---------------------------------------------------------------------------
// Two-atom interpolation

struct TwoAtomSolution {
  Rational a;
  Rational t;
  long long k = 0;
};

// Given x > y > 0, finds the smallest k >= 1 with u0^{k(N-1)} < y/x and
// solves x = a + t, y = a + t u0^{k(N-1)} with a, t > 0.
inline TwoAtomSolution two_atom_interpolate(const Rational& x, const Rational& y,
                                            const Rational& u0, std::size_t n) {
  if (!(x > y && y > 0)) throw domain_error("need x > y > 0");
  if (!(u0 > 0 && u0 < 1)) throw domain_error("need u0 in (0,1)");
  if (n < 2) throw domain_error("need N >= 2");
  const Rational step = pow_rational(u0, static_cast<long long>(n) - 1);
  Rational q = step;
  long long k = 1;
  while (!(q < y / x)) {
    q *= step;
    ++k;
  }
  TwoAtomSolution sol;
  sol.k = k;
  sol.a = (y - x * q) / (Rational(1) - q);
  sol.t = x - sol.a;
  return sol;
}

}  // namespace momentlab
