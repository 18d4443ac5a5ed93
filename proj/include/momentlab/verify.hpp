#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/linalg.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/measure.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/psd.hpp"
#include "momentlab/rng.hpp"
#include "momentlab/transforms.hpp"

namespace momentlab {

// ---------------------------------------------------------------------------
// Instance families

struct FamilyParams {
  std::size_t n = 4;                    // matrix dimension for matrix families
  Rational u0 = make_rational(1, 2);    // fixed interior point
  Rational rho = Rational(1);           // mass / entry bound
  Rational a = make_rational(1, 4);     // leading value for H_a instances
  int max_atoms = 4;
};

struct Instance {
  std::string label;
  std::variant<Measure<Rational>, Matrix<Rational>> payload;

  bool is_measure() const { return payload.index() == 0; }
  const Measure<Rational>& measure() const { return std::get<0>(payload); }
  const Matrix<Rational>& matrix() const { return std::get<1>(payload); }
};

// What run_preserver asserts about the transformed instance.
enum class PreserveTarget {
  kPsdOnly,        // image matrix stays PSD
  kUnitInterval,   // image sequence passes the [0,1] criteria
  kSymmetricUnit,  // ... the [-1,1] criteria
  kNonPositive,    // reflected image passes the [0,inf) criteria
};

namespace detail {

inline std::string measure_label(const Measure<Rational>& mu) {
  std::ostringstream os;
  os << "measure{";
  for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
    if (i) os << ", ";
    os << to_string(mu.atoms()[i].weight) << "@" << to_string(mu.atoms()[i].position);
  }
  os << "}";
  return os.str();
}

inline std::string matrix_label(const Matrix<Rational>& m, const std::string& tag) {
  std::ostringstream os;
  os << tag << "(" << m.rows() << "x" << m.cols() << ")[";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << ((i || j) ? "," : "") << to_string(m(i, j));
  os << "]";
  return os.str();
}

inline Measure<Rational> random_measure_in(Rng& rng, const Rational& lo, const Rational& hi,
                                           int max_atoms) {
  const int count = static_cast<int>(rng.next_int(1, max_atoms));
  std::vector<Atom<Rational>> atoms;
  for (int i = 0; i < count; ++i) {
    const Rational t = rng.next_unit_rational();
    atoms.push_back({lo + t * (hi - lo), rng.next_unit_rational()});
  }
  return Measure<Rational>(std::move(atoms));
}

}  // namespace detail

struct FamilySpec {
  PreserveTarget target = PreserveTarget::kPsdOnly;
  // generators emit `count` instances deterministically from the seed
  std::vector<Instance> (*generate)(const FamilyParams&, std::uint64_t, std::size_t) = nullptr;
  void (*validate)(const FamilyParams&, const Instance&) = nullptr;
};

namespace families {

inline std::vector<Instance> measures_on_01(const FamilyParams& p, std::uint64_t seed,
                                            std::size_t count) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto mu = detail::random_measure_in(rng, Rational(0), Rational(1), p.max_atoms);
    out.push_back({detail::measure_label(mu), std::move(mu)});
  }
  return out;
}

inline std::vector<Instance> measures_on_m11(const FamilyParams& p, std::uint64_t seed,
                                             std::size_t count) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto mu = detail::random_measure_in(rng, Rational(-1), Rational(1), p.max_atoms);
    out.push_back({detail::measure_label(mu), std::move(mu)});
  }
  return out;
}

inline std::vector<Instance> measures_on_m10(const FamilyParams& p, std::uint64_t seed,
                                             std::size_t count) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto mu = detail::random_measure_in(rng, Rational(-1), Rational(0), p.max_atoms);
    out.push_back({detail::measure_label(mu), std::move(mu)});
  }
  return out;
}

// a 1_{NxN} + b u u^T with u = (1, u0, ..., u0^{N-1}), 0 < a+b < rho.
inline std::vector<Instance> two_point_1_u0(const FamilyParams& p, std::uint64_t seed,
                                            std::size_t count) {
  Rng rng(seed);
  std::vector<Instance> out;
  std::vector<Rational> u(p.n);
  Rational pw(1);
  for (std::size_t i = 0; i < p.n; ++i) {
    u[i] = pw;
    pw *= p.u0;
  }
  for (std::size_t c = 0; c < count; ++c) {
    const Rational a = rng.next_unit_rational() * p.rho * make_rational(1, 2);
    const Rational b = rng.next_unit_rational() * (p.rho - a) * make_rational(63, 64);
    Matrix<Rational> m(p.n, p.n);
    for (std::size_t i = 0; i < p.n; ++i)
      for (std::size_t j = 0; j < p.n; ++j) m(i, j) = a + b * u[i] * u[j];
    out.push_back({detail::matrix_label(m, "two_point"), std::move(m)});
  }
  return out;
}

inline std::vector<Instance> two_point_0_1(const FamilyParams& p, std::uint64_t seed,
                                           std::size_t count) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t c = 0; c < count; ++c) {
    const Rational a = rng.next_unit_rational() * p.rho * make_rational(1, 2);
    const Rational b = rng.next_unit_rational() * (p.rho - a) * make_rational(63, 64);
    Measure<Rational> mu({{Rational(0), a}, {Rational(1), b}});
    out.push_back({detail::measure_label(mu), std::move(mu)});
  }
  return out;
}

// a delta_{-1} + b delta_u + c delta_1 with a, b, c > 0 and random u.
inline std::vector<Instance> three_point(const FamilyParams& p, std::uint64_t seed,
                                         std::size_t count) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t c = 0; c < count; ++c) {
    const Rational third = p.rho * make_rational(1, 3);
    const Rational wa = rng.next_unit_rational() * third;
    const Rational wb = rng.next_unit_rational() * third;
    const Rational wc = rng.next_unit_rational() * third;
    Rational u = rng.next_unit_rational();
    if (u == 1) u = make_rational(1, 2);
    Measure<Rational> mu({{Rational(-1), wa}, {u, wb}, {Rational(1), wc}});
    out.push_back({detail::measure_label(mu), std::move(mu)});
  }
  return out;
}

inline std::vector<Instance> two_point_m1_mu0(const FamilyParams& p, std::uint64_t seed,
                                              std::size_t count) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t c = 0; c < count; ++c) {
    const Rational a = rng.next_unit_rational() * p.rho * make_rational(1, 2);
    const Rational b = rng.next_unit_rational() * p.rho * make_rational(1, 2);
    Measure<Rational> mu({{Rational(-1), a}, {Rational(-p.u0), b}});
    out.push_back({detail::measure_label(mu), std::move(mu)});
  }
  return out;
}

// H_a for a = params.a / (i+1): boundary matrices with zero off-corner.
inline std::vector<Instance> h_a_boundary(const FamilyParams& p, std::uint64_t,
                                          std::size_t count) {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Rational a = p.a / Rational(static_cast<long long>(i) + 1);
    Matrix<Rational> m = Matrix<Rational>::from_rows(
        {{a, Rational(0), a}, {Rational(0), a, a}, {a, a, Rational(2) * a}});
    out.push_back({detail::matrix_label(m, "H_a"), std::move(m)});
  }
  return out;
}

// a delta_1 + b delta_{u0} with positive masses summing below rho.
inline std::vector<Instance> bounded_mass_1_u0(const FamilyParams& p, std::uint64_t seed,
                                               std::size_t count) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t c = 0; c < count; ++c) {
    const Rational a = rng.next_unit_rational() * p.rho * make_rational(1, 2);
    const Rational b = rng.next_unit_rational() * (p.rho - a) * make_rational(63, 64);
    Measure<Rational> mu({{Rational(1), a}, {p.u0, b}});
    out.push_back({detail::measure_label(mu), std::move(mu)});
  }
  return out;
}

inline void expect(bool ok, const std::string& what) {
  if (!ok) throw invariant_error("family emitted an invalid instance: " + what);
}

inline void validate_measure_support(const FamilyParams&, const Instance& inst,
                                     const Rational& lo, const Rational& hi) {
  expect(inst.is_measure(), "expected a measure");
  const auto& mu = inst.measure();
  expect(!mu.atoms().empty(), "empty measure");
  expect(mu.supported_in(lo, hi), "support violation");
  for (const auto& atom : mu.atoms()) expect(atom.weight >= 0, "negative weight");
}

}  // namespace families

inline const std::map<std::string, FamilySpec>& family_registry() {
  static const std::map<std::string, FamilySpec> registry = {
      {"measures_on_[0,1]",
       {PreserveTarget::kUnitInterval, families::measures_on_01,
        [](const FamilyParams& p, const Instance& i) {
          families::validate_measure_support(p, i, Rational(0), Rational(1));
        }}},
      {"measures_on_[-1,1]",
       {PreserveTarget::kSymmetricUnit, families::measures_on_m11,
        [](const FamilyParams& p, const Instance& i) {
          families::validate_measure_support(p, i, Rational(-1), Rational(1));
        }}},
      {"measures_on_[-1,0]",
       {PreserveTarget::kNonPositive, families::measures_on_m10,
        [](const FamilyParams& p, const Instance& i) {
          families::validate_measure_support(p, i, Rational(-1), Rational(0));
        }}},
      {"two_point_{1,u0}",
       {PreserveTarget::kPsdOnly, families::two_point_1_u0,
        [](const FamilyParams& p, const Instance& i) {
          families::expect(!i.is_measure(), "expected a matrix");
          families::expect(is_hankel(i.matrix()), "not Hankel");
          families::expect(is_psd(i.matrix()), "not PSD");
          for (std::size_t r = 0; r < i.matrix().rows(); ++r)
            for (std::size_t c = 0; c < i.matrix().cols(); ++c)
              families::expect(i.matrix()(r, c) >= 0 && i.matrix()(r, c) < p.rho,
                               "entry outside [0,rho)");
        }}},
      {"two_point_{0,1}",
       {PreserveTarget::kUnitInterval, families::two_point_0_1,
        [](const FamilyParams& p, const Instance& i) {
          families::validate_measure_support(p, i, Rational(0), Rational(1));
          families::expect(i.measure().total_mass() < p.rho, "mass bound");
        }}},
      {"three_point",
       {PreserveTarget::kSymmetricUnit, families::three_point,
        [](const FamilyParams& p, const Instance& i) {
          families::validate_measure_support(p, i, Rational(-1), Rational(1));
          families::expect(i.measure().total_mass() < p.rho, "mass bound");
        }}},
      {"two_point_{-1,-u0}",
       {PreserveTarget::kNonPositive, families::two_point_m1_mu0,
        [](const FamilyParams& p, const Instance& i) {
          families::validate_measure_support(p, i, Rational(-1), Rational(0));
        }}},
      {"H_a_boundary",
       {PreserveTarget::kPsdOnly, families::h_a_boundary,
        [](const FamilyParams&, const Instance& i) {
          families::expect(!i.is_measure(), "expected a matrix");
          families::expect(is_hankel(i.matrix()), "not Hankel");
          families::expect(is_psd(i.matrix()), "not PSD");
        }}},
      {"bounded_mass_{1,u0}",
       {PreserveTarget::kUnitInterval, families::bounded_mass_1_u0,
        [](const FamilyParams& p, const Instance& i) {
          families::validate_measure_support(p, i, Rational(0), Rational(1));
          families::expect(i.measure().total_mass() < p.rho, "mass bound");
        }}},
  };
  return registry;
}

// Deterministic instance list; every instance is validity-checked on emission.
inline std::vector<Instance> gen_family(const std::string& name, const FamilyParams& params,
                                        std::uint64_t seed, std::size_t count) {
  const auto it = family_registry().find(name);
  if (it == family_registry().end()) throw config_error("unknown family: " + name);
  auto instances = it->second.generate(params, seed, count);
  for (const auto& inst : instances) it->second.validate(params, inst);
  return instances;
}

// ---------------------------------------------------------------------------
// Preserver runs

struct FailureRecord {
  std::size_t index = 0;
  std::string instance;
  std::string cause;  // "domain" or "psd"
  std::string block;  // which localizing block failed ("" for plain PSD)
  std::vector<std::size_t> indices;
  std::optional<Rational> minor;      // exact certificate
  std::optional<double> eigenvalue;   // float certificate
  std::string detail;
};

struct PreserverReport {
  std::string transform;
  std::string family;
  std::size_t truncation = 0;
  std::size_t count = 0;
  std::string mode;
  std::uint64_t seed = 0;
  std::size_t instances_run = 0;
  std::vector<FailureRecord> failures;
  bool verdict = true;
};

// Everything needed to re-examine or shrink a run.
struct PreserverRun {
  PreserverReport report;
  Transform transform;
  std::string family;
  FamilyParams params;
  PreserveTarget target = PreserveTarget::kPsdOnly;
  CheckMode mode = CheckMode::kExact;
  std::size_t truncation = 0;
  std::vector<Instance> instances;
};

namespace detail {

// Applies the transform and checks the target, returning a failure record
// (without index/instance fields) when the instance is a counterexample.
inline std::optional<FailureRecord> check_instance(const Transform& t, const Instance& inst,
                                                   PreserveTarget target, CheckMode mode,
                                                   std::size_t truncation, double tol) {
  FailureRecord fail;
  try {
    if (inst.is_measure() && target != PreserveTarget::kPsdOnly) {
      const auto s = moments_of(inst.measure(), 2 * truncation - 2);
      const SupportSet set = target == PreserveTarget::kUnitInterval
                                 ? SupportSet::kUnitInterval
                                 : (target == PreserveTarget::kSymmetricUnit
                                        ? SupportSet::kSymmetricUnit
                                        : SupportSet::kNonNegative);
      if (mode == CheckMode::kExact) {
        auto image = apply_entrywise(t, s);
        if (target == PreserveTarget::kNonPositive) image = reflect(image);
        if (auto bad = support_violation_exact(image, set)) {
          // re-verify the certificate on a fresh localizer
          const auto block_matrix =
              localizing_matrix(image, [&] {
                for (const auto& [name, w] : support_blocks(set))
                  if (name == bad->block) return w;
                throw invariant_error("certificate names an unknown block");
              }());
          if (minor_det(block_matrix, bad->indices, bad->indices) != bad->minor ||
              !(bad->minor < 0))
            throw invariant_error("certificate failed re-verification");
          fail.cause = "psd";
          fail.block = bad->block;
          fail.indices = bad->indices;
          fail.minor = bad->minor;
          return fail;
        }
        return std::nullopt;
      }
      // float mode
      MomentSeq<double> sf;
      for (const auto& v : s.values) sf.values.push_back(to_double(v));
      auto image = apply_entrywise(t, sf);
      if (target == PreserveTarget::kNonPositive) image = reflect(image);
      for (const auto& [name, w] : support_blocks(set)) {
        const auto block = localizing_matrix(image, w);
        const double scale = std::max(1.0, inf_norm(block));
        const double lambda = min_eigenvalue(block);
        if (lambda < -tol * scale) {
          if (min_eigenvalue(block) >= -tol * scale)
            throw invariant_error("certificate failed re-verification");
          fail.cause = "psd";
          fail.block = name;
          fail.eigenvalue = lambda;
          return fail;
        }
      }
      return std::nullopt;
    }

    // matrix path (and measures under a plain PSD target)
    Matrix<Rational> m = inst.is_measure()
                             ? hankel_from(moments_of(inst.measure(), 2 * truncation - 2),
                                           truncation)
                             : inst.matrix();
    if (mode == CheckMode::kExact) {
      const auto image = apply_entrywise(t, m);
      if (auto bad = psd_violation(image)) {
        if (minor_det(image, bad->indices, bad->indices) != bad->value || !(bad->value < 0))
          throw invariant_error("certificate failed re-verification");
        fail.cause = "psd";
        fail.indices = bad->indices;
        fail.minor = bad->value;
        return fail;
      }
      return std::nullopt;
    }
    const auto image = apply_entrywise(t, to_float(m));
    const double scale = std::max(1.0, inf_norm(image));
    const double lambda = min_eigenvalue(image);
    if (lambda < -tol * scale) {
      if (min_eigenvalue(image) >= -tol * scale)
        throw invariant_error("certificate failed re-verification");
      fail.cause = "psd";
      fail.eigenvalue = lambda;
      return fail;
    }
    return std::nullopt;
  } catch (const domain_error& e) {
    fail.cause = "domain";
    fail.detail = e.what();
    return fail;
  }
}

}  // namespace detail

// Applies the transform to `count` seeded instances of the family and
// checks the family's target property on every image. Failures carry a
// re-verified certificate.
inline PreserverRun run_preserver(const Transform& t, const std::string& family,
                                  std::size_t truncation, std::size_t count, CheckMode mode,
                                  std::uint64_t seed = 0,
                                  const FamilyParams& params = FamilyParams{},
                                  double tol = kDefaultPsdTol) {
  const auto it = family_registry().find(family);
  if (it == family_registry().end()) throw config_error("unknown family: " + family);
  if (truncation < 2) throw config_error("truncation must be at least 2");

  PreserverRun run;
  run.transform = t;
  run.family = family;
  run.params = params;
  run.target = it->second.target;
  run.mode = mode;
  run.truncation = truncation;
  run.instances = gen_family(family, params, seed, count);

  run.report.transform = describe(t);
  run.report.family = family;
  run.report.truncation = truncation;
  run.report.count = count;
  run.report.mode = mode == CheckMode::kExact ? "exact" : "float";
  run.report.seed = seed;

  for (std::size_t i = 0; i < run.instances.size(); ++i) {
    ++run.report.instances_run;
    if (auto fail =
            detail::check_instance(t, run.instances[i], run.target, mode, truncation, tol)) {
      fail->index = i;
      fail->instance = run.instances[i].label;
      run.report.failures.push_back(std::move(*fail));
    }
  }
  run.report.verdict = run.report.failures.empty();
  return run;
}

// ---------------------------------------------------------------------------
// Counterexample shrinking

struct MinimizedCounterexample {
  Instance instance;
  std::size_t truncation = 0;
};

namespace detail {

inline bool still_fails(const PreserverRun& run, const Instance& inst,
                        std::size_t truncation) {
  if (truncation < 2) return false;
  return check_instance(run.transform, inst, run.target, run.mode, truncation,
                        kDefaultPsdTol)
      .has_value();
}

}  // namespace detail

// Greedy shrink of the first failure: drop atoms, simplify weights, then
// lower the truncation (or pass to principal submatrices). Every candidate
// is re-checked; the smallest still-failing instance wins.
inline MinimizedCounterexample minimize_counterexample(const PreserverRun& run,
                                                       std::size_t shrink_budget) {
  if (run.report.failures.empty())
    throw config_error("nothing to minimize: the run passed");
  Instance current = run.instances[run.report.failures.front().index];
  std::size_t truncation = run.truncation;
  std::size_t budget = shrink_budget;

  bool progress = true;
  while (progress && budget > 0) {
    progress = false;

    if (current.is_measure()) {
      const auto& mu = current.measure();
      // drop one atom
      for (std::size_t drop = 0; drop < mu.atoms().size() && budget > 0; ++drop) {
        auto atoms = mu.atoms();
        atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(drop));
        if (atoms.empty()) continue;
        Instance candidate{"", Measure<Rational>(atoms)};
        candidate.label = detail::measure_label(candidate.measure());
        --budget;
        if (detail::still_fails(run, candidate, truncation)) {
          current = std::move(candidate);
          progress = true;
          break;
        }
      }
      if (progress) continue;
      // simplify weights toward 1
      for (std::size_t pos = 0; pos < mu.atoms().size() && budget > 0; ++pos) {
        if (mu.atoms()[pos].weight == 1) continue;
        auto atoms = mu.atoms();
        atoms[pos].weight = Rational(1);
        Instance candidate{"", Measure<Rational>(atoms)};
        candidate.label = detail::measure_label(candidate.measure());
        --budget;
        if (detail::still_fails(run, candidate, truncation)) {
          current = std::move(candidate);
          progress = true;
          break;
        }
      }
      if (progress) continue;
    } else {
      // principal truncation of the matrix
      const auto& m = current.matrix();
      if (m.rows() > 1 && budget > 0) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i + 1 < m.rows(); ++i) keep.push_back(i);
        Instance candidate{"", m.submatrix(keep, keep)};
        candidate.label = detail::matrix_label(candidate.matrix(), "shrunk");
        --budget;
        if (detail::still_fails(run, candidate, std::min(truncation, m.rows() - 1))) {
          truncation = std::min(truncation, m.rows() - 1);
          current = std::move(candidate);
          progress = true;
          continue;
        }
      }
    }

    // lower the truncation order for measures
    if (current.is_measure() && truncation > 2 && budget > 0) {
      --budget;
      if (detail::still_fails(run, current, truncation - 1)) {
        --truncation;
        progress = true;
      }
    }
  }
  return {current, truncation};
}

}  // namespace momentlab
