#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "momentlab/fjs.hpp"
#include "momentlab/json_io.hpp"
#include "momentlab/linalg.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/multimoments.hpp"
#include "momentlab/psd.hpp"
#include "momentlab/tn.hpp"
#include "momentlab/transforms.hpp"
#include "momentlab/verify.hpp"

namespace momentlab::cli {

// Exit contract: 0 = property holds / success, 1 = property refuted
// (certificate on stdout), 2 = input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitInputError = 2;

namespace detail {

inline std::string slurp(std::istream& is) {
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct InputSource {
  std::string path;    // --in <file>, "-" for stdin
  std::string inline_json;  // --json <text>

  void attach(CLI::App* cmd) {
    cmd->add_option("--in", path, "input file, or - for stdin");
    cmd->add_option("--json", inline_json, "inline JSON input");
  }

  ordered_json load(std::istream& stdin_stream) const {
    const bool have_path = !path.empty();
    const bool have_inline = !inline_json.empty();
    if (have_path == have_inline)
      throw config_error("exactly one input source: --in or --json");
    if (have_inline) return parse_json(inline_json);
    if (path == "-") return parse_json(slurp(stdin_stream));
    std::ifstream f(path);
    if (!f) throw config_error("cannot open input file: " + path);
    return parse_json(slurp(f));
  }
};

inline std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed_flag) {
  if (seed_given) return seed_flag;
  if (const char* env = std::getenv("MOMENTLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw config_error("MOMENTLAB_SEED is not a number");
    }
  }
  return 0;
}

inline std::vector<Rational> parse_rational_csv(const std::string& text) {
  std::vector<Rational> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(parse_rational(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

inline std::vector<double> parse_double_csv(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

inline SupportSet parse_support_set(const std::string& name) {
  if (name == "R") return SupportSet::kRealLine;
  if (name == "[0,inf)" || name == "[0,oo)") return SupportSet::kNonNegative;
  if (name == "[-1,1]") return SupportSet::kSymmetricUnit;
  if (name == "[0,1]") return SupportSet::kUnitInterval;
  throw config_error("unknown support set: " + name + " (use R, [0,inf), [-1,1], [0,1])");
}

inline ordered_json seq_to_float_json(const MomentSeq<Rational>& s) {
  ordered_json values = ordered_json::array();
  for (const auto& v : s.values) values.push_back(to_double(v));
  return ordered_json{{"k", s.values.size() - 1}, {"values", std::move(values)}};
}

inline Matrix<Rational> require_rational(const MatVariant& m, const std::string& what) {
  if (m.index() != 0) throw config_error(what + " needs a rational-mode matrix");
  return std::get<0>(m);
}

}  // namespace detail

inline int run(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"moment-sequence transforms: Hankel positivity, total "
               "non-negativity, and entrywise preserver checks"};
  app.require_subcommand(1);
  bool float_out = false;
  app.add_flag("--float", float_out, "render numeric output as decimals (17 significant digits)");

  // ---- moments -------------------------------------------------------------
  auto* moments_cmd = app.add_subcommand("moments", "moments of a measure, optionally as a Hankel matrix");
  detail::InputSource moments_in;
  moments_in.attach(moments_cmd);
  std::size_t moments_k = 4;
  std::size_t moments_hankel = 0;
  moments_cmd->add_option("-k,--order", moments_k, "truncation order");
  moments_cmd->add_option("--hankel", moments_hankel, "emit the NxN Hankel matrix instead");

  // ---- check-support --------------------------------------------------------
  auto* support_cmd = app.add_subcommand("check-support", "truncated support criteria for a moment sequence");
  detail::InputSource support_in;
  support_in.attach(support_cmd);
  std::string support_set = "R";
  std::string support_mode = "exact";
  double support_tol = kDefaultPsdTol;
  std::size_t support_k = 4;
  support_cmd->add_option("--set", support_set, "R, [0,inf), [-1,1], or [0,1]");
  support_cmd->add_option("--mode", support_mode, "exact or float");
  support_cmd->add_option("--tol", support_tol, "float-mode tolerance");
  support_cmd->add_option("-k,--order", support_k, "order when the input is a measure");

  // ---- check-psd -------------------------------------------------------------
  auto* psd_cmd = app.add_subcommand("check-psd", "positive semidefiniteness of a matrix");
  detail::InputSource psd_in;
  psd_in.attach(psd_cmd);
  std::string psd_mode;
  double psd_tol = kDefaultPsdTol;
  psd_cmd->add_option("--mode", psd_mode, "exact or float (default: matrix mode)");
  psd_cmd->add_option("--tol", psd_tol, "float-mode tolerance");

  // ---- check-tn ---------------------------------------------------------------
  auto* tn_cmd = app.add_subcommand("check-tn", "total non-negativity by full minor enumeration");
  detail::InputSource tn_in;
  tn_in.attach(tn_cmd);

  // ---- apply ------------------------------------------------------------------
  auto* apply_cmd = app.add_subcommand("apply", "apply an entrywise transform to a matrix or sequence");
  detail::InputSource apply_in;
  apply_in.attach(apply_cmd);
  std::string apply_transform_text;
  std::string apply_transform_path;
  apply_cmd->add_option("--transform", apply_transform_text, "transform JSON");
  apply_cmd->add_option("--transform-in", apply_transform_path, "file with transform JSON");

  // ---- critical-value ----------------------------------------------------------
  auto* crit_cmd = app.add_subcommand("critical-value", "threshold for the negative tail coefficient");
  std::string crit_c;
  long long crit_m = 0;
  std::size_t crit_n = 0;
  std::string crit_rho = "1";
  crit_cmd->add_option("--c", crit_c, "comma-separated positive rationals c_0..c_{N-1}")->required();
  crit_cmd->add_option("--m", crit_m, "tail degree M")->required();
  crit_cmd->add_option("--n", crit_n, "N (must match the length of --c)");
  crit_cmd->add_option("--rho", crit_rho, "entry bound rho");

  // ---- hook-schur ------------------------------------------------------------
  auto* hook_cmd = app.add_subcommand("hook-schur", "hook Schur polynomial at all-ones");
  long long hook_m = 0, hook_n = 0, hook_j = 0;
  hook_cmd->add_option("--m", hook_m)->required();
  hook_cmd->add_option("--n", hook_n)->required();
  hook_cmd->add_option("--j", hook_j)->required();

  // ---- jain -------------------------------------------------------------------
  auto* jain_cmd = app.add_subcommand("jain", "PSD of (1+x_i x_j)^alpha over seeded draws");
  std::size_t jain_n = 3;
  double jain_alpha = 1.0;
  std::size_t jain_count = 50;
  std::uint64_t jain_seed = 0;
  bool jain_seed_given = false;
  jain_cmd->add_option("--n", jain_n, "matrix dimension")->required();
  jain_cmd->add_option("--alpha", jain_alpha, "entrywise power")->required();
  jain_cmd->add_option("--count", jain_count, "number of seeded draws");
  jain_cmd->add_option("--seed", jain_seed, "draw seed")->each([&](const std::string&) {
    jain_seed_given = true;
  });

  // ---- preserve ------------------------------------------------------------------
  auto* preserve_cmd = app.add_subcommand("preserve", "run a transform against an instance family");
  std::string preserve_transform_text;
  std::string preserve_transform_path;
  std::string preserve_family;
  std::size_t preserve_n = 4;
  std::size_t preserve_count = 100;
  std::string preserve_mode = "exact";
  std::uint64_t preserve_seed = 0;
  bool preserve_seed_given = false;
  std::string preserve_u0 = "1/2";
  std::string preserve_rho = "1";
  std::string preserve_a = "1/4";
  int preserve_max_atoms = 4;
  preserve_cmd->add_option("--transform", preserve_transform_text, "transform JSON");
  preserve_cmd->add_option("--transform-in", preserve_transform_path, "file with transform JSON");
  preserve_cmd->add_option("--family", preserve_family, "instance family name")->required();
  preserve_cmd->add_option("--n", preserve_n, "truncation order");
  preserve_cmd->add_option("--count", preserve_count, "instances to run");
  preserve_cmd->add_option("--mode", preserve_mode, "exact or float");
  preserve_cmd->add_option("--seed", preserve_seed, "generator seed")->each([&](const std::string&) {
    preserve_seed_given = true;
  });
  preserve_cmd->add_option("--u0", preserve_u0, "family parameter u0");
  preserve_cmd->add_option("--rho", preserve_rho, "family mass/entry bound");
  preserve_cmd->add_option("--a", preserve_a, "family parameter a");
  preserve_cmd->add_option("--max-atoms", preserve_max_atoms, "atoms per random measure");

  // ---- appendix-a ------------------------------------------------------------
  auto* appendix_cmd = app.add_subcommand(
      "appendix-a", "exact determinant table, adjugate, and quartic identity for the FJS matrix");

  // ---- delta-search ------------------------------------------------------------
  auto* delta_cmd = app.add_subcommand("delta-search", "scan for negative determinants of entrywise powers");
  double delta_alpha = 2.0;
  std::string delta_grid;
  delta_cmd->add_option("--alpha", delta_alpha, "entrywise power (>= 1)")->required();
  delta_cmd->add_option("--grid", delta_grid, "comma-separated positive x grid (default 10^-1..10^-8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << std::flush;
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInputError;
  }

  try {
    // ---- moments ----
    if (moments_cmd->parsed()) {
      const auto mu = measure_from_json(moments_in.load(in));
      if (moments_hankel > 0) {
        const auto h = hankel_from(moments_of(mu, 2 * moments_hankel - 2), moments_hankel);
        out << (float_out ? to_json(to_float(h)) : to_json(h)).dump() << "\n";
      } else {
        const auto s = moments_of(mu, moments_k);
        out << (float_out ? detail::seq_to_float_json(s) : to_json(s)).dump() << "\n";
      }
      return kExitOk;
    }

    // ---- check-support ----
    if (support_cmd->parsed()) {
      const auto j = support_in.load(in);
      MomentSeq<Rational> s;
      if (j.contains("atoms")) {
        s = moments_of(measure_from_json(j), support_k);
      } else {
        s = seq_from_json(j);
      }
      const SupportSet set = detail::parse_support_set(support_set);
      if (support_mode == "float") {
        const bool ok = passes_truncated_criteria(s, set, CheckMode::kFloat, support_tol);
        out << ordered_json{{"passes_truncated_criteria", ok}}.dump() << "\n";
        return ok ? kExitOk : kExitRefuted;
      }
      if (support_mode != "exact") throw config_error("mode must be exact or float");
      if (const auto bad = support_violation_exact(s, set)) {
        ordered_json idx = ordered_json::array();
        for (auto i : bad->indices) idx.push_back(i);
        out << ordered_json{{"passes_truncated_criteria", false},
                            {"certificate",
                             ordered_json{{"block", bad->block},
                                          {"indices", std::move(idx)},
                                          {"minor", to_string(bad->minor)}}}}
                   .dump()
            << "\n";
        return kExitRefuted;
      }
      out << ordered_json{{"passes_truncated_criteria", true}}.dump() << "\n";
      return kExitOk;
    }

    // ---- check-psd ----
    if (psd_cmd->parsed()) {
      const auto m = matrix_from_json(psd_in.load(in));
      const std::string mode = !psd_mode.empty() ? psd_mode : (m.index() == 0 ? "exact" : "float");
      if (mode == "exact") {
        const auto exact = detail::require_rational(m, "exact PSD check");
        if (const auto bad = psd_violation(exact)) {
          ordered_json idx = ordered_json::array();
          for (auto i : bad->indices) idx.push_back(i);
          out << ordered_json{{"psd", false},
                              {"certificate",
                               ordered_json{{"indices", std::move(idx)},
                                            {"minor", to_string(bad->value)}}}}
                     .dump()
              << "\n";
          return kExitRefuted;
        }
        out << ordered_json{{"psd", true}}.dump() << "\n";
        return kExitOk;
      }
      if (mode != "float") throw config_error("mode must be exact or float");
      const Matrix<double> mf = m.index() == 0 ? to_float(std::get<0>(m)) : std::get<1>(m);
      const double lambda = min_eigenvalue(mf);
      const bool ok = is_psd(mf, psd_tol);
      out << ordered_json{{"psd", ok}, {"min_eigenvalue", format_double(lambda)}}.dump()
          << "\n";
      return ok ? kExitOk : kExitRefuted;
    }

    // ---- check-tn ----
    if (tn_cmd->parsed()) {
      const auto m = detail::require_rational(matrix_from_json(tn_in.load(in)), "TN check");
      const auto report = is_tn_bruteforce(m);
      out << to_json(report).dump() << "\n";
      return report.verdict ? kExitOk : kExitRefuted;
    }

    // ---- apply ----
    if (apply_cmd->parsed()) {
      if (apply_transform_text.empty() == apply_transform_path.empty())
        throw config_error("exactly one of --transform / --transform-in");
      ordered_json tj;
      if (!apply_transform_text.empty()) {
        tj = parse_json(apply_transform_text);
      } else {
        std::ifstream f(apply_transform_path);
        if (!f) throw config_error("cannot open transform file: " + apply_transform_path);
        tj = parse_json(detail::slurp(f));
      }
      const auto input = apply_in.load(in);

      if (tj.value("variant", "") == "facewise") {
        const auto map = facewise_from_json(tj);
        if (!input.is_array()) throw config_error("facewise apply expects an array of matrices");
        std::vector<Matrix<Rational>> as;
        for (const auto& mj : input)
          as.push_back(detail::require_rational(matrix_from_json(mj), "facewise apply"));
        const auto image = facewise_apply(map, as);
        out << (float_out ? to_json(to_float(image)) : to_json(image)).dump() << "\n";
        return kExitOk;
      }

      const Transform t = transform_from_json(tj);
      if (input.contains("rows")) {
        const auto m = matrix_from_json(input);
        if (m.index() == 0 && exact_capable(t)) {
          const auto image = apply_entrywise(t, std::get<0>(m));
          out << (float_out ? to_json(to_float(image)) : to_json(image)).dump() << "\n";
        } else {
          const Matrix<double> mf = m.index() == 0 ? to_float(std::get<0>(m)) : std::get<1>(m);
          out << to_json(apply_entrywise(t, mf)).dump() << "\n";
        }
        return kExitOk;
      }
      if (input.contains("values")) {
        const auto s = seq_from_json(input);
        if (!exact_capable(t)) throw config_error("this transform needs a float-mode matrix");
        const auto image = apply_entrywise(t, s);
        out << (float_out ? detail::seq_to_float_json(image) : to_json(image)).dump() << "\n";
        return kExitOk;
      }
      throw config_error("apply input must be a matrix, a sequence, or an array of matrices");
    }

    // ---- critical-value ----
    if (crit_cmd->parsed()) {
      const auto c = detail::parse_rational_csv(crit_c);
      if (crit_n != 0 && crit_n != c.size())
        throw config_error("--n disagrees with the length of --c");
      const Rational value = critical_value(c, crit_m, parse_rational(crit_rho));
      out << (float_out ? format_double(to_double(value)) : to_string(value)) << "\n";
      return kExitOk;
    }

    // ---- hook-schur ----
    if (hook_cmd->parsed()) {
      out << hook_schur_ones(hook_m, hook_n, hook_j).str() << "\n";
      return kExitOk;
    }

    // ---- jain ----
    if (jain_cmd->parsed()) {
      const std::uint64_t seed = detail::resolve_seed(jain_seed_given, jain_seed);
      Rng rng(seed);
      for (std::size_t draw = 0; draw < jain_count; ++draw) {
        std::vector<double> xs;
        while (xs.size() < jain_n) {
          const double x = 0.05 + 0.9 * rng.next_unit();
          bool fresh = true;
          for (double seen : xs)
            if (std::abs(seen - x) < 1e-9) fresh = false;
          if (fresh) xs.push_back(x);
        }
        const double lambda = jain_min_eig(xs, jain_alpha);
        if (lambda < -1e-8) {
          ordered_json xsj = ordered_json::array();
          for (double x : xs) xsj.push_back(x);
          out << ordered_json{{"psd", false},
                              {"certificate",
                               ordered_json{{"draw", draw},
                                            {"xs", std::move(xsj)},
                                            {"min_eigenvalue", format_double(lambda)}}}}
                     .dump()
              << "\n";
          return kExitRefuted;
        }
      }
      out << ordered_json{{"psd", true}, {"draws", jain_count}}.dump() << "\n";
      return kExitOk;
    }

    // ---- preserve ----
    if (preserve_cmd->parsed()) {
      if (preserve_transform_text.empty() == preserve_transform_path.empty())
        throw config_error("exactly one of --transform / --transform-in");
      ordered_json tj;
      if (!preserve_transform_text.empty()) {
        tj = parse_json(preserve_transform_text);
      } else {
        std::ifstream f(preserve_transform_path);
        if (!f) throw config_error("cannot open transform file: " + preserve_transform_path);
        tj = parse_json(detail::slurp(f));
      }
      const Transform t = transform_from_json(tj);
      FamilyParams params;
      params.u0 = parse_rational(preserve_u0);
      params.rho = parse_rational(preserve_rho);
      params.a = parse_rational(preserve_a);
      params.max_atoms = preserve_max_atoms;
      params.n = preserve_n;
      CheckMode mode;
      if (preserve_mode == "exact") {
        mode = CheckMode::kExact;
      } else if (preserve_mode == "float") {
        mode = CheckMode::kFloat;
      } else {
        throw config_error("mode must be exact or float");
      }
      const std::uint64_t seed = detail::resolve_seed(preserve_seed_given, preserve_seed);
      const auto run = run_preserver(t, preserve_family, preserve_n, preserve_count, mode, seed, params);
      out << to_json(run.report).dump() << "\n";
      return run.report.verdict ? kExitOk : kExitRefuted;
    }

    // ---- appendix-a ----
    if (appendix_cmd->parsed()) {
      const auto table = quartic_term_table();
      Rational sum(0);
      for (const auto& [key, value] : table) {
        out << key[0] << "," << key[1] << "," << key[2] << "," << key[3] << " "
            << to_string(value) << "\n";
        sum += value;
      }
      out << "sum " << to_string(sum) << "\n";
      out << "adjugate " << to_json(adjugate(fjs_matrix())).dump() << "\n";
      const auto identity = quartic_coeff_identity(
          {Rational(1), Rational(1), Rational(1), Rational(1), Rational(1)});
      out << "quartic computed=" << to_string(identity.computed)
          << " predicted=" << to_string(identity.predicted)
          << (identity.computed == identity.predicted ? " ok" : " MISMATCH") << "\n";
      return identity.computed == identity.predicted ? kExitOk : kExitRefuted;
    }

    // ---- delta-search ----
    if (delta_cmd->parsed()) {
      const auto grid = delta_grid.empty() ? default_delta_grid()
                                           : detail::parse_double_csv(delta_grid);
      const auto x = find_negative_power_det(delta_alpha, grid);
      if (x) {
        out << ordered_json{{"found", true}, {"x", *x}}.dump() << "\n";
        return kExitOk;
      }
      out << ordered_json{{"found", false}}.dump() << "\n";
      return kExitRefuted;
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  err << "no subcommand\n";
  return kExitInputError;
}

}  // namespace momentlab::cli
