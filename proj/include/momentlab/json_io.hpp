#pragma once

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/facewise.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/measure.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/rational.hpp"
#include "momentlab/tn.hpp"
#include "momentlab/transforms.hpp"
#include "momentlab/verify.hpp"

namespace momentlab {

using ordered_json = nlohmann::ordered_json;

using MatVariant = std::variant<Matrix<Rational>, Matrix<double>>;

// ---------------------------------------------------------------------------
// scalars

inline Rational rational_from_json(const ordered_json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw config_error("expected a rational string");
}

inline std::vector<Rational> rational_list_from_json(const ordered_json& j) {
  if (!j.is_array()) throw config_error("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

// ---------------------------------------------------------------------------
// matrices: {"mode":"rational"|"float","rows":[[...]]}

inline ordered_json to_json(const Matrix<Rational>& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return ordered_json{{"mode", "rational"}, {"rows", std::move(rows)}};
}

inline ordered_json to_json(const Matrix<double>& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return ordered_json{{"mode", "float"}, {"rows", std::move(rows)}};
}

inline MatVariant matrix_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("mode") || !j.contains("rows"))
    throw config_error("matrix JSON needs \"mode\" and \"rows\"");
  const auto& rows = j.at("rows");
  if (!rows.is_array() || rows.empty()) throw config_error("matrix needs at least one row");
  const std::size_t cols = rows.front().size();
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "rational") {
    Matrix<Rational> m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw config_error("ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(rows[i][c]);
    }
    return m;
  }
  if (mode == "float") {
    Matrix<double> m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw config_error("ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c].get<double>();
    }
    return m;
  }
  throw config_error("matrix mode must be \"rational\" or \"float\"");
}

// ---------------------------------------------------------------------------
// measures: {"dim":1,"atoms":[{"x":"1/2","w":"1"}]}; d-dim x as arrays

inline ordered_json to_json(const Measure<Rational>& mu) {
  ordered_json atoms = ordered_json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back(ordered_json{{"x", to_string(a.position)}, {"w", to_string(a.weight)}});
  return ordered_json{{"dim", 1}, {"atoms", std::move(atoms)}};
}

inline ordered_json to_json(const MultiMeasure<Rational>& mu) {
  ordered_json atoms = ordered_json::array();
  for (const auto& a : mu.atoms()) {
    ordered_json x = ordered_json::array();
    for (const auto& c : a.position) x.push_back(to_string(c));
    atoms.push_back(ordered_json{{"x", std::move(x)}, {"w", to_string(a.weight)}});
  }
  return ordered_json{{"dim", mu.dim()}, {"atoms", std::move(atoms)}};
}

inline Measure<Rational> measure_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("atoms")) throw config_error("measure JSON needs \"atoms\"");
  if (j.value("dim", 1) != 1) throw config_error("expected a one-dimensional measure");
  std::vector<Atom<Rational>> atoms;
  for (const auto& a : j.at("atoms"))
    atoms.push_back({rational_from_json(a.at("x")), rational_from_json(a.at("w"))});
  return Measure<Rational>(std::move(atoms));
}

inline MultiMeasure<Rational> multi_measure_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.contains("dim"))
    throw config_error("measure JSON needs \"dim\" and \"atoms\"");
  const std::size_t dim = j.at("dim").get<std::size_t>();
  std::vector<MultiAtom<Rational>> atoms;
  for (const auto& a : j.at("atoms")) {
    std::vector<Rational> x;
    if (a.at("x").is_array()) {
      for (const auto& c : a.at("x")) x.push_back(rational_from_json(c));
    } else {
      x.push_back(rational_from_json(a.at("x")));
    }
    atoms.push_back({std::move(x), rational_from_json(a.at("w"))});
  }
  return MultiMeasure<Rational>(dim, std::move(atoms));
}

// ---------------------------------------------------------------------------
// moment sequences: {"k":4,"values":["1","1",...]}

inline ordered_json to_json(const MomentSeq<Rational>& s) {
  ordered_json values = ordered_json::array();
  for (const auto& v : s.values) values.push_back(to_string(v));
  return ordered_json{{"k", s.values.size() - 1}, {"values", std::move(values)}};
}

inline MomentSeq<Rational> seq_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("values"))
    throw config_error("moment sequence JSON needs \"values\"");
  MomentSeq<Rational> s;
  s.values = rational_list_from_json(j.at("values"));
  if (s.values.empty()) throw config_error("empty moment sequence");
  if (j.contains("k") && j.at("k").get<std::size_t>() + 1 != s.values.size())
    throw config_error("sequence length disagrees with \"k\"");
  return s;
}

// ---------------------------------------------------------------------------
// transforms

inline ordered_json to_json(const Transform& t);

namespace detail {

inline ordered_json coeffs_json(const std::vector<Rational>& c) {
  ordered_json out = ordered_json::array();
  for (const auto& v : c) out.push_back(to_string(v));
  return out;
}

}  // namespace detail

inline ordered_json to_json(const Transform& t) {
  struct Visitor {
    ordered_json operator()(const Polynomial& p) const {
      return ordered_json{{"variant", "poly"}, {"coeffs", detail::coeffs_json(p.coeffs)}};
    }
    ordered_json operator()(const PowerMap& p) const {
      return ordered_json{{"variant", "power"}, {"alpha", p.alpha}};
    }
    ordered_json operator()(const PolyPlusPower& p) const {
      return ordered_json{{"variant", "poly_plus_power"},
                          {"coeffs", detail::coeffs_json(p.lower)},
                          {"tail", to_string(p.tail_coeff)},
                          {"m", p.tail_degree}};
    }
    ordered_json operator()(const OddExtension& p) const {
      return ordered_json{{"variant", "odd_ext"}, {"base", Visitor{}(p.base)}};
    }
    ordered_json operator()(const EvenExtension& p) const {
      return ordered_json{{"variant", "even_ext"},
                          {"base", Visitor{}(p.base)},
                          {"f0", to_string(p.value_at_zero)}};
    }
    ordered_json operator()(const JumpMap& p) const {
      return ordered_json{{"variant", "jump"},
                          {"base", Visitor{}(p.base)},
                          {"at0", to_string(p.value_at_zero)},
                          {"at_rho", to_string(p.value_at_plus)},
                          {"at_minus_rho", to_string(p.value_at_minus)},
                          {"rho", to_string(p.rho)}};
    }
    ordered_json operator()(const Tabulated& p) const {
      ordered_json samples = ordered_json::array();
      for (const auto& [x, y] : p.samples)
        samples.push_back(ordered_json::array({to_string(x), to_string(y)}));
      return ordered_json{{"variant", "tabulated"}, {"samples", std::move(samples)}};
    }
  };
  return std::visit(Visitor{}, t);
}

inline Polynomial poly_from_json(const ordered_json& j) {
  if (j.is_array()) return Polynomial{rational_list_from_json(j)};
  if (j.is_object() && j.value("variant", "poly") == "poly" && j.contains("coeffs"))
    return Polynomial{rational_list_from_json(j.at("coeffs"))};
  throw config_error("expected a polynomial");
}

inline Transform transform_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("variant"))
    throw config_error("transform JSON needs \"variant\"");
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "poly") return poly_from_json(j);
  if (variant == "power") return PowerMap{j.at("alpha").get<double>()};
  if (variant == "poly_plus_power")
    return PolyPlusPower{rational_list_from_json(j.at("coeffs")),
                         rational_from_json(j.at("tail")), j.at("m").get<std::size_t>()};
  if (variant == "odd_ext") return OddExtension{poly_from_json(j.at("base"))};
  if (variant == "even_ext")
    return EvenExtension{poly_from_json(j.at("base")), rational_from_json(j.at("f0"))};
  if (variant == "jump")
    return JumpMap{poly_from_json(j.at("base")), rational_from_json(j.at("at0")),
                   rational_from_json(j.at("at_rho")), rational_from_json(j.at("at_minus_rho")),
                   rational_from_json(j.at("rho"))};
  if (variant == "tabulated") {
    Tabulated t;
    for (const auto& s : j.at("samples"))
      t.samples.push_back({rational_from_json(s.at(0)), rational_from_json(s.at(1))});
    return t;
  }
  throw config_error("unknown transform variant: " + variant);
}

// ---------------------------------------------------------------------------
// facewise maps: {"variant":"facewise","m":2,"g":{"[]":["0"],"[1]":[...],
// "[1,2]":[{"e":[1,0],"c":"1"},...]}}

inline std::vector<int> face_key_from_string(const std::string& key) {
  if (key.size() < 2 || key.front() != '[' || key.back() != ']')
    throw config_error("facewise keys look like \"[1,2]\"");
  std::vector<int> out;
  std::string body = key.substr(1, key.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t next = body.find(',', pos);
    if (next == std::string::npos) next = body.size();
    out.push_back(std::stoi(body.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

inline std::string face_key_to_string(const std::vector<int>& j) {
  std::string out = "[";
  for (std::size_t i = 0; i < j.size(); ++i) out += (i ? "," : "") + std::to_string(j[i]);
  return out + "]";
}

inline MultiPoly multipoly_from_json(const ordered_json& j, std::size_t nvars) {
  std::vector<std::pair<std::vector<int>, Rational>> terms;
  if (j.is_array() && (j.empty() || !j.front().is_object())) {
    // plain coefficient list; valid for 0- or 1-variable pieces
    const auto coeffs = rational_list_from_json(j);
    if (nvars == 0) {
      if (coeffs.size() > 1) throw config_error("constant piece takes one coefficient");
      return MultiPoly::constant(0, coeffs.empty() ? Rational(0) : coeffs[0]);
    }
    if (nvars != 1) throw config_error("coefficient lists only describe univariate pieces");
    return MultiPoly::univariate(coeffs);
  }
  for (const auto& term : j) {
    std::vector<int> e;
    for (const auto& v : term.at("e")) e.push_back(v.get<int>());
    terms.push_back({std::move(e), rational_from_json(term.at("c"))});
  }
  return MultiPoly(nvars, std::move(terms));
}

inline ordered_json to_json(const MultiPoly& p) {
  if (p.nvars() <= 1) {
    std::vector<Rational> coeffs;
    for (const auto& [e, c] : p.terms()) {
      const std::size_t deg = p.nvars() == 0 ? 0 : static_cast<std::size_t>(e[0]);
      if (coeffs.size() <= deg) coeffs.resize(deg + 1, Rational(0));
      coeffs[deg] = c;
    }
    if (coeffs.empty()) coeffs.push_back(Rational(0));
    return detail::coeffs_json(coeffs);
  }
  ordered_json terms = ordered_json::array();
  for (const auto& [e, c] : p.terms()) {
    ordered_json ej = ordered_json::array();
    for (int v : e) ej.push_back(v);
    terms.push_back(ordered_json{{"e", std::move(ej)}, {"c", to_string(c)}});
  }
  return terms;
}

inline FacewiseMap facewise_from_json(const ordered_json& j) {
  if (!j.is_object() || j.value("variant", "facewise") != "facewise" || !j.contains("m") ||
      !j.contains("g"))
    throw config_error("facewise JSON needs \"m\" and \"g\"");
  const std::size_t m = j.at("m").get<std::size_t>();
  std::map<std::vector<int>, MultiPoly> pieces;
  for (const auto& [key, value] : j.at("g").items()) {
    const auto face = face_key_from_string(key);
    pieces.emplace(face, multipoly_from_json(value, face.size()));
  }
  return FacewiseMap(m, std::move(pieces));
}

inline ordered_json to_json(const FacewiseMap& f) {
  ordered_json g = ordered_json::object();
  for (const auto& [face, poly] : f.pieces) g[face_key_to_string(face)] = to_json(poly);
  return ordered_json{{"variant", "facewise"}, {"m", f.m}, {"g", std::move(g)}};
}

// ---------------------------------------------------------------------------
// reports

inline ordered_json to_json(const TNReport& r) {
  ordered_json out{{"verdict", r.verdict}};
  if (r.witness) {
    ordered_json rows = ordered_json::array();
    for (auto i : r.witness->rows) rows.push_back(i);
    ordered_json cols = ordered_json::array();
    for (auto i : r.witness->cols) cols.push_back(i);
    out["witness"] = ordered_json{
        {"rows", std::move(rows)}, {"cols", std::move(cols)}, {"minor", to_string(r.witness->minor)}};
  }
  out["minors_checked"] = r.minors_checked;
  return out;
}

inline ordered_json to_json(const PreserverReport& r) {
  ordered_json failures = ordered_json::array();
  for (const auto& f : r.failures) {
    ordered_json fj{{"index", f.index}, {"instance", f.instance}, {"cause", f.cause}};
    if (!f.block.empty()) fj["block"] = f.block;
    if (!f.indices.empty()) {
      ordered_json idx = ordered_json::array();
      for (auto i : f.indices) idx.push_back(i);
      fj["indices"] = std::move(idx);
    }
    if (f.minor) fj["minor"] = to_string(*f.minor);
    if (f.eigenvalue) fj["eigenvalue"] = format_double(*f.eigenvalue);
    if (!f.detail.empty()) fj["detail"] = f.detail;
    failures.push_back(std::move(fj));
  }
  return ordered_json{{"transform", r.transform},
                      {"family", r.family},
                      {"truncation", r.truncation},
                      {"count", r.count},
                      {"mode", r.mode},
                      {"seed", r.seed},
                      {"instances_run", r.instances_run},
                      {"failures", std::move(failures)},
                      {"verdict", r.verdict}};
}

// ---------------------------------------------------------------------------
// parse helper with line/column diagnostics

struct JsonParseError {
  std::string message;
  std::size_t line = 0;
  std::size_t column = 0;
};

inline ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // compute line/column from the byte offset
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < e.byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw config_error("JSON parse error at line " + std::to_string(line) + ", column " +
                       std::to_string(column) + ": " + e.what());
  }
}

}  // namespace momentlab
