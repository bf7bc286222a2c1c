#pragma once

// Experiment configuration files.
//
//   # comment                 (also ';')
//   [curve]
//   n = 2
//   A = T1
//   B = T2^4 - T2^3 - T1*T2
//   minimize = no             (yes: replace the model by its minimal reduction)
//
//   [point P]                 affine x, y in T-space, or X, Y, Z forms in S-space
//   x = T2
//   y = T2^2
//   factors = S0, S2          prime divisors for the divisor-sum height (optional)
//
//   [hypersurface L]
//   form = S2 - S0 - S1
//   point = 1, 0, 0           rational point of a conic (optional)
//   expect = good             good | bad
//
//   [divisors]
//   discriminant = T1         factor list of the discriminant
//
//   [theorem-b]
//   line = S2 - S0 - S1
//   height_bound = 20
//   generators = P
//   torsion =
//   tol = 1/1000
//
//   [settings]
//   tol = 1/100
//   max_level = 3
//   degree_ceiling = 2000
//   seed = 24301
//
// Keys are case-sensitive; values run to the end of the line. Sections other
// than the named ones may appear at most once.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ffh/parse.hpp"
#include "ffh/specialization.hpp"

namespace ffh {

struct ConfigSection {
  std::string kind;
  std::string name;
  std::map<std::string, std::string> values;
  int line = 0;

  const std::string* get(const std::string& key) const {
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  }
};

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

inline std::vector<ConfigSection> parse_sections(std::istream& in) {
  std::vector<ConfigSection> out;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ValidationError(where + "unterminated section header");
      std::string head = trim(std::string_view(line).substr(1, line.size() - 2));
      ConfigSection sec;
      sec.line = lineno;
      const auto sp = head.find_first_of(" \t");
      sec.kind = head.substr(0, sp);
      if (sp != std::string::npos) sec.name = trim(std::string_view(head).substr(sp));
      out.push_back(std::move(sec));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError(where + "expected 'key = value'");
    if (out.empty()) throw ValidationError(where + "key outside of a section");
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw ValidationError(where + "empty key");
    if (!out.back().values.emplace(key, trim(std::string_view(line).substr(eq + 1))).second)
      throw ValidationError(where + "duplicate key '" + key + "'");
  }
  return out;
}

// ---------------------------------------------------------------------------

struct NamedPoint {
  std::string name;
  ProjPoint point;
  std::vector<MultiPoly> factors;  ///< prime divisors in S-space, may be empty
};

struct NamedHypersurface {
  std::string name;
  MultiPoly form;
  std::optional<std::array<Integer, 3>> conic_point;
  bool expect_good = true;
};

struct TheoremBConfig {
  std::string line;
  long height_bound = 20;
  std::vector<std::string> generators;
  std::vector<std::string> torsion;
  Rational tol{1, 1000};
};

struct Settings {
  Rational tol{1, 100};
  int max_level = 3;
  int degree_ceiling = 2000;
  std::uint64_t seed = kDefaultSeed;
};

struct ExperimentConfig {
  FunctionFieldCurve curve;
  std::vector<NamedPoint> points;
  std::vector<NamedHypersurface> hypersurfaces;
  std::vector<MultiPoly> discriminant_factors;
  std::optional<TheoremBConfig> theorem_b;
  Settings settings;

  const NamedPoint& point(const std::string& name) const {
    for (const auto& p : points)
      if (p.name == name) return p;
    throw ValidationError("unknown point '" + name + "'");
  }
  const NamedHypersurface& hypersurface(const std::string& name) const {
    for (const auto& h : hypersurfaces)
      if (h.name == name) return h;
    throw ValidationError("unknown hypersurface '" + name + "'");
  }
};

inline Rational parse_rational(const std::string& s, const std::string& what) {
  try {
    const MultiPoly c = parse_poly(s, VarSpace::affine(1));
    if (!c.is_constant()) throw ValidationError(what + " must be a rational number");
    return c.constant_value();
  } catch (const ParseError& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

inline long parse_integer(const std::string& s, const std::string& what) {
  const Rational r = parse_rational(s, what);
  if (r.get_den() != 1 || !r.get_num().fits_slong_p()) throw ValidationError(what + " must be an integer");
  return r.get_num().get_si();
}

namespace detail {
inline MultiPoly parse_in(const std::string& text, VarSpace space, const std::string& what) {
  try {
    return parse_poly(text, space);
  } catch (const ParseError& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

inline const std::string& require(const ConfigSection& s, const std::string& key) {
  if (auto v = s.get(key)) return *v;
  throw ValidationError("section [" + s.kind + (s.name.empty() ? "" : " " + s.name) + "] is missing '" + key + "'");
}

inline void only_keys(const ConfigSection& s, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : s.values) {
    bool ok = false;
    for (const char* allowed : keys) ok = ok || k == allowed;
    if (!ok) throw ValidationError("line " + std::to_string(s.line) + ": unknown key '" + k + "' in [" + s.kind + "]");
  }
}
}  // namespace detail

inline ExperimentConfig load_config(std::istream& in) {
  const auto sections = parse_sections(in);
  const ConfigSection* curve_sec = nullptr;
  for (const auto& s : sections)
    if (s.kind == "curve") {
      if (curve_sec) throw ValidationError("duplicate [curve] section");
      curve_sec = &s;
    }
  if (!curve_sec) throw ValidationError("missing [curve] section");
  detail::only_keys(*curve_sec, {"n", "A", "B", "minimize"});
  const long n = parse_integer(detail::require(*curve_sec, "n"), "n");
  if (n < 2 || n + 1 > kMaxVars) throw ValidationError("n must be between 2 and " + std::to_string(kMaxVars - 1));
  const VarSpace T = VarSpace::affine(static_cast<int>(n));
  const VarSpace S = VarSpace::homogeneous(static_cast<int>(n));
  FunctionFieldCurve curve(detail::parse_in(detail::require(*curve_sec, "A"), T, "A"),
                           detail::parse_in(detail::require(*curve_sec, "B"), T, "B"));
  if (auto m = curve_sec->get("minimize"); m && *m == "yes") curve = minimality_reduce(curve).curve;

  ExperimentConfig cfg{curve, {}, {}, {}, std::nullopt, {}};
  bool seen_settings = false, seen_divisors = false;
  for (const auto& s : sections) {
    if (s.kind == "curve") continue;
    if (s.kind == "point") {
      if (s.name.empty()) throw ValidationError("line " + std::to_string(s.line) + ": [point] needs a name");
      for (const auto& p : cfg.points)
        if (p.name == s.name) throw ValidationError("duplicate point '" + s.name + "'");
      detail::only_keys(s, {"x", "y", "X", "Y", "Z", "factors"});
      ProjPoint P = ProjPoint::infinity(S);
      if (s.get("X") || s.get("Y") || s.get("Z")) {
        P = normalize_point(detail::parse_in(detail::require(s, "X"), S, "X"), detail::parse_in(detail::require(s, "Y"), S, "Y"),
                            detail::parse_in(detail::require(s, "Z"), S, "Z"));
      } else {
        P = affine_point(detail::parse_in(detail::require(s, "x"), T, "x"), detail::parse_in(detail::require(s, "y"), T, "y"));
      }
      NamedPoint np{s.name, P, {}};
      if (auto f = s.get("factors"))
        for (const auto& item : split_list(*f)) np.factors.push_back(detail::parse_in(item, S, "factors"));
      cfg.points.push_back(std::move(np));
    } else if (s.kind == "hypersurface") {
      if (s.name.empty()) throw ValidationError("line " + std::to_string(s.line) + ": [hypersurface] needs a name");
      detail::only_keys(s, {"form", "point", "expect"});
      NamedHypersurface h{s.name, detail::parse_in(detail::require(s, "form"), S, "form"), std::nullopt, true};
      if (auto p = s.get("point")) {
        auto items = split_list(*p);
        if (items.size() != 3) throw ValidationError("conic point needs three coordinates");
        std::array<Integer, 3> c;
        for (int i = 0; i < 3; ++i) c[i] = parse_integer(items[i], "conic point");
        h.conic_point = c;
      }
      if (auto e = s.get("expect")) {
        if (*e != "good" && *e != "bad") throw ValidationError("expect must be 'good' or 'bad'");
        h.expect_good = *e == "good";
      }
      cfg.hypersurfaces.push_back(std::move(h));
    } else if (s.kind == "divisors") {
      if (seen_divisors) throw ValidationError("duplicate [divisors] section");
      seen_divisors = true;
      detail::only_keys(s, {"discriminant"});
      for (const auto& item : split_list(detail::require(s, "discriminant")))
        cfg.discriminant_factors.push_back(detail::parse_in(item, T, "discriminant factor"));
    } else if (s.kind == "theorem-b") {
      if (cfg.theorem_b) throw ValidationError("duplicate [theorem-b] section");
      detail::only_keys(s, {"line", "height_bound", "generators", "torsion", "tol"});
      TheoremBConfig b;
      b.line = detail::require(s, "line");
      if (auto v = s.get("height_bound")) b.height_bound = parse_integer(*v, "height_bound");
      if (b.height_bound < 0) throw ValidationError("height_bound must be >= 0");
      if (auto v = s.get("generators")) b.generators = split_list(*v);
      if (auto v = s.get("torsion")) b.torsion = split_list(*v);
      if (auto v = s.get("tol")) b.tol = parse_rational(*v, "tol");
      if (b.tol <= 0) throw ValidationError("tolerances must be positive");
      cfg.theorem_b = std::move(b);
    } else if (s.kind == "settings") {
      if (seen_settings) throw ValidationError("duplicate [settings] section");
      seen_settings = true;
      detail::only_keys(s, {"tol", "max_level", "degree_ceiling", "seed"});
      if (auto v = s.get("tol")) cfg.settings.tol = parse_rational(*v, "tol");
      if (cfg.settings.tol <= 0) throw ValidationError("tolerances must be positive");
      if (auto v = s.get("max_level")) cfg.settings.max_level = static_cast<int>(parse_integer(*v, "max_level"));
      if (cfg.settings.max_level < 0) throw ValidationError("max_level must be >= 0");
      if (auto v = s.get("degree_ceiling"))
        cfg.settings.degree_ceiling = static_cast<int>(parse_integer(*v, "degree_ceiling"));
      if (auto v = s.get("seed")) cfg.settings.seed = static_cast<std::uint64_t>(parse_integer(*v, "seed"));
    } else {
      throw ValidationError("line " + std::to_string(s.line) + ": unknown section [" + s.kind + "]");
    }
  }
  for (const auto& p : cfg.points)
    if (!is_on_curve(cfg.curve, p.point)) throw ValidationError("point '" + p.name + "' is not on the curve");
  if (cfg.theorem_b) {
    for (const auto& g : cfg.theorem_b->generators) cfg.point(g);
    for (const auto& g : cfg.theorem_b->torsion) cfg.point(g);
  }
  return cfg;
}

inline ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  return load_config(in);
}

}  // namespace ffh
