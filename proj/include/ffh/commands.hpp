#pragma once

// Subcommands of the ffh tool. Each writes its report to `out` (and to files in
// options.out_dir when set) and returns the process exit code.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ffh/config.hpp"

namespace ffh {

enum ExitCode { kExitOk = 0, kExitInternal = 1, kExitValidation = 2, kExitAcceptance = 3 };

struct CommandOptions {
  std::optional<std::string> out_dir;
  std::optional<int> max_level;
  std::optional<Rational> tol;
  std::optional<std::string> point;
  std::optional<std::string> gamma;
  std::optional<std::string> t;
  std::optional<std::uint64_t> seed;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

namespace detail {

inline void write_file(const CommandOptions& opt, const std::string& name, const std::string& content) {
  if (!opt.out_dir) return;
  std::filesystem::create_directories(*opt.out_dir);
  std::ofstream f(std::filesystem::path(*opt.out_dir) / name, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + name + " in " + *opt.out_dir);
  f << content;
}

inline std::vector<const NamedPoint*> selected_points(const ExperimentConfig& cfg, const CommandOptions& opt) {
  std::vector<const NamedPoint*> out;
  if (opt.point) {
    out.push_back(&cfg.point(*opt.point));
  } else {
    for (const auto& p : cfg.points) out.push_back(&p);
  }
  return out;
}

inline RationalPointPn parse_t(const CommandOptions& opt) {
  if (!opt.t) throw ValidationError("--t is required");
  std::vector<Rational> c;
  for (const auto& item : split_list(*opt.t)) c.push_back(parse_rational(item, "t"));
  return RationalPointPn::make(std::move(c));
}

inline const NamedPoint& one_point(const ExperimentConfig& cfg, const CommandOptions& opt) {
  if (opt.point) return cfg.point(*opt.point);
  if (cfg.points.size() != 1) throw ValidationError("--point is required when the config defines several points");
  return cfg.points.front();
}

inline CanonicalHeightOptions height_options(const ExperimentConfig& cfg, const CommandOptions& opt) {
  const int max_level = opt.max_level.value_or(cfg.settings.max_level);
  return {max_level, max_level, cfg.settings.degree_ceiling};
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline int cmd_height(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& out) {
  const WeierstrassModel E = cfg.curve.model();
  const Rational tol = opt.tol.value_or(cfg.settings.tol);
  nlohmann::ordered_json report = nlohmann::ordered_json::array();
  for (const NamedPoint* np : detail::selected_points(cfg, opt)) {
    const long weil = weil_height(np->point);
    const HeightEstimate h = canonical_height(E, np->point, tol, detail::height_options(cfg, opt));
    nlohmann::ordered_json row;
    row["point"] = np->name;
    row["weil"] = weil;
    std::optional<long> divsum;
    if (!np->factors.empty()) {
      divsum = weil_height_divisor_sum(coordinates_of(np->point), np->factors);
      row["divisor_sum"] = *divsum;
    }
    row["level"] = h.level;
    row["value"] = to_string(h.value);
    row["error_bound"] = to_string(h.error_bound);
    row["exact"] = h.exact;
    row["converged"] = h.converged;
    row["constant_C"] = to_string(h.constant_C);
    row["a_priori_C"] = to_string(h.a_priori_C);
    row["observed_C"] = h.observed_C ? to_string(*h.observed_C) : "";
    std::vector<long> hs(h.heights.begin(), h.heights.end());
    row["heights"] = hs;
    report.push_back(row);

    out << np->name << ": weil=" << weil;
    if (divsum) out << ", divisor_sum=" << *divsum;
    if (h.exact) {
      out << ", canonical=0 (exact)\n";
      continue;
    }
    out << ", canonical in [" << to_string(h.value) << " +- " << to_string(h.error_bound) << "] (level " << h.level;
    if (h.observed_C)
      out << ", observed C=" << to_string(*h.observed_C) << " (heuristic), a-priori C=" << to_string(h.a_priori_C);
    else
      out << ", a-priori C=" << to_string(h.a_priori_C);
    if (!h.converged) out << ", target error not reached";
    out << ")\n";
  }
  detail::write_file(opt, "height.json", report.dump(2) + "\n");
  return kExitOk;
}

inline int cmd_theorem_a(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& out) {
  const Rational tol = opt.tol.value_or(cfg.settings.tol);
  const int max_level = opt.max_level.value_or(cfg.settings.max_level);
  std::string table = "point,gamma,degree,m,lhs,rhs,defect,verdict\n";
  std::string canon = "point,gamma,level,k_value,k_radius,gamma_value,gamma_radius,overlap\n";
  bool failed = false;
  for (const NamedPoint* np : detail::selected_points(cfg, opt)) {
    for (const auto& h : cfg.hypersurfaces) {
      if (opt.gamma && *opt.gamma != h.name) continue;
      const std::string head = csv_field(np->name) + "," + csv_field(h.name) + ",";
      try {
        const RationalHypersurface G = make_hypersurface(h.form, h.conic_point);
        const TheoremAReport rep = theorem_a_report(cfg.curve, np->point, G, max_level, tol, cfg.settings.degree_ceiling);
        for (const auto& l : rep.levels) {
          table += head + std::to_string(G.degree) + "," + std::to_string(l.m) + ",";
          if (!l.defect) {
            table += ",,,DegreeCeilingExceeded\n";
            continue;
          }
          table += std::to_string(l.defect->lhs) + "," + std::to_string(l.defect->rhs) + "," +
                   std::to_string(l.defect->defect) + "," + (l.defect->defect == 0 ? "no-obstruction" : "defect") + "\n";
          if (l.defect->defect != 0 && h.expect_good) failed = true;
        }
        if (rep.k_side && rep.gamma_side)
          canon += head + std::to_string(rep.k_side->level) + "," + to_string(rep.k_interval.midpoint) + "," +
                   to_string(rep.k_interval.radius) + "," + to_string(rep.gamma_interval.midpoint) + "," +
                   to_string(rep.gamma_interval.radius) + "," + (rep.overlap ? "yes" : "no") + "\n";
      } catch (const PoleAtGamma&) {
        table += head + std::to_string(h.form.total_degree()) + ",,,,,PoleAtGamma\n";
      } catch (const SingularReduction&) {
        table += head + std::to_string(h.form.total_degree()) + ",,,,,SingularReduction\n";
      }
    }
  }
  out << table;
  if (!opt.out_dir) out << "\n" << canon;
  detail::write_file(opt, "theorem_a.csv", table);
  detail::write_file(opt, "theorem_a_canonical.csv", canon);
  return failed ? kExitAcceptance : kExitOk;
}

inline int cmd_theorem_b(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& out) {
  if (!cfg.theorem_b) throw ValidationError("config has no [theorem-b] section");
  const auto& b = *cfg.theorem_b;
  const RationalHypersurface line = hyperplane(detail::parse_in(b.line, cfg.curve.homogeneous_space(), "line"));
  std::vector<ProjPoint> gens, tors;
  for (const auto& g : b.generators) gens.push_back(cfg.point(g).point);
  for (const auto& t : b.torsion) tors.push_back(cfg.point(t).point);
  const double tol = opt.tol.value_or(b.tol).get_d();
  const InjectivityReport rep = injectivity_report(cfg.curve, gens, tors, line, b.height_bound, tol);

  std::string csv = "t,fiber_class";
  for (const auto& g : b.generators) csv += ",hhat_" + g + ",level_" + g;
  csv += ",det,det_radius,verdict,relation,note\n";
  for (const auto& r : rep.rows) {
    csv += r.t.str() + "," + r.fiber_class;
    for (std::size_t i = 0; i < b.generators.size(); ++i) {
      if (i < r.hhat.size())
        csv += "," + fixed(r.hhat[i]) + "," + std::to_string(r.levels[i]);
      else
        csv += ",,";
    }
    const bool measured = r.verdict == Verdict::independent || r.verdict == Verdict::dependent ||
                          (r.verdict == Verdict::inconclusive && r.hhat.size() == b.generators.size());
    csv += measured ? "," + fixed(r.det) + "," + fixed(r.det_radius) : std::string(",,");
    std::string rel;
    for (std::size_t i = 0; i < r.relation.size(); ++i) rel += (i ? ";" : "") + std::to_string(r.relation[i]);
    csv += std::string(",") + to_string(r.verdict) + "," + rel + "," + csv_field(r.note) + "\n";
  }
  nlohmann::ordered_json summary;
  summary["processed"] = rep.summary.processed;
  summary["independent"] = rep.summary.independent;
  summary["torsion_collisions"] = rep.summary.torsion_collisions;
  summary["dependent"] = rep.summary.dependent;
  summary["inconclusive"] = rep.summary.inconclusive;
  summary["skipped"] = rep.summary.skipped;
  if (opt.out_dir) {
    detail::write_file(opt, "theorem_b.csv", csv);
    detail::write_file(opt, "theorem_b_summary.json", summary.dump(2) + "\n");
  } else {
    out << csv << "\n";
  }
  out << summary.dump() << "\n";
  return kExitOk;
}

inline int cmd_reduce(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& out) {
  if (!opt.gamma) throw ValidationError("--gamma is required");
  const NamedHypersurface& h = cfg.hypersurface(*opt.gamma);
  const RationalHypersurface G = make_hypersurface(h.form, h.conic_point);
  out << "gamma " << h.name << ": " << format_poly(G.F) << " = 0, degree " << G.degree << "\n";
  out << "theta = [";
  for (std::size_t i = 0; i < G.theta.size(); ++i) out << (i ? " : " : "") << format_poly(G.theta[i]);
  out << "]\n";
  const ReducedCurve red = reduce_curve(cfg.curve, G);
  out << "A_gamma = (" << format_poly(red.model.a.num) << ") / (" << format_poly(red.model.a.den) << ")\n";
  out << "B_gamma = (" << format_poly(red.model.b.num) << ") / (" << format_poly(red.model.b.den) << ")\n";
  for (const NamedPoint* np : detail::selected_points(cfg, opt)) {
    const ProjPoint PG = reduce_point(np->point, G);
    const LehDefect d = leh_defect(np->point, G);
    out << np->name << "_gamma = " << format_point(PG) << ", height " << d.lhs << ", deg gamma * h(P) = " << d.rhs
        << ", defect " << d.defect << "\n";
  }
  return kExitOk;
}

inline int cmd_specialize(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& out) {
  const RationalPointPn t = detail::parse_t(opt);
  const SpecializedCurve Et = specialize_curve(cfg.curve, t);
  const double tol = opt.tol.value_or(cfg.settings.tol).get_d();
  out << "t = " << t.str() << ": " << Et.str() << ", disc " << to_string(Et.disc) << ", " << to_string(Et.fiber) << "\n";
  for (const NamedPoint* np : detail::selected_points(cfg, opt)) {
    const SpecializedPoint sp = specialize_point(np->point, t);
    out << np->name << "_t = " << sp.str();
    if (sp.indeterminate) {
      out << "\n";
      continue;
    }
    const QPoint p = sp.affine();
    const bool singular = is_singular_specialized_point(Et, p);
    out << (singular ? ", singular" : ", nonsingular");
    if (!singular) out << ", doubling commutes: " << (dl_check(cfg.curve, np->point, t) ? "yes" : "no");
    if (Et.fiber == FiberClass::nonsingular) {
      const QHeightEstimate q = q_canonical_height(Et, p, tol);
      if (q.torsion)
        out << ", torsion of order " << q.torsion_order;
      else
        out << ", hhat ~ " << fixed(q.value) << " (level " << q.level << ")";
    }
    out << "\n";
  }
  return kExitOk;
}

inline int cmd_classify_infinity(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& out) {
  const RationalPointPn t = detail::parse_t(opt);
  const NamedPoint& np = detail::one_point(cfg, opt);
  const InfinityClassification c = classify_infinity(cfg.curve, np.point, t);
  out << np.name << " at t = " << t.str() << ": case " << to_string(c.which) << "\n";
  out << np.name << "' = " << format_point(c.transported) << "\n";
  out << np.name << "'_t = " << c.value.str() << "\n";
  if (c.fiber) out << "E'_t: " << c.fiber->str() << ", " << to_string(c.fiber->fiber) << "\n";
  return kExitOk;
}

inline int cmd_nonsingular_multiple(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& out) {
  if (cfg.discriminant_factors.empty()) throw ValidationError("config has no [divisors] discriminant list");
  const ValidatedDivisors v = validate_divisor_list(cfg.curve, cfg.discriminant_factors);
  for (const NamedPoint* np : detail::selected_points(cfg, opt)) {
    const NonsingularMultiple m = nonsingular_multiple(cfg.curve, np->point, v);
    out << np->name << ": N = " << m.N;
    for (std::size_t i = 0; i < v.factors.size(); ++i)
      out << ", " << format_poly(v.factors[i].factor) << "^" << v.factors[i].multiplicity << " -> " << m.per_divisor[i];
    out << "\n";
  }
  return kExitOk;
}

/// Runs `command`, mapping library errors to exit codes and messages on `err`.
inline int run_command(const std::string& command, const std::string& config_path, const CommandOptions& opt,
                       std::ostream& out, std::ostream& err) {
  try {
    const ExperimentConfig cfg = load_config_file(config_path);
    sampling_seed() = opt.seed.value_or(cfg.settings.seed);
    if (command == "height") return cmd_height(cfg, opt, out);
    if (command == "theorem-a") return cmd_theorem_a(cfg, opt, out);
    if (command == "theorem-b") return cmd_theorem_b(cfg, opt, out);
    if (command == "reduce") return cmd_reduce(cfg, opt, out);
    if (command == "specialize") return cmd_specialize(cfg, opt, out);
    if (command == "classify-infinity") return cmd_classify_infinity(cfg, opt, out);
    if (command == "nonsingular-multiple") return cmd_nonsingular_multiple(cfg, opt, out);
    err << "unknown command '" << command << "'\n";
    return kExitValidation;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace ffh
