#include <iostream>

#include "CLI11.hpp"
#include "ffh/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Weil and canonical heights of elliptic curves over Q(T1, ..., Tn)"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir, tol, t, point, gamma;
  int max_level = -1;
  std::uint64_t seed = 0;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"height", "Weil height and canonical height of the configured points"},
      {"theorem-a", "height defects and canonical heights under reduction modulo hypersurfaces"},
      {"theorem-b", "specialization injectivity along a line"},
      {"reduce", "reduce the curve and points modulo one hypersurface"},
      {"specialize", "specialize the curve and points at a rational point t"},
      {"classify-infinity", "case of an indeterminate point on the hyperplane at infinity"},
      {"nonsingular-multiple", "least N with [N]P nonsingular modulo every bad divisor"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "directory for report files");
    sub->add_option("--max-level", max_level, "doubling levels")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", tol, "target error, e.g. 1/100");
    sub->add_option("--seed", seed, "seed for sampled identity checks");
    sub->add_option("--point", point, "point name");
    if (name == "reduce" || name == "theorem-a") sub->add_option("--gamma", gamma, "hypersurface name");
    if (name == "specialize" || name == "classify-infinity") sub->add_option("--t", t, "coordinates t0,t1,...");
  }

  CLI11_PARSE(app, argc, argv);

  const CLI::App* sub = app.get_subcommands().front();
  ffh::CommandOptions opt;
  if (!out_dir.empty()) opt.out_dir = out_dir;
  if (max_level >= 0) opt.max_level = max_level;
  if (!point.empty()) opt.point = point;
  if (!gamma.empty()) opt.gamma = gamma;
  if (!t.empty()) opt.t = t;
  if (sub->count("--seed")) opt.seed = seed;
  if (!tol.empty()) {
    try {
      opt.tol = ffh::parse_rational(tol, "--tol");
      if (*opt.tol <= 0) throw ffh::ValidationError("--tol must be positive");
    } catch (const ffh::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return ffh::kExitValidation;
    }
  }
  return ffh::run_command(sub->get_name(), config, opt, std::cout, std::cerr);
}
