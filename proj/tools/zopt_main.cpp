// zopt: command-line front end for the zeroth-order solvers.
//
//   zopt run     --config <path> [--full] [--jobs K] [--out-dir D]
//   zopt suggest --mode {unc|con} --eps E --n N --lip L --pl P [--dx D]
//   zopt verify  [--probes P] [--samples S] [--seed X] ...

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "zopt/analysis.hpp"
#include "zopt/config.hpp"
#include "zopt/experiment.hpp"
#include "zopt/solvers.hpp"

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("ZOPT_SEED");
  if (!raw || !*raw) return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("ZOPT_SEED is not an unsigned integer: ") + raw);
  }
}

int cmd_run(const std::string& config_path, bool full, std::size_t jobs,
            const std::string& out_dir) {
  const auto config = zopt::parse_experiment_config(zopt::KeyValueFile::load(config_path), full);
  zopt::RunOptions options;
  options.jobs = jobs;
  options.out_dir = out_dir;
  options.seed_override = env_seed();

  const auto result = zopt::run_experiment(config, options);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

  std::cout << "n = " << result.n << ", L1 = " << result.constants.lip_const
            << ", l = " << result.constants.pl_const
            << " (2||A||^2 = " << result.constants.norm_pl_const << "), f* = " << result.f_star
            << ", mu = " << result.mu << '\n';
  for (const auto& step : result.steps) {
    const auto& s = step.series;
    std::cout << "step " << step.spec.label() << " (h = " << step.step_size << "): "
              << step.completed_runs << "/" << config.num_runs << " runs, final mean f(x_hat) = "
              << s.mean_best_f.back();
    if (!s.bound_rhs.empty()) std::cout << ", bound = " << s.bound_rhs.back();
    if (config.scenario == zopt::ProblemMode::constrained) {
      std::cout << ", feasibility violations = " << step.feasibility_violations;
    }
    std::cout << "\n  wrote " << step.csv_path.string() << '\n';
  }
  if (result.svg_path) std::cout << "  wrote " << result.svg_path->string() << '\n';
  return 0;
}

int cmd_suggest(const std::string& mode, double eps, std::size_t n, double lip, double pl,
                std::optional<double> dx) {
  const auto m = mode == "unc" ? zopt::ProblemMode::unconstrained : zopt::ProblemMode::constrained;
  const auto p = zopt::suggest_params(m, eps, n, lip, pl, dx);
  std::cout.precision(17);
  std::cout << "mu = " << p.mu << "\nN = " << p.num_iters << "\nh = "
            << zopt::theorem_step_size(m, n, lip) << '\n';
  return 0;
}

struct VerifyArgs {
  std::size_t probes = 1000;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::size_t m = 5;
  std::size_t n = 10;
  double noise_std = 0.1;
  double mu = 1e-4;
  double half_width = 0.5;
  bool unconstrained = false;
  std::string csv;
};

int cmd_verify(const VerifyArgs& a) {
  const auto problem = zopt::make_least_squares(a.m, a.n, a.noise_std, a.seed);
  const auto set = a.unconstrained ? zopt::FeasibleSet::whole_space(a.n)
                                   : zopt::FeasibleSet::uniform_box(a.n, -a.half_width, a.half_width);
  const zopt::OracleConfig oracle(a.mu, a.n, a.seed);
  const auto report = zopt::verify_appendix_lemmas(problem, set, oracle, a.probes, a.samples, a.seed);
  zopt::write_report(std::cout, report);
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    zopt::write_report_csv(out, report);
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zopt - zeroth-order optimization with Gaussian-smoothing oracles"};
  app.require_subcommand(1);

  std::string config_path;
  bool full = false;
  std::size_t jobs = 1;
  std::string out_dir = ".";
  auto* run = app.add_subcommand("run", "Run a multi-seed experiment from a config file");
  run->add_option("--config", config_path, "Experiment config")->required()->check(CLI::ExistingFile);
  run->add_flag("--full", full, "Apply the [full] section (large-scale runs)");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--out-dir", out_dir, "Output directory");

  std::string mode;
  double eps = 0.0, lip = 0.0, pl = 0.0;
  std::size_t n = 0;
  std::optional<double> dx;
  auto* suggest = app.add_subcommand("suggest", "Print mu, N and the theorem step size");
  suggest->add_option("--mode", mode)->required()->check(CLI::IsMember({"unc", "con"}));
  suggest->add_option("--eps", eps)->required()->check(CLI::PositiveNumber);
  suggest->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  suggest->add_option("--lip", lip, "Gradient Lipschitz constant L1")->required()->check(CLI::PositiveNumber);
  suggest->add_option("--pl", pl, "PL constant l")->required()->check(CLI::PositiveNumber);
  suggest->add_option("--dx", dx, "Feasible-set diameter (constrained mode)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check the oracle-error lemmas on a least-squares instance");
  verify->add_option("--probes", va.probes, "Random feasible probe points");
  verify->add_option("--samples", va.samples, "Oracle draws per probe")->check(CLI::Range(2u, 100000000u));
  verify->add_option("--seed", va.seed, "Seed for problem, probes and directions");
  verify->add_option("--m", va.m, "Rows of A");
  verify->add_option("--n", va.n, "Columns of A");
  verify->add_option("--mu", va.mu, "Smoothing parameter")->check(CLI::PositiveNumber);
  verify->add_option("--box", va.half_width, "Box half-width")->check(CLI::PositiveNumber);
  verify->add_flag("--unconstrained", va.unconstrained, "Probe the whole space instead of a box");
  verify->add_option("--csv", va.csv, "Also write CSV rows here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, full, jobs, out_dir);
    if (*suggest) return cmd_suggest(mode, eps, n, lip, pl, dx);
    if (*verify) return cmd_verify(va);
  } catch (const std::exception& e) {
    std::cerr << "zopt: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
