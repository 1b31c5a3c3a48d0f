#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zopt/aggregate.hpp"
#include "zopt/config.hpp"
#include "zopt/problems.hpp"

namespace zopt {

struct RunOptions {
  std::size_t jobs = 1;
  std::filesystem::path out_dir = ".";
  bool write_files = true;
  /// Replaces run_seed_base (ZOPT_SEED).
  std::optional<std::uint64_t> seed_override;
};

struct StepOutcome {
  StepSpec spec;
  double step_size = 0.0;
  AggregateSeries series;
  std::size_t completed_runs = 0;
  std::vector<std::string> failures;      // one diagnostic per aborted run
  std::vector<double> final_best;         // f(x_hat_N) per completed run
  std::size_t feasibility_violations = 0; // constrained runs only
  std::size_t iterates_checked = 0;
  std::filesystem::path csv_path;
};

struct ExperimentResult {
  ProblemMode scenario = ProblemMode::unconstrained;
  std::size_t n = 0;
  double mu = 0.0;
  double f_star = 0.0;
  double initial_value = 0.0;
  ProblemConstants constants;
  std::optional<double> diameter;
  std::vector<StepOutcome> steps;
  std::vector<std::string> warnings;
  std::optional<std::filesystem::path> svg_path;
};

/// Builds the problem once, runs num_runs seeded solver runs per step size
/// (seeds run_seed_base + i), aggregates, and writes CSV/SVG files when
/// options.write_files is set. Output is independent of options.jobs.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// x0: entrywise N(0, 1) from init_seed, projected onto the set if any.
Vector initial_point(std::size_t n, std::uint64_t init_seed, const FeasibleSet* set);

}  // namespace zopt
