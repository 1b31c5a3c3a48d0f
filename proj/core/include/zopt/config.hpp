#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zopt/sets.hpp"
#include "zopt/types.hpp"

namespace zopt {

/// Config error carrying a "path:line: message" text.
class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(const std::string& path, std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Flat "key = value" file with [section] headers, '#' comments.
/// Keys are addressed as "section.key".
class KeyValueFile {
 public:
  struct Entry {
    std::string value;
    std::size_t line;
  };

  static KeyValueFile parse(const std::string& text, const std::string& path = "<config>");
  static KeyValueFile load(const std::string& path);

  const std::string& path() const noexcept { return path_; }
  const std::map<std::string, Entry>& entries() const noexcept { return entries_; }
  const Entry* find(const std::string& key) const;

  /// Replaces or inserts; used for [full] overrides and env overrides.
  void set(const std::string& key, Entry entry);
  void erase_section(const std::string& section);

 private:
  std::string path_;
  std::map<std::string, Entry> entries_;
};

/// A step size: a number, "theorem" (the step the convergence bound assumes)
/// or "n_scaled" (1 / (n L1)).
struct StepSpec {
  enum class Kind { value, theorem, n_scaled };
  Kind kind = Kind::theorem;
  double value = 0.0;

  std::string label() const;
};

struct SetSpec {
  FeasibleSet::Kind kind = FeasibleSet::Kind::box;
  double lower = -0.5;
  double upper = 0.5;
  double center = 0.0;
  double radius = 1.0;

  FeasibleSet build(std::size_t dim) const;
};

struct ExperimentConfig {
  ProblemMode scenario = ProblemMode::unconstrained;

  std::size_t m = 20;
  std::size_t n = 100;
  double noise_std = 0.1;
  std::uint64_t problem_seed = 1;
  std::optional<std::string> problem_file;

  std::optional<double> mu;  // nullopt: use suggest_params with eps
  double eps = 0.1;
  std::vector<StepSpec> steps{StepSpec{}};
  std::size_t num_iters = 1000;
  std::size_t record_stride = 100;

  std::optional<SetSpec> set;

  std::size_t num_runs = 25;
  std::uint64_t run_seed_base = 1000;
  std::optional<std::uint64_t> init_seed;  // defaults to problem_seed

  std::string csv_path = "experiment.csv";
  std::optional<std::string> svg_path;
  std::optional<std::string> problem_out;
  bool bound_overlay = true;
  bool save_trajectories = false;

  std::uint64_t effective_init_seed() const { return init_seed.value_or(problem_seed); }
};

/// Builds and validates a config. With full = true, every "section.key" in
/// the [full] section overrides the matching key before validation.
/// Throws ConfigParseError with the offending line.
ExperimentConfig parse_experiment_config(KeyValueFile file, bool full = false);

}  // namespace zopt
