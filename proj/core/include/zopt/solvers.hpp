#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zopt/objective.hpp"
#include "zopt/oracle.hpp"
#include "zopt/sets.hpp"
#include "zopt/types.hpp"

namespace zopt {

struct SolverConfig {
  OracleConfig oracle;
  double step_size = 0.0;
  std::size_t num_iters = 0;
  std::size_t record_stride = 1;
  /// When set, constrained runs warn if step_size > 1 / lip_const.
  std::optional<double> lip_const;

  /// Throws ConfigError on hard errors, returns soft warnings.
  std::vector<std::string> validate(ProblemMode mode) const;
};

enum class RunStatus { completed, diverged, non_finite };

const char* to_string(RunStatus status) noexcept;

struct IterateSample {
  std::size_t k;
  Vector x;
  double value;
};

/// Trajectory of one solver run.
///
/// values[k] = f(x_k) for k = 0..iterations_completed, stored densely.
/// iterates holds x_k at multiples of record_stride, at the last completed
/// iteration, and at the best iterate, sorted by k.
struct RunRecord {
  std::uint64_t seed = 0;
  double mu = 0.0;
  double step_size = 0.0;
  std::size_t num_iters = 0;
  std::size_t record_stride = 1;
  bool constrained = false;

  std::vector<IterateSample> iterates;
  std::vector<double> values;
  std::vector<double> best_value_so_far;
  Vector final_point;
  std::size_t iterations_completed = 0;
  /// 1 (for f(x_0)) + 2 per completed iteration.
  std::size_t function_eval_count = 0;

  RunStatus status = RunStatus::completed;
  std::string diagnostic;
};

/// Called once per iterate x_k (k = 0..N) after f(x_k) is known. Lets
/// analysis code inspect the dense trajectory without the solver storing it.
using IterateObserver = std::function<void(std::size_t k, const Vector& x, double value)>;

/// Divergence guard: a run stops when f(x_k) > kDivergenceFactor * max(1, f(x_0)).
inline constexpr double kDivergenceFactor = 1e12;

/// Unconstrained random search: x_{k+1} = x_k - h g_mu(x_k), k = 0..N-1.
/// Iteration k draws its direction from stream k of cfg.oracle.seed().
RunRecord rs_mu_run(const ObjectiveFn& f, const Vector& x0, const SolverConfig& cfg,
                    const IterateObserver& observer = {});

/// Projected variant: x_{k+1} = Proj_X(x_k - h g_mu(x_k)). Throws
/// InfeasiblePointError if x0 is not in the set and ConfigError if the set is
/// unbounded.
RunRecord rsc_mu_run(const ObjectiveFn& f, const FeasibleSet& set, const Vector& x0,
                     const SolverConfig& cfg, const IterateObserver& observer = {});

struct BestIterate {
  std::size_t k;
  Vector x;
  double value;
};

/// Earliest recorded iterate with the smallest value. Throws ConfigError on
/// an empty record.
BestIterate best_iterate(const RunRecord& record);

struct SuggestedParams {
  double mu;
  std::size_t num_iters;
};

/// Parameter rules with all O(.) constants set to 1.
///   unconstrained: mu = sqrt(l eps) / (n^1.5 L), N = ceil(n L / (l eps))
///   constrained:   mu = l eps / (d_x L^2 (n+3)^1.5), N = ceil(L / (l eps))
SuggestedParams suggest_params(ProblemMode mode, double eps, std::size_t n,
                               double lip_const, double pl_const,
                               std::optional<double> d_x = std::nullopt);

/// 1 / (4 (n + 4) L) unconstrained, 1 / L constrained.
double theorem_step_size(ProblemMode mode, std::size_t n, double lip_const);

}  // namespace zopt
