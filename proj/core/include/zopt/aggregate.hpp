#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zopt/analysis.hpp"
#include "zopt/solvers.hpp"

namespace zopt {

/// Cross-run statistics at a grid of checkpoints.
struct AggregateSeries {
  std::vector<std::size_t> checkpoints;
  std::vector<double> mean_f;
  std::vector<double> std_f;         // sample std, divisor R - 1 (0 when R = 1)
  std::vector<double> mean_best_f;   // cross-run mean of f(x_hat_k)
  std::vector<double> bound_rhs;     // empty without bound inputs
  std::vector<double> avg_gap;       // (1/(k+1)) sum_{j<=k} (mean_f_j - f*); empty without f*
  std::vector<double> avg_gap_se;    // cross-run standard error of the per-run running average
  std::size_t num_runs = 0;
  /// Free-form key=value lines carried into the CSV header.
  std::vector<std::pair<std::string, std::string>> metadata;

  bool operator==(const AggregateSeries&) const = default;
};

/// 0, then round(1.15^j) for increasing j, then num_iters; strictly increasing.
std::vector<std::size_t> checkpoint_grid(std::size_t num_iters, double ratio = 1.15);

struct AggregateOptions {
  std::optional<double> f_star;
  std::optional<BoundInputs> bound;
  ProblemMode bound_mode = ProblemMode::unconstrained;
  /// Empty: checkpoint_grid(N).
  std::vector<std::size_t> checkpoints;
};

/// All records must have the same number of values (same N). Throws
/// ConfigError when the grids differ or the list is empty.
AggregateSeries aggregate(const std::vector<RunRecord>& records,
                          const AggregateOptions& options = {});

/// CSV layout:
///   # zopt-aggregate 1
///   # <key>=<value>            (one line per metadata entry)
///   k,mean_f,std_f,mean_best_f[,bound_rhs][,avg_gap,avg_gap_se]
///   <rows, doubles with 17 significant digits>
void write_csv(std::ostream& out, const AggregateSeries& series);
AggregateSeries read_csv(std::istream& in);

}  // namespace zopt
