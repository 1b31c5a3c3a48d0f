#include "zopt/aggregate.hpp"

#include <cmath>

#include "zopt/errors.hpp"

namespace zopt {

std::vector<std::size_t> checkpoint_grid(std::size_t num_iters, double ratio) {
  if (!(ratio > 1.0)) throw ConfigError("checkpoint ratio must exceed 1");
  std::vector<std::size_t> grid{0};
  for (double v = 1.0; v < static_cast<double>(num_iters); v *= ratio) {
    const auto k = static_cast<std::size_t>(std::llround(v));
    if (k > grid.back() && k < num_iters) grid.push_back(k);
  }
  if (num_iters > 0) grid.push_back(num_iters);
  return grid;
}

AggregateSeries aggregate(const std::vector<RunRecord>& records,
                          const AggregateOptions& options) {
  if (records.empty()) throw ConfigError("aggregate: no records");
  const std::size_t num_values = records.front().values.size();
  if (num_values == 0) throw ConfigError("aggregate: record without values");
  for (const auto& r : records) {
    if (r.values.size() != num_values || r.best_value_so_far.size() != num_values) {
      throw ConfigError("aggregate: records have mismatched checkpoint grids");
    }
  }
  const std::size_t num_iters = num_values - 1;

  AggregateSeries s;
  s.num_runs = records.size();
  s.checkpoints = options.checkpoints.empty() ? checkpoint_grid(num_iters) : options.checkpoints;
  for (std::size_t i = 0; i < s.checkpoints.size(); ++i) {
    if (s.checkpoints[i] > num_iters) {
      throw ConfigError("aggregate: checkpoint beyond the last iterate");
    }
    if (i > 0 && s.checkpoints[i] <= s.checkpoints[i - 1]) {
      throw ConfigError("aggregate: checkpoints must be strictly increasing");
    }
  }

  const double runs = static_cast<double>(records.size());
  // Running mean/M2, so identical inputs give exactly that value and zero spread.
  auto mean_std = [&](auto&& value_at) {
    double mean = 0.0;
    double m2 = 0.0;
    double count = 0.0;
    for (std::size_t r = 0; r < records.size(); ++r) {
      const double v = value_at(r);
      count += 1.0;
      const double delta = v - mean;
      mean += delta / count;
      m2 += delta * (v - mean);
    }
    const double sd = records.size() > 1 ? std::sqrt(m2 / (runs - 1.0)) : 0.0;
    return std::pair{mean, sd};
  };

  for (std::size_t k : s.checkpoints) {
    const auto [mean, sd] = mean_std([&](std::size_t r) { return records[r].values[k]; });
    s.mean_f.push_back(mean);
    s.std_f.push_back(sd);
    s.mean_best_f.push_back(
        mean_std([&](std::size_t r) { return records[r].best_value_so_far[k]; }).first);
  }

  if (options.f_star) {
    // Per-run running sums of f(x_j) - f*, sampled at the checkpoints.
    const double f_star = *options.f_star;
    std::vector<double> running(records.size(), 0.0);
    std::vector<double> avg(records.size(), 0.0);
    std::size_t next = 0;
    for (std::size_t k : s.checkpoints) {
      for (; next <= k; ++next) {
        for (std::size_t r = 0; r < records.size(); ++r) {
          running[r] += records[r].values[next] - f_star;
        }
      }
      for (std::size_t r = 0; r < records.size(); ++r) {
        avg[r] = running[r] / static_cast<double>(k + 1);
      }
      const auto [mean, sd] = mean_std([&](std::size_t r) { return avg[r]; });
      const double se = sd / std::sqrt(runs);
      s.avg_gap.push_back(mean);
      s.avg_gap_se.push_back(se);
    }
  }

  if (options.bound) {
    if (options.bound_mode == ProblemMode::unconstrained) {
      for (std::size_t k : s.checkpoints) s.bound_rhs.push_back(theorem1_rhs(*options.bound, k));
    } else {
      s.bound_rhs = theorem2_curve(*options.bound, s.checkpoints);
    }
  }
  return s;
}

}  // namespace zopt
