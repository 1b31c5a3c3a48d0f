#include "zopt/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "zopt/errors.hpp"
#include "zopt/rng.hpp"
#include "zopt/svg.hpp"
#include "zopt/trajectory_io.hpp"

namespace zopt {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* scenario_name(ProblemMode m) {
  return m == ProblemMode::unconstrained ? "unconstrained" : "constrained";
}

struct RunOutput {
  RunRecord record;
  std::vector<double> grad_sq;  // ||grad f(x_k)||^2, dense; constrained bound only
  std::size_t infeasible = 0;
  std::size_t checked = 0;
  std::exception_ptr error;
};

std::filesystem::path with_suffix(const std::filesystem::path& p, const std::string& suffix) {
  std::filesystem::path out = p;
  out.replace_filename(p.stem().string() + suffix + p.extension().string());
  return out;
}

double resolve_step(const StepSpec& spec, ProblemMode mode, std::size_t n, double lip) {
  switch (spec.kind) {
    case StepSpec::Kind::theorem: return theorem_step_size(mode, n, lip);
    case StepSpec::Kind::n_scaled: return 1.0 / (static_cast<double>(n) * lip);
    case StepSpec::Kind::value: break;
  }
  return spec.value;
}

template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace

Vector initial_point(std::size_t n, std::uint64_t init_seed, const FeasibleSet* set) {
  StreamRng rng(init_seed, 0);
  Vector x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.normal();
  return set ? set->project(x) : x;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  ExperimentResult result;
  result.scenario = config.scenario;
  const bool constrained = config.scenario == ProblemMode::constrained;

  TestProblem problem = [&] {
    if (config.problem_file) {
      std::ifstream in(*config.problem_file);
      if (!in) throw ConfigError("cannot open problem file " + *config.problem_file);
      return load_problem(in);
    }
    return make_least_squares(config.m, config.n, config.noise_std, config.problem_seed);
  }();
  const std::size_t n = problem.n();
  result.n = n;
  result.constants = problem.constants();

  std::optional<FeasibleSet> set;
  if (constrained) set = config.set->build(n);
  if (set) result.diameter = set->diameter();

  const double lip = problem.lip_const();
  const double pl = problem.pl_const();
  result.f_star = set ? constrained_opt_value(problem, *set).value : problem.opt_value();

  if (config.mu) {
    result.mu = *config.mu;
  } else {
    result.mu = suggest_params(config.scenario, config.eps, n, lip, pl, result.diameter).mu;
  }

  const Vector x0 = initial_point(n, config.effective_init_seed(), set ? &*set : nullptr);
  result.initial_value = problem.value(x0);
  const std::uint64_t seed_base = options.seed_override.value_or(config.run_seed_base);
  const bool want_bound = config.bound_overlay;

  if (options.write_files) std::filesystem::create_directories(options.out_dir);
  const std::filesystem::path base_csv = options.out_dir / config.csv_path;

  for (std::size_t si = 0; si < config.steps.size(); ++si) {
    StepOutcome outcome;
    outcome.spec = config.steps[si];
    outcome.step_size = resolve_step(outcome.spec, config.scenario, n, lip);
    outcome.csv_path =
        config.steps.size() == 1 ? base_csv : with_suffix(base_csv, "_h" + std::to_string(si));

    SolverConfig solver{OracleConfig(result.mu, n, seed_base), outcome.step_size,
                        config.num_iters, config.record_stride, lip};
    for (auto& w : solver.validate(config.scenario)) {
      result.warnings.push_back("step " + outcome.spec.label() + ": " + w);
    }

    std::vector<RunOutput> outputs(config.num_runs);
    parallel_for(config.num_runs, options.jobs, [&](std::size_t i) {
      RunOutput& out = outputs[i];
      try {
        SolverConfig run_cfg = solver;
        run_cfg.oracle = solver.oracle.with_seed(seed_base + i);
        IterateObserver observer;
        if (set) {
          const bool track_grad = want_bound;
          if (track_grad) out.grad_sq.reserve(config.num_iters + 1);
          observer = [&out, &problem, &set, track_grad](std::size_t, const Vector& x, double) {
            ++out.checked;
            if (!set->contains(x)) ++out.infeasible;
            if (track_grad) out.grad_sq.push_back(problem.grad(x).squaredNorm());
          };
          out.record = rsc_mu_run(problem.objective(), *set, x0, run_cfg, observer);
        } else {
          out.record = rs_mu_run(problem.objective(), x0, run_cfg, observer);
        }
      } catch (...) {
        out.error = std::current_exception();
      }
    });

    std::vector<RunRecord> completed;
    std::vector<double> grad_sq_mean;
    std::size_t grad_runs = 0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      auto& out = outputs[i];
      if (out.error) std::rethrow_exception(out.error);
      outcome.feasibility_violations += out.infeasible;
      outcome.iterates_checked += out.checked;
      if (out.record.status != RunStatus::completed) {
        outcome.failures.push_back("run " + std::to_string(i) + " (seed " +
                                   std::to_string(out.record.seed) + "): " +
                                   to_string(out.record.status) + ", " + out.record.diagnostic);
        continue;
      }
      if (!out.grad_sq.empty()) {
        if (grad_sq_mean.empty()) grad_sq_mean.assign(out.grad_sq.size(), 0.0);
        for (std::size_t k = 0; k < out.grad_sq.size(); ++k) grad_sq_mean[k] += out.grad_sq[k];
        ++grad_runs;
      }
      outcome.final_best.push_back(out.record.best_value_so_far.back());
      if (options.write_files && config.save_trajectories) {
        std::ofstream traj(with_suffix(outcome.csv_path, "_run" + std::to_string(i))
                               .replace_extension(".ztr"),
                           std::ios::binary);
        write_trajectory(traj, out.record);
      }
      completed.push_back(std::move(out.record));
    }
    for (const auto& f : outcome.failures) result.warnings.push_back("aborted " + f);
    if (completed.empty()) throw EvaluationError("every run aborted; nothing to aggregate");
    outcome.completed_runs = completed.size();
    for (double& g : grad_sq_mean) g /= static_cast<double>(grad_runs);

    AggregateOptions agg;
    agg.f_star = result.f_star;
    if (want_bound) {
      BoundInputs in;
      in.n = n;
      in.lip_const = lip;
      in.pl_const = pl;
      in.mu = result.mu;
      in.initial_gap = std::max(0.0, result.initial_value - result.f_star);
      if (constrained) {
        in.d_x = result.diameter;
        in.sigma_seq.reserve(grad_sq_mean.size());
        for (double g2 : grad_sq_mean) {
          in.sigma_seq.push_back(
              std::sqrt(sigma_bound(SmoothnessClass::c11, result.mu, n, lip, std::sqrt(g2))));
        }
      }
      agg.bound = std::move(in);
      agg.bound_mode = config.scenario;
    }
    outcome.series = aggregate(completed, agg);

    auto& meta = outcome.series.metadata;
    meta.emplace_back("scenario", scenario_name(config.scenario));
    meta.emplace_back("m", std::to_string(problem.m()));
    meta.emplace_back("n", std::to_string(n));
    meta.emplace_back("noise_std", fmt(problem.noise_std()));
    meta.emplace_back("problem_seed", std::to_string(problem.seed()));
    meta.emplace_back("run_seed_base", std::to_string(seed_base));
    meta.emplace_back("init_seed", std::to_string(config.effective_init_seed()));
    meta.emplace_back("x0", set ? "N(0,I) projected onto X" : "N(0,I)");
    meta.emplace_back("set", set ? set->describe() : "whole_space");
    meta.emplace_back("mu", fmt(result.mu));
    meta.emplace_back("step_size", fmt(outcome.step_size));
    meta.emplace_back("step_rule", outcome.spec.label());
    meta.emplace_back("num_iters", std::to_string(config.num_iters));
    meta.emplace_back("completed_runs", std::to_string(outcome.completed_runs));
    meta.emplace_back("lip_const", fmt(lip));
    meta.emplace_back("pl_const", fmt(pl));
    meta.emplace_back("norm_pl_const", fmt(problem.norm_pl_const()));
    meta.emplace_back("f_star", fmt(result.f_star));
    meta.emplace_back("f_x0", fmt(result.initial_value));
    if (want_bound) {
      meta.emplace_back("bound", constrained ? "theorem2_rhs (sigma_k: c11 candidate)"
                                             : "theorem1_rhs");
      meta.emplace_back("bound_step_matches_theorem",
                        outcome.spec.kind == StepSpec::Kind::theorem ? "true" : "false");
      if (constrained) meta.emplace_back("bound_pl_const", "unconstrained l substituted");
    }

    if (options.write_files) {
      std::ofstream csv(outcome.csv_path);
      if (!csv) throw ConfigError("cannot write " + outcome.csv_path.string());
      write_csv(csv, outcome.series);
    }
    result.steps.push_back(std::move(outcome));
  }

  if (options.write_files && config.problem_out) {
    std::ofstream out(options.out_dir / *config.problem_out);
    save_problem(problem, out);
  }

  if (options.write_files && config.svg_path) {
    std::vector<PlotCurve> curves;
    for (const auto& step : result.steps) {
      const auto& s = step.series;
      std::vector<double> x;
      for (std::size_t k : s.checkpoints) x.push_back(static_cast<double>(k) + 1.0);
      const std::string h = "h=" + fmt(step.step_size).substr(0, 8);
      curves.push_back(PlotCurve{"mean f(x_hat_k), " + h, x, s.mean_best_f, false});
      curves.push_back(PlotCurve{"mean f(x_k), " + h, x, s.mean_f, false});
      if (!s.bound_rhs.empty()) {
        std::vector<double> shifted;
        for (double b : s.bound_rhs) shifted.push_back(b + result.f_star);
        curves.push_back(PlotCurve{"f* + bound, " + h, x, shifted, true});
      }
    }
    result.svg_path = options.out_dir / *config.svg_path;
    std::ofstream svg(*result.svg_path);
    write_loglog_svg(svg, std::string(scenario_name(config.scenario)) + " least squares, n = " +
                              std::to_string(n),
                     "iteration k + 1", "objective", curves);
  }
  return result;
}

}  // namespace zopt
