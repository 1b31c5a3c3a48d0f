#include "zopt/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zopt/errors.hpp"

namespace zopt {

std::vector<std::string> SolverConfig::validate(ProblemMode mode) const {
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw ConfigError("step_size must be positive and finite");
  }
  if (record_stride == 0) throw ConfigError("record_stride must be at least 1");
  std::vector<std::string> warnings;
  if (mode == ProblemMode::constrained && lip_const && step_size > 1.0 / *lip_const) {
    std::ostringstream msg;
    msg << "step_size " << step_size << " exceeds 1/L1 = " << 1.0 / *lip_const;
    warnings.push_back(msg.str());
  }
  return warnings;
}

const char* to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::diverged: return "diverged";
    case RunStatus::non_finite: return "non_finite";
  }
  return "unknown";
}

namespace {

void record_iterate(RunRecord& rec, std::size_t k, const Vector& x, double value) {
  rec.iterates.push_back(IterateSample{k, x, value});
}

std::string abort_message(const char* what, std::size_t k, const Vector& x) {
  std::ostringstream msg;
  msg << what << " at iteration " << k << " (||x_k|| = " << x.norm() << ")";
  return msg.str();
}

RunRecord run_scheme(const ObjectiveFn& f, const FeasibleSet* set, const Vector& x0,
                     const SolverConfig& cfg, const IterateObserver& observer) {
  const ProblemMode mode = set ? ProblemMode::constrained : ProblemMode::unconstrained;
  cfg.validate(mode);
  if (static_cast<std::size_t>(x0.size()) != f.dim() || cfg.oracle.dim() != f.dim()) {
    throw DimensionError("x0, objective and oracle dimensions must agree");
  }

  RunRecord rec;
  rec.seed = cfg.oracle.seed();
  rec.mu = cfg.oracle.mu();
  rec.step_size = cfg.step_size;
  rec.num_iters = cfg.num_iters;
  rec.record_stride = cfg.record_stride;
  rec.constrained = set != nullptr;
  rec.values.reserve(cfg.num_iters + 1);
  rec.best_value_so_far.reserve(cfg.num_iters + 1);

  Vector x = x0;
  double fx = f(x);
  rec.function_eval_count = 1;
  if (!std::isfinite(fx)) {
    rec.status = RunStatus::non_finite;
    rec.diagnostic = abort_message("non-finite f(x_0)", 0, x);
    rec.final_point = x;
    return rec;
  }
  const double limit = kDivergenceFactor * std::max(1.0, fx);

  std::size_t best_k = 0;
  Vector best_x = x;
  double best_value = fx;

  auto accept = [&](std::size_t k) {
    rec.values.push_back(fx);
    if (fx < best_value) {
      best_value = fx;
      best_k = k;
      best_x = x;
    }
    rec.best_value_so_far.push_back(best_value);
    if (k % cfg.record_stride == 0) record_iterate(rec, k, x, fx);
    if (observer) observer(k, x, fx);
  };
  accept(0);

  const double h = cfg.step_size;
  for (std::size_t k = 0; k < cfg.num_iters; ++k) {
    const Direction u = sample_direction(cfg.oracle, k);
    Vector g;
    try {
      ++rec.function_eval_count;
      g = oracle_eval_at(f, x, fx, u, cfg.oracle).g;
    } catch (const EvaluationError&) {
      rec.status = RunStatus::non_finite;
      rec.diagnostic = abort_message("non-finite f(x_k + mu u)", k, x);
      break;
    }

    Vector next = x - h * g;
    if (set) next = set->project(next);
    const double f_next = f(next);
    ++rec.function_eval_count;
    if (!std::isfinite(f_next)) {
      rec.status = RunStatus::non_finite;
      rec.diagnostic = abort_message("non-finite f(x_{k+1})", k + 1, next);
      break;
    }
    if (f_next > limit) {
      rec.status = RunStatus::diverged;
      rec.diagnostic = abort_message("divergence guard tripped", k + 1, next);
      break;
    }
    x = std::move(next);
    fx = f_next;
    rec.iterations_completed = k + 1;
    accept(k + 1);
  }

  const std::size_t last = rec.iterations_completed;
  if (rec.iterates.empty() || rec.iterates.back().k != last) {
    record_iterate(rec, last, x, fx);
  }
  auto pos = std::lower_bound(rec.iterates.begin(), rec.iterates.end(), best_k,
                              [](const IterateSample& s, std::size_t k) { return s.k < k; });
  if (pos == rec.iterates.end() || pos->k != best_k) {
    rec.iterates.insert(pos, IterateSample{best_k, best_x, best_value});
  }
  rec.final_point = std::move(x);
  return rec;
}

}  // namespace

RunRecord rs_mu_run(const ObjectiveFn& f, const Vector& x0, const SolverConfig& cfg,
                    const IterateObserver& observer) {
  return run_scheme(f, nullptr, x0, cfg, observer);
}

RunRecord rsc_mu_run(const ObjectiveFn& f, const FeasibleSet& set, const Vector& x0,
                     const SolverConfig& cfg, const IterateObserver& observer) {
  if (!std::isfinite(set.diameter())) {
    throw ConfigError("constrained solver needs a set with finite diameter");
  }
  if (!set.contains(x0)) throw InfeasiblePointError("x0 is not in the feasible set");
  return run_scheme(f, &set, x0, cfg, observer);
}

BestIterate best_iterate(const RunRecord& record) {
  if (record.iterates.empty()) throw ConfigError("best_iterate: record has no iterates");
  const IterateSample* best = &record.iterates.front();
  for (const auto& s : record.iterates) {
    if (s.value < best->value || (s.value == best->value && s.k < best->k)) best = &s;
  }
  return BestIterate{best->k, best->x, best->value};
}

SuggestedParams suggest_params(ProblemMode mode, double eps, std::size_t n,
                               double lip_const, double pl_const,
                               std::optional<double> d_x) {
  if (!(eps > 0.0) || n == 0 || !(lip_const > 0.0) || !(pl_const > 0.0)) {
    throw ConfigError("suggest_params: eps, n, L1 and l must be positive");
  }
  const double nd = static_cast<double>(n);
  if (mode == ProblemMode::unconstrained) {
    const double mu = std::sqrt(pl_const * eps) / (std::pow(nd, 1.5) * lip_const);
    const double iters = std::ceil(nd * lip_const / (pl_const * eps));
    return SuggestedParams{mu, static_cast<std::size_t>(iters)};
  }
  if (!d_x || !std::isfinite(*d_x) || !(*d_x > 0.0)) {
    throw ConfigError("suggest_params: constrained mode needs a finite positive diameter");
  }
  const double mu =
      pl_const * eps / (*d_x * lip_const * lip_const * std::pow(nd + 3.0, 1.5));
  const double iters = std::ceil(lip_const / (pl_const * eps));
  return SuggestedParams{mu, static_cast<std::size_t>(iters)};
}

double theorem_step_size(ProblemMode mode, std::size_t n, double lip_const) {
  if (!(lip_const > 0.0)) throw ConfigError("theorem_step_size: L1 must be positive");
  if (mode == ProblemMode::constrained) return 1.0 / lip_const;
  return 1.0 / (4.0 * (static_cast<double>(n) + 4.0) * lip_const);
}

}  // namespace zopt
