#include "zopt/solvers.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "zopt/errors.hpp"
#include "zopt/problems.hpp"
#include "zopt/rng.hpp"

namespace {

using zopt::FeasibleSet;
using zopt::Matrix;
using zopt::ProblemMode;
using zopt::Vector;

zopt::SolverConfig make_config(double mu, std::size_t n, std::uint64_t seed, double h,
                               std::size_t iters, std::size_t stride = 1) {
  zopt::SolverConfig cfg{zopt::OracleConfig(mu, n, seed)};
  cfg.step_size = h;
  cfg.num_iters = iters;
  cfg.record_stride = stride;
  return cfg;
}

// f(x_hat_N) of ScalarSquareSeededRegression, frozen from its first run.
constexpr double kScalarSquareBest = 6.9473393127096916e-19;

const zopt::ObjectiveFn& scalar_square() {
  static const zopt::ObjectiveFn f(1, [](const Vector& x) { return x[0] * x[0]; });
  return f;
}

TEST(RsMuRunTest, ConstantObjectiveNeverMoves) {
  const zopt::ObjectiveFn f(3, [](const Vector&) { return 1.5; });
  const Vector x0 = Vector::LinSpaced(3, -1.0, 1.0);
  const auto rec = zopt::rs_mu_run(f, x0, make_config(0.1, 3, 4, 0.5, 50, 5));
  ASSERT_EQ(rec.status, zopt::RunStatus::completed);
  for (const auto& s : rec.iterates) EXPECT_EQ(s.x, x0);
  EXPECT_EQ(rec.final_point, x0);
}

TEST(RsMuRunTest, ScalarSquareSeededRegression) {
  // Theorem step for n = 1, L1 = 2 is 1 / (4 * 5 * 2).
  const auto cfg = make_config(1e-6, 1, 2024, 0.025, 2000, 100);
  const auto rec = zopt::rs_mu_run(scalar_square(), Vector::Constant(1, 1.0), cfg);
  const auto best = zopt::best_iterate(rec);
  EXPECT_LE(best.value, 1e-3);
  EXPECT_EQ(rec.iterations_completed, 2000u);
  EXPECT_DOUBLE_EQ(best.value, kScalarSquareBest);
}

TEST(RsMuRunTest, BookkeepingMatchesContract) {
  const auto cfg = make_config(1e-4, 1, 1, 0.025, 37, 10);
  const auto rec = zopt::rs_mu_run(scalar_square(), Vector::Constant(1, 1.0), cfg);
  EXPECT_EQ(rec.values.size(), 38u);
  EXPECT_EQ(rec.best_value_so_far.size(), 38u);
  EXPECT_EQ(rec.function_eval_count, 2 * 37u + 1);
  EXPECT_EQ(rec.iterates.front().k, 0u);
  EXPECT_EQ(rec.iterates.back().k, 37u);
  for (std::size_t i = 1; i < rec.iterates.size(); ++i)
    EXPECT_LT(rec.iterates[i - 1].k, rec.iterates[i].k);
  for (std::size_t k = 1; k < rec.best_value_so_far.size(); ++k)
    EXPECT_LE(rec.best_value_so_far[k], rec.best_value_so_far[k - 1]);
  // The best iterate is always recorded.
  const auto best = zopt::best_iterate(rec);
  EXPECT_EQ(best.value, rec.best_value_so_far.back());
  EXPECT_EQ(rec.values[best.k], best.value);
}

TEST(RsMuRunTest, ZeroIterations) {
  const auto rec = zopt::rs_mu_run(scalar_square(), Vector::Constant(1, 2.0),
                                   make_config(0.1, 1, 1, 0.1, 0));
  EXPECT_EQ(rec.values.size(), 1u);
  EXPECT_EQ(rec.function_eval_count, 1u);
  ASSERT_EQ(rec.iterates.size(), 1u);
  EXPECT_EQ(rec.iterates[0].value, 4.0);
}

TEST(RsMuRunTest, DeterministicForSeed) {
  const auto p = zopt::make_least_squares(4, 10, 0.1, 9);
  const auto cfg = make_config(1e-5, 10, 77, 1e-3, 500, 50);
  const auto a = zopt::rs_mu_run(p.objective(), Vector::Ones(10), cfg);
  const auto b = zopt::rs_mu_run(p.objective(), Vector::Ones(10), cfg);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.final_point, b.final_point);
  const auto c = zopt::rs_mu_run(p.objective(), Vector::Ones(10), make_config(1e-5, 10, 78, 1e-3, 500, 50));
  EXPECT_NE(a.values, c.values);
}

TEST(RsMuRunTest, UpdateUsesOracleOfIterationK) {
  const auto p = zopt::make_least_squares(3, 6, 0.1, 2);
  const auto cfg = make_config(1e-4, 6, 5, 5e-3, 200);
  std::vector<Vector> xs;
  zopt::rs_mu_run(p.objective(), Vector::Ones(6), cfg,
                  [&](std::size_t, const Vector& x, double) { xs.push_back(x); });
  ASSERT_EQ(xs.size(), 201u);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const Vector g = zopt::oracle_eval(p.objective(), xs[k], zopt::sample_direction(cfg.oracle, k), cfg.oracle);
    EXPECT_LE((xs[k + 1] - (xs[k] - cfg.step_size * g)).norm(), 1e-12 * (1 + xs[k].norm()));
  }
}

TEST(RsMuRunTest, DecreasesInExpectation) {
  const auto p = zopt::make_least_squares(5, 20, 0.1, 3);
  const double h = zopt::theorem_step_size(ProblemMode::unconstrained, 20, p.lip_const());
  const Vector x0 = Vector::Ones(20);
  double mean_final = 0.0;
  for (std::uint64_t r = 0; r < 25; ++r) {
    const auto rec = zopt::rs_mu_run(p.objective(), x0, make_config(1e-6, 20, 100 + r, h, 2000, 500));
    mean_final += rec.values.back() / 25.0;
  }
  EXPECT_LT(mean_final, 0.5 * p.value(x0));
}

TEST(RsMuRunTest, DivergenceGuard) {
  const auto cfg = make_config(1e-3, 1, 1, 50.0, 1000);
  const auto rec = zopt::rs_mu_run(scalar_square(), Vector::Constant(1, 1.0), cfg);
  EXPECT_EQ(rec.status, zopt::RunStatus::diverged);
  EXPECT_LT(rec.iterations_completed, 1000u);
  EXPECT_EQ(rec.values.size(), rec.iterations_completed + 1);
  EXPECT_FALSE(rec.diagnostic.empty());
}

TEST(RsMuRunTest, NonFiniteValueStopsRun) {
  const zopt::ObjectiveFn f(1, [](const Vector& x) {
    return x[0] < 0.5 ? std::numeric_limits<double>::quiet_NaN() : x[0] * x[0];
  });
  const auto rec = zopt::rs_mu_run(f, Vector::Constant(1, 1.0), make_config(1e-3, 1, 1, 0.2, 1000));
  EXPECT_EQ(rec.status, zopt::RunStatus::non_finite);
  EXPECT_STREQ(zopt::to_string(rec.status), "non_finite");
}

TEST(RsMuRunTest, RejectsBadConfig) {
  EXPECT_THROW(zopt::rs_mu_run(scalar_square(), Vector::Ones(1), make_config(0.1, 1, 1, 0.0, 1)),
               zopt::ConfigError);
  EXPECT_THROW(zopt::rs_mu_run(scalar_square(), Vector::Ones(1), make_config(0.1, 1, 1, 0.1, 1, 0)),
               zopt::ConfigError);
  EXPECT_THROW(zopt::rs_mu_run(scalar_square(), Vector::Ones(2), make_config(0.1, 2, 1, 0.1, 1)),
               zopt::DimensionError);
}

TEST(RscMuRunTest, InactiveBoxReproducesUnconstrainedRun) {
  const auto p = zopt::make_least_squares(4, 8, 0.1, 6);
  const auto cfg = make_config(1e-5, 8, 42, 1e-3, 1000, 100);
  const Vector x0 = Vector::Constant(8, 0.3);
  const auto free = zopt::rs_mu_run(p.objective(), x0, cfg);
  const auto boxed = zopt::rsc_mu_run(p.objective(), FeasibleSet::uniform_box(8, -1e6, 1e6), x0, cfg);
  EXPECT_EQ(free.values, boxed.values);
  ASSERT_EQ(free.iterates.size(), boxed.iterates.size());
  for (std::size_t i = 0; i < free.iterates.size(); ++i) EXPECT_EQ(free.iterates[i].x, boxed.iterates[i].x);
}

TEST(RscMuRunTest, IteratesStayFeasibleAndFollowGradientMap) {
  const auto p = zopt::make_least_squares(5, 12, 0.1, 8);
  const auto set = FeasibleSet::uniform_box(12, -0.5, 0.5);
  const double h = zopt::theorem_step_size(ProblemMode::constrained, 12, p.lip_const());
  auto cfg = make_config(1e-6, 12, 3, h, 2000, 100);
  cfg.lip_const = p.lip_const();
  std::vector<Vector> xs;
  const auto rec = zopt::rsc_mu_run(p.objective(), set, Vector::Zero(12), cfg,
                                    [&](std::size_t, const Vector& x, double) { xs.push_back(x); });
  for (const auto& s : rec.iterates) EXPECT_TRUE(set.contains(s.x));
  std::size_t infeasible = 0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    infeasible += !set.contains(xs[k + 1]);
    const Vector g = zopt::oracle_eval(p.objective(), xs[k], zopt::sample_direction(cfg.oracle, k), cfg.oracle);
    const Vector s_k = zopt::gradient_map(set, xs[k], g, h);
    ASSERT_LE((xs[k + 1] - (xs[k] - h * s_k)).norm(), 1e-10 * (1 + xs[k].norm())) << k;
  }
  EXPECT_EQ(infeasible, 0u);
}

TEST(RscMuRunTest, RejectsUnboundedSetAndInfeasibleStart) {
  const auto cfg = make_config(0.1, 1, 1, 0.1, 1);
  EXPECT_THROW(zopt::rsc_mu_run(scalar_square(), FeasibleSet::whole_space(1), Vector::Zero(1), cfg),
               zopt::ConfigError);
  EXPECT_THROW(zopt::rsc_mu_run(scalar_square(), FeasibleSet::uniform_box(1, 0, 1), Vector::Constant(1, 2.0), cfg),
               zopt::InfeasiblePointError);
}

TEST(SolverConfigTest, WarnsWhenConstrainedStepExceedsInverseLipschitz) {
  auto cfg = make_config(0.1, 1, 1, 1.0, 1);
  cfg.lip_const = 2.0;
  EXPECT_FALSE(cfg.validate(ProblemMode::constrained).empty());
  cfg.step_size = 0.5;
  EXPECT_TRUE(cfg.validate(ProblemMode::constrained).empty());
}

zopt::RunRecord record_with_values(const std::vector<double>& values) {
  zopt::RunRecord rec;
  for (std::size_t k = 0; k < values.size(); ++k)
    rec.iterates.push_back({k, Vector::Constant(1, static_cast<double>(k)), values[k]});
  return rec;
}

TEST(BestIterateTest, TiesBreakToEarliest) {
  const auto best = zopt::best_iterate(record_with_values({3, 1, 1, 2}));
  EXPECT_EQ(best.k, 1u);
  EXPECT_EQ(best.value, 1.0);
}

TEST(BestIterateTest, SingleAndConstant) {
  EXPECT_EQ(zopt::best_iterate(record_with_values({4})).k, 0u);
  EXPECT_EQ(zopt::best_iterate(record_with_values({2, 2, 2})).k, 0u);
  EXPECT_THROW(zopt::best_iterate(zopt::RunRecord{}), zopt::ConfigError);
}

TEST(SuggestParamsTest, ConstrainedByHand) {
  const auto s = zopt::suggest_params(ProblemMode::constrained, 0.01, 1, 2.0, 2.0, 1.0);
  EXPECT_NEAR(s.mu, 6.25e-4, 1e-18);
  EXPECT_EQ(s.num_iters, 100u);
}

TEST(SuggestParamsTest, UnconstrainedByHand) {
  // sqrt(2 * 0.01) / (8 * 2) and ceil(4 * 2 / (2 * 0.01))
  const auto s = zopt::suggest_params(ProblemMode::unconstrained, 0.01, 4, 2.0, 2.0);
  EXPECT_NEAR(s.mu, std::sqrt(0.02) / 16.0, 1e-16);
  EXPECT_EQ(s.num_iters, 400u);
}

TEST(SuggestParamsTest, HalvingEpsDoublesIterations) {
  for (auto mode : {ProblemMode::unconstrained, ProblemMode::constrained}) {
    const auto a = zopt::suggest_params(mode, 0.25, 10, 3.0, 0.75, 2.0);
    const auto b = zopt::suggest_params(mode, 0.125, 10, 3.0, 0.75, 2.0);
    EXPECT_EQ(b.num_iters, 2 * a.num_iters);
    EXPECT_LT(b.mu, a.mu);
  }
}

TEST(SuggestParamsTest, PublishedScenarioOrderOfMagnitude) {
  const auto p = zopt::make_least_squares(100, 1000, 0.1, 1);
  const auto s = zopt::suggest_params(ProblemMode::unconstrained, 0.01, 1000, p.lip_const(), p.pl_const());
  EXPECT_GT(s.mu, 1e-8);
  EXPECT_LT(s.mu, 1e-6);
  EXPECT_GT(s.num_iters, 20000u);
  EXPECT_LT(s.num_iters, 2000000u);
}

TEST(SuggestParamsTest, RejectsBadInputs) {
  EXPECT_THROW(zopt::suggest_params(ProblemMode::unconstrained, 0.0, 1, 1, 1), zopt::ConfigError);
  EXPECT_THROW(zopt::suggest_params(ProblemMode::constrained, 0.1, 1, 1, 1), zopt::ConfigError);
  EXPECT_THROW(zopt::suggest_params(ProblemMode::constrained, 0.1, 1, 1, 1,
                                    std::numeric_limits<double>::infinity()),
               zopt::ConfigError);
}

TEST(TheoremStepSizeTest, Values) {
  EXPECT_DOUBLE_EQ(zopt::theorem_step_size(ProblemMode::unconstrained, 1, 2.0), 0.025);
  EXPECT_DOUBLE_EQ(zopt::theorem_step_size(ProblemMode::constrained, 1, 2.0), 0.5);
}

}  // namespace
