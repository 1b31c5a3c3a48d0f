#include <benchmark/benchmark.h>

#include "zopt/oracle.hpp"
#include "zopt/problems.hpp"
#include "zopt/sets.hpp"
#include "zopt/solvers.hpp"

namespace {

using zopt::Vector;

void BM_SampleDirection(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const zopt::OracleConfig cfg(1e-6, n, 1);
  std::uint64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(zopt::sample_direction(cfg, k++));
}
BENCHMARK(BM_SampleDirection)->Arg(100)->Arg(1000);

void BM_OracleEval(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = zopt::make_least_squares(n / 10, n, 0.1, 1);
  const zopt::OracleConfig cfg(1e-6, n, 1);
  const Vector x = Vector::Ones(static_cast<Eigen::Index>(n));
  const auto u = zopt::sample_direction(cfg, 0);
  for (auto _ : state) benchmark::DoNotOptimize(zopt::oracle_eval(p.objective(), x, u, cfg));
}
BENCHMARK(BM_OracleEval)->Arg(100)->Arg(1000);

void BM_SolverIterations(benchmark::State& state) {
  const std::size_t n = 100, iters = 1000;
  const auto p = zopt::make_least_squares(20, n, 0.1, 1);
  zopt::SolverConfig cfg{zopt::OracleConfig(1e-6, n, 1)};
  cfg.step_size = zopt::theorem_step_size(zopt::ProblemMode::unconstrained, n, p.lip_const());
  cfg.num_iters = iters;
  cfg.record_stride = iters;
  const Vector x0 = Vector::Ones(n);
  for (auto _ : state) benchmark::DoNotOptimize(zopt::rs_mu_run(p.objective(), x0, cfg));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * iters));
}
BENCHMARK(BM_SolverIterations)->Unit(benchmark::kMillisecond);

void BM_ProjectBox(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto set = zopt::FeasibleSet::uniform_box(n, -0.5, 0.5);
  const Vector x = Vector::LinSpaced(static_cast<Eigen::Index>(n), -2.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(set.project(x));
}
BENCHMARK(BM_ProjectBox)->Arg(40)->Arg(1000);

void BM_ProjectBall(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto set = zopt::FeasibleSet::ball(Vector::Zero(static_cast<Eigen::Index>(n)), 1.0);
  const Vector x = Vector::LinSpaced(static_cast<Eigen::Index>(n), -2.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(set.project(x));
}
BENCHMARK(BM_ProjectBall)->Arg(40)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
