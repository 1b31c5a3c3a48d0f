// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and runtime limits are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>

#include "zopt/aggregate.hpp"
#include "zopt/analysis.hpp"
#include "zopt/config.hpp"
#include "zopt/experiment.hpp"
#include "zopt/oracle.hpp"
#include "zopt/problems.hpp"
#include "zopt/rng.hpp"
#include "zopt/sets.hpp"

namespace {

using zopt::Vector;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double time_limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit_s > 0 && secs > time_limit_s) {
    out.pass = false;
    out.detail += " [runtime limit " + std::to_string(time_limit_s) + " s exceeded]";
  }
  if (!out.pass) ++failures;
  std::printf("%s AC%d %s (%.2f s): %s\n", out.pass ? "PASS" : "FAIL", id, name, secs, out.detail.c_str());
  std::fflush(stdout);
}

Vector normal_vector(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  zopt::StreamRng rng(seed, stream);
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  return v;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Running-average gap against the bound column, with 3 cross-run standard errors of slack.
Outcome bound_dominance(const zopt::StepOutcome& st) {
  const auto& s = st.series;
  if (s.bound_rhs.size() != s.checkpoints.size() || s.avg_gap.size() != s.checkpoints.size()) {
    return {false, "missing bound or gap column"};
  }
  std::size_t bad = 0;
  double worst = -INFINITY;
  for (std::size_t i = 0; i < s.checkpoints.size(); ++i) {
    const double slack = s.bound_rhs[i] + 3.0 * s.avg_gap_se[i] - s.avg_gap[i];
    bad += !(slack >= 0.0);
    worst = std::max(worst, s.avg_gap[i] / s.bound_rhs[i]);
  }
  Outcome out{bad == 0 && st.completed_runs == s.num_runs && st.failures.empty(), ""};
  out.detail = std::to_string(bad) + " of " + std::to_string(s.checkpoints.size()) +
               " checkpoints violated, max gap/bound " + fmt("%.3g", worst) + ", " +
               std::to_string(st.completed_runs) + " runs completed";
  return out;
}

zopt::ExperimentConfig scenario1() {
  zopt::ExperimentConfig c;
  c.scenario = zopt::ProblemMode::unconstrained;
  c.m = 20;
  c.n = 100;
  c.noise_std = 0.1;
  c.problem_seed = 42;
  c.init_seed = 7;
  c.run_seed_base = 1000;
  c.eps = 0.1;
  c.num_iters = 20000;
  c.record_stride = 1000;
  c.num_runs = 25;
  return c;
}

zopt::ExperimentConfig scenario2() {
  zopt::ExperimentConfig c = scenario1();
  c.scenario = zopt::ProblemMode::constrained;
  c.m = 10;
  c.n = 40;
  c.problem_seed = 43;
  c.run_seed_base = 2000;
  c.set = zopt::SetSpec{};  // box [-0.5, 0.5]^n
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main() {
  const zopt::RunOptions no_files{8, ".", false, std::nullopt};

  criterion(1, "oracle unbiasedness", 5, [] {
    const std::size_t n = 10;
    const Vector a = normal_vector(n, 101, 0);
    const zopt::ObjectiveFn f(n, [a](const Vector& x) { return a.dot(x); });
    const auto est = zopt::smooth_estimate(f, normal_vector(n, 101, 1), zopt::OracleConfig(1e-3, n, 7),
                                           100000, zopt::SmoothMode::gradient);
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(est.mean[i] - a[i]) / est.std_err[i]);
    return Outcome{worst <= 5.0, fmt("max |mean - a| / SE = %.3f (limit 5)", worst)};
  });

  criterion(2, "second-moment bound", 30, [] {
    const auto p = zopt::make_least_squares(5, 10, 0.1, 2);
    const zopt::OracleConfig cfg(1e-4, 10, 3);
    const double n = 10, lip = p.lip_const(), mu = cfg.mu();
    std::size_t violations = 0;
    double worst = 0;
    for (std::uint64_t pt = 0; pt < 20; ++pt) {
      const Vector x = normal_vector(10, 4, pt);
      const double fx = p.value(x);
      double mean = 0;
      const int samples = 100000;
      for (int s = 0; s < samples; ++s) {
        const double g2 = zopt::oracle_eval_at(p.objective(), x, fx, zopt::sample_direction(cfg, s), cfg).g.squaredNorm();
        mean += (g2 - mean) / (s + 1);
      }
      const double bound = 4 * (n + 4) * p.grad(x).squaredNorm() + 3 * mu * mu * lip * lip * std::pow(n + 4, 3);
      violations += mean > 1.05 * bound;
      worst = std::max(worst, mean / bound);
    }
    return Outcome{violations == 0, std::to_string(violations) + " violations at 20 points, max E||g||^2 / bound " +
                                        fmt("%.3f (5%% slack)", worst)};
  });

  zopt::ExperimentResult s1;
  criterion(3, "theorem1_rhs dominance (m=20, n=100, N=20000, 25 runs)", 120, [&] {
    s1 = zopt::run_experiment(scenario1(), no_files);
    return bound_dominance(s1.steps.at(0));
  });

  criterion(4, "theorem2_rhs dominance and feasibility (m=10, n=40, box)", 120, [&] {
    const auto res = zopt::run_experiment(scenario2(), no_files);
    const auto& st = res.steps.at(0);
    Outcome out = bound_dominance(st);
    const std::size_t expected = 25 * 20001;
    const bool feasible = st.feasibility_violations == 0 && st.iterates_checked == expected;
    out.pass = out.pass && feasible;
    out.detail += "; " + std::to_string(st.feasibility_violations) + " feasibility violations in " +
                  std::to_string(st.iterates_checked) + " iterates";
    return out;
  });

  criterion(5, "oracle-error inequality suite", 60, [] {
    const auto p = zopt::make_least_squares(5, 10, 0.1, 1);
    const auto set = zopt::FeasibleSet::uniform_box(10, -0.5, 0.5);
    const auto r = zopt::verify_appendix_lemmas(p, set, zopt::OracleConfig(1e-4, 10, 1), 1000, 1000, 1);
    const bool pass = r.probes == 1000 && r.gh_violations == 0 && r.jensen_violations == 0;
    return Outcome{pass, std::to_string(r.gh_violations) + " inner-product violations in " +
                             std::to_string(r.gh_checks) + " draws, " + std::to_string(r.jensen_violations) +
                             " Jensen violations over " + std::to_string(r.probes) + " probes"};
  });

  criterion(6, "proximal-PL reduction on the whole space", 1, [] {
    const auto p = zopt::make_least_squares(5, 10, 0.1, 6);
    const auto set = zopt::FeasibleSet::whole_space(10);
    double worst = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
      const Vector x = normal_vector(10, 60, 2 * t);
      const Vector v = normal_vector(10, 60, 2 * t + 1);
      const double a = 0.5 + t % 7;
      const double q = zopt::prox_quantities(p, set, x, a, v, zopt::ProxKind::t);
      worst = std::max(worst, std::abs(q - v.squaredNorm()) / v.squaredNorm());
    }
    return Outcome{worst <= 1e-12, fmt("max relative error %.3g (limit 1e-12)", worst)};
  });

  criterion(7, "PL certificate on 10 instances", 10, [] {
    std::size_t violations = 0, evaluated = 0;
    double worst = INFINITY;
    for (std::uint64_t i = 0; i < 10; ++i) {
      const auto p = zopt::make_least_squares(5 + i, 8 + 3 * i, 0.1, 700 + i);
      const auto r = zopt::check_pl(p, 1000, 900 + i);
      violations += r.violations;
      evaluated += r.evaluated;
      worst = std::min(worst, r.min_ratio / p.pl_const());
    }
    return Outcome{violations == 0, std::to_string(violations) + " violations at " + std::to_string(evaluated) +
                                        " points, min ratio / l = " + fmt("%.6f", worst)};
  });

  criterion(8, "determinism regression (--jobs 1 vs 8 vs stored CSV)", 0, [] {
    const fs::path data = ZOPT_TEST_DATA_DIR;
    const auto cfg = zopt::parse_experiment_config(zopt::KeyValueFile::load((data / "pinned.cfg").string()));
    const fs::path work = fs::temp_directory_path() / "zopt_acceptance_pinned";
    fs::remove_all(work);
    const auto a = zopt::run_experiment(cfg, {1, work / "j1", true, std::nullopt});
    const auto b = zopt::run_experiment(cfg, {8, work / "j8", true, std::nullopt});
    const std::string golden = slurp(data / "pinned_golden.csv");
    const std::string ja = slurp(a.steps.at(0).csv_path);
    const std::string jb = slurp(b.steps.at(0).csv_path);
    fs::remove_all(work);
    const bool pass = !golden.empty() && ja == golden && jb == golden;
    return Outcome{pass, std::string("jobs=1 ") + (ja == golden ? "matches" : "differs") + ", jobs=8 " +
                             (jb == golden ? "matches" : "differs") + " (" + std::to_string(golden.size()) +
                             " bytes)"};
  });

  criterion(9, "progress toward the global minimum", 0, [&] {
    if (s1.steps.empty()) s1 = zopt::run_experiment(scenario1(), no_files);
    const auto& s = s1.steps.at(0).series;
    const double final_gap = s.mean_best_f.back() - s1.f_star;
    const double bound = s.bound_rhs.back();
    const double half_initial = 0.5 * (s1.initial_value - s1.f_star);
    return Outcome{final_gap <= bound && bound <= half_initial,
                   fmt("mean f(x_hat_N) - f* = %.3g <= bound %.4g <= 0.5 (f(x0) - f*) = %.4g", final_gap, bound,
                       half_initial)};
  });

  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
