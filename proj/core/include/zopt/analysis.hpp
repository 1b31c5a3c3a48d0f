#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zopt/oracle.hpp"
#include "zopt/problems.hpp"
#include "zopt/sets.hpp"
#include "zopt/types.hpp"

namespace zopt {

/// Inputs to the convergence-bound formulas.
struct BoundInputs {
  std::size_t n = 0;
  double lip_const = 0.0;
  double pl_const = 0.0;
  double mu = 0.0;
  double initial_gap = 0.0;        // f(x_0) - f*
  std::optional<double> d_x;       // constrained only
  std::vector<double> sigma_seq;   // constrained only, sigma_k for k = 0, 1, ...

  /// Throws ConfigError unless n, L1, l > 0 and mu, gap, sigma_k >= 0.
  void validate() const;
};

/// Averaged-gap bound for the unconstrained scheme with h = 1/(4(n+4)L1):
///   (8(n+4)L1/l) [gap/(N+1) + 3 mu^2 (n+4) L1 / 32] + mu^2 L1^2 (n+6)^3 / (4l)
double theorem1_rhs(const BoundInputs& in, std::size_t num_iters);

/// Averaged-gap bound for the projected scheme with h = 1/L1:
///   (L1/l) gap/(N+1) + mu d_x L1^2 (n+3)^1.5 / (2l)
///   + L1 d_x / (l(N+1)) sum sigma_k + 1/(l(N+1)) sum sigma_k^2
/// Uses sigma_seq[0..N]; throws ConfigError if it is shorter than N+1 or
/// d_x is missing or infinite.
double theorem2_rhs(const BoundInputs& in, std::size_t num_iters);

/// theorem2_rhs at each checkpoint, sharing one prefix sum.
std::vector<double> theorem2_curve(const BoundInputs& in,
                                   const std::vector<std::size_t>& checkpoints);

enum class SmoothnessClass { c00, c11 };

/// Candidate for sigma^2, a bound on E||g_mu(x)||^2:
///   c00: L0^2 (n+4)^2
///   c11: mu^2 L1^2 (n+6)^3 / 2 + 2 (n+4) ||grad f(x)||^2
double sigma_bound(SmoothnessClass cls, double mu, std::size_t n, double lipschitz,
                   double grad_norm = 0.0);

/// -2a min_{z in X} { (a/2)||z - x||^2 + <vec, z - x> }, attained at
/// z* = Proj(x - vec/a). With vec = grad f(x) this is Q(x, a); with a realized
/// oracle output it is T(x, a). Throws InfeasiblePointError if x is not in X.
double prox_quantity(const FeasibleSet& set, const Vector& x, double a, const Vector& vec);

enum class ProxKind { q, t };

/// Q uses problem.grad(x) and ignores vec; T uses vec.
double prox_quantities(const TestProblem& problem, const FeasibleSet& set, const Vector& x,
                       double a, const Vector& vec, ProxKind which);

/// Minimum of f over the set, from accelerated projected gradient with the
/// analytic gradient. Reduces to problem.opt_value() on the whole space.
struct ReferenceMinimum {
  double value;
  Vector point;
  std::size_t iterations;
};
ReferenceMinimum constrained_opt_value(const TestProblem& problem, const FeasibleSet& set,
                                       std::size_t max_iters = 200000);

struct Estimate {
  double mean = 0.0;
  double std_err = 0.0;
};

/// Monte Carlo view of the oracle error at one feasible point x with step h.
/// xi = g_mu(x) - grad f_mu(x), s = P_X(x, g_mu, h), v = P_X(x, grad f_mu, h).
/// Quadratic problems only: grad f_mu = grad f exactly.
struct Diagnostics {
  Estimate xi_norm;          // E||xi||
  Estimate xi_norm_sq;       // E||xi||^2
  Estimate t_value;          // E T(x, 1/h)
  Vector s_mean;
  Vector s_std_err;
  Vector v;
  Estimate smoothed_grad_sq;  // ||grad f_mu(x)||^2 from the MC mean of g_mu
  Estimate grad_sq;           // ||grad f(x)||^2, exact (std_err 0)
  std::size_t samples = 0;
  std::size_t gh_violations = 0;  // draws with <xi, s - v> > ||xi||^2
  double gh_max_excess = 0.0;     // max of (<xi, s-v> - ||xi||^2) / scale
};

/// Relative slack for <xi, s - v> <= ||xi||^2. Both sides are computed through
/// projections and a 1/h division; see gh_tolerance() in analysis.cpp.
inline constexpr double kGhRelTol = 1e-10;

Diagnostics probe_diagnostics(const TestProblem& problem, const FeasibleSet& set,
                              const OracleConfig& cfg, const Vector& x, double h,
                              std::size_t num_samples, std::uint64_t first_counter);

/// Five standard errors for every Monte Carlo inequality.
inline constexpr double kStatMargin = 5.0;

struct LemmaReport {
  std::size_t probes = 0;
  std::size_t samples = 0;
  double step = 0.0;
  double opt_value = 0.0;

  // <xi, s - v> <= ||xi||^2, checked at every draw.
  std::size_t gh_checks = 0;
  std::size_t gh_violations = 0;
  double gh_max_excess = 0.0;

  // Empirical E||xi|| <= sqrt(E||xi||^2) per probe batch.
  std::size_t jensen_violations = 0;

  // E||xi|| <= sqrt(c11 candidate) + margin * SE.
  std::size_t sigma_violations = 0;

  // Informational: proximal-PL ratio 0.5 Q(x, L1) / (f(x) - f*) and the
  // operator-T lower bound evaluated with that empirical constant.
  double ppl_min_ratio = 0.0;
  std::size_t ppl_below_pl_const = 0;
  std::size_t ppl_evaluated = 0;
  std::size_t lemma2_violations = 0;

  bool passed() const noexcept {
    return gh_violations == 0 && jensen_violations == 0 && sigma_violations == 0;
  }
};

/// Runs the oracle-error inequality checks at num_probes random feasible points with
/// step h = 1/L1. Quadratic (least-squares) problems only.
LemmaReport verify_appendix_lemmas(const TestProblem& problem, const FeasibleSet& set,
                                   const OracleConfig& cfg, std::size_t num_probes,
                                   std::size_t num_samples, std::uint64_t seed);

/// Human-readable report.
void write_report(std::ostream& out, const LemmaReport& report);

/// CSV rows: check,probes,violations,margin
void write_report_csv(std::ostream& out, const LemmaReport& report);

}  // namespace zopt
