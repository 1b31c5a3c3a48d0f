#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>

#include "zopt/objective.hpp"
#include "zopt/types.hpp"

namespace zopt {

/// Smoothing configuration for the Gaussian random oracle.
///
/// Directions are drawn from N(0, B^-1). B must be symmetric positive
/// definite; it is factored once (B = L L^T) at construction and the factor is
/// shared between copies. When no B is given the identity is used and no
/// factorization is stored.
///
/// The smoothing kernel exp(-||u||^2 / 2) is read with the B-weighted norm
/// <Bu, u>, which is what makes the normalizer carry det(B) and the
/// covariance equal B^-1.
class OracleConfig {
 public:
  /// B = I.
  OracleConfig(double mu, std::size_t dim, std::uint64_t seed);

  /// General SPD B. Throws ConfigError if mu <= 0, B is not square,
  /// not symmetric (relative 1e-12), or the Cholesky factorization fails.
  OracleConfig(double mu, Matrix b_matrix, std::uint64_t seed);

  double mu() const noexcept { return mu_; }
  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool identity_b() const noexcept { return factor_ == nullptr; }

  /// Dense copy of B (identity when identity_b()).
  Matrix b_matrix() const;

  /// B * v without materializing B in the identity case.
  Vector apply_b(const Vector& v) const;

  /// Solves L^T u = z, so that u ~ N(0, B^-1) when z ~ N(0, I).
  Vector whiten(const Vector& z) const;

  OracleConfig with_seed(std::uint64_t seed) const;
  OracleConfig with_mu(double mu) const;

 private:
  struct Factor;

  double mu_;
  std::size_t dim_;
  std::uint64_t seed_;
  std::shared_ptr<const Factor> factor_;
};

/// A sampled smoothing direction u.
struct Direction {
  Vector u;
};

/// Draws the direction for stream `counter` of cfg.seed(). Deterministic in
/// (seed, counter).
Direction sample_direction(const OracleConfig& cfg, std::uint64_t counter);

/// g = ((f(x + mu u) - f(x)) / mu) * B u. Exactly two evaluations of f.
/// Throws EvaluationError on a non-finite function value.
Vector oracle_eval(const ObjectiveFn& f, const Vector& x, const Direction& u,
                   const OracleConfig& cfg);

struct OracleSample {
  Vector g;
  double f_shifted;  // f(x + mu u)
};

/// Same estimator when f(x) is already known; costs one evaluation.
OracleSample oracle_eval_at(const ObjectiveFn& f, const Vector& x, double f_x,
                            const Direction& u, const OracleConfig& cfg);

enum class SmoothMode { value, gradient };

/// Monte Carlo estimate with per-coordinate standard errors.
/// In value mode `mean` and `std_err` have size 1.
struct SmoothEstimate {
  Vector mean;
  Vector std_err;
  std::size_t num_samples = 0;
};

/// Estimates f_mu(x) (value mode) or grad f_mu(x) (gradient mode) from
/// num_samples directions drawn with counters first_counter,
/// first_counter + 1, ... Requires num_samples >= 2.
SmoothEstimate smooth_estimate(const ObjectiveFn& f, const Vector& x,
                               const OracleConfig& cfg,
                               std::size_t num_samples, SmoothMode mode,
                               std::uint64_t first_counter = 0);

}  // namespace zopt
