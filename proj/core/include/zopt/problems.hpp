#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include "zopt/objective.hpp"
#include "zopt/types.hpp"

namespace zopt {

/// Certified constants of f(x) = ||Ax - b||^2.
struct ProblemConstants {
  double lip_const = 0.0;       // 2 * lambda_max(A^T A)
  double pl_const = 0.0;        // 2 * smallest nonzero eigenvalue of A A^T
  double norm_pl_const = 0.0;  // 2 * ||A^T||^2, kept for comparison only
  double opt_value = 0.0;       // residual of the minimum-norm solution
  Vector min_norm_solution;
  std::size_t rank = 0;
};

/// Singular values below kRankTolerance * sigma_max are treated as zero.
inline constexpr double kRankTolerance = 1e-10;

/// Computes the constants from an SVD of A. Throws DegenerateProblemError
/// when A has rank 0.
ProblemConstants problem_constants(const Matrix& a, const Vector& b);

/// Least-squares test instance f(x) = ||Ax - b||^2 with its analytic
/// gradient. The gradient is for analysis code only; solvers receive
/// objective() and nothing else.
///
/// The instance is immutable and cheap to copy (A and b are shared).
class TestProblem {
 public:
  TestProblem(Matrix a, Vector b, std::uint64_t seed = 0, double noise_std = 0.0);

  const ObjectiveFn& objective() const noexcept { return objective_; }
  double value(const Vector& x) const { return objective_(x); }
  Vector grad(const Vector& x) const;

  const Matrix& a() const noexcept { return data_->a; }
  const Vector& b() const noexcept { return data_->b; }
  std::size_t m() const noexcept { return static_cast<std::size_t>(data_->a.rows()); }
  std::size_t n() const noexcept { return static_cast<std::size_t>(data_->a.cols()); }

  double lip_const() const noexcept { return constants_.lip_const; }
  double pl_const() const noexcept { return constants_.pl_const; }
  double norm_pl_const() const noexcept { return constants_.norm_pl_const; }
  double opt_value() const noexcept { return constants_.opt_value; }
  const Vector& min_norm_solution() const noexcept { return constants_.min_norm_solution; }
  std::size_t rank() const noexcept { return constants_.rank; }
  const ProblemConstants& constants() const noexcept { return constants_; }

  std::uint64_t seed() const noexcept { return seed_; }
  double noise_std() const noexcept { return noise_std_; }

  /// Human-readable description of argmin f.
  std::string opt_point_set_note() const;

 private:
  struct Data {
    Matrix a;
    Vector b;
  };
  std::shared_ptr<const Data> data_;
  ObjectiveFn objective_;
  ProblemConstants constants_;
  std::uint64_t seed_;
  double noise_std_;
};

/// Rows of A and the planted point are i.i.d. standard normal; b = A x_bar + w
/// with w ~ N(0, noise_std^2). Requires n >= m >= 1.
TestProblem make_least_squares(std::size_t m, std::size_t n, double noise_std,
                               std::uint64_t seed);

struct PlReport {
  double min_ratio;         // min of 0.5 ||grad||^2 / (f - f*) over evaluated points
  std::size_t violations;   // points with ratio < pl_const * (1 - 1e-9)
  std::size_t evaluated;
  std::size_t skipped;      // f - f* < 1e-12
};

using GradientFn = std::function<Vector(const Vector&)>;

/// PL certificate at num_points standard-normal points.
PlReport check_pl(const ObjectiveFn& f, const GradientFn& grad, double pl_const,
                  double opt_value, std::size_t num_points, std::uint64_t seed);
PlReport check_pl(const TestProblem& problem, std::size_t num_points,
                  std::uint64_t seed);

/// Text format, row-major:
///   zopt-problem 1
///   m <m> n <n> seed <seed> noise_std <s>
///   <m lines of A>
///   <1 line of b>
/// Values are written with 17 significant digits so a reload is exact.
void save_problem(const TestProblem& problem, std::ostream& out);
TestProblem load_problem(std::istream& in);

}  // namespace zopt
