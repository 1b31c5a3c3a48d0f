#include "zopt/oracle.hpp"

#include <cmath>
#include <utility>

#include "zopt/errors.hpp"
#include "zopt/rng.hpp"

namespace zopt {

struct OracleConfig::Factor {
  Matrix b;
  Eigen::LLT<Matrix> llt;
};

namespace {

void check_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw ConfigError("smoothing parameter mu must be positive and finite");
  }
}

double checked_value(double v, const char* where) {
  if (!std::isfinite(v)) {
    throw EvaluationError(std::string("non-finite objective value at ") + where);
  }
  return v;
}

}  // namespace

OracleConfig::OracleConfig(double mu, std::size_t dim, std::uint64_t seed)
    : mu_(mu), dim_(dim), seed_(seed) {
  check_mu(mu);
  if (dim == 0) throw ConfigError("oracle dimension must be positive");
}

OracleConfig::OracleConfig(double mu, Matrix b_matrix, std::uint64_t seed)
    : mu_(mu), dim_(static_cast<std::size_t>(b_matrix.rows())), seed_(seed) {
  check_mu(mu);
  if (b_matrix.rows() != b_matrix.cols() || b_matrix.rows() == 0) {
    throw ConfigError("B must be a nonempty square matrix");
  }
  const double scale = std::max(1.0, b_matrix.cwiseAbs().maxCoeff());
  if ((b_matrix - b_matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ConfigError("B must be symmetric");
  }
  auto factor = std::make_shared<Factor>();
  factor->b = std::move(b_matrix);
  factor->llt.compute(factor->b);
  if (factor->llt.info() != Eigen::Success) {
    throw ConfigError("B is not positive definite (Cholesky factorization failed)");
  }
  factor_ = std::move(factor);
}

Matrix OracleConfig::b_matrix() const {
  if (!factor_) return Matrix::Identity(dim_, dim_);
  return factor_->b;
}

Vector OracleConfig::apply_b(const Vector& v) const {
  if (!factor_) return v;
  return factor_->b * v;
}

Vector OracleConfig::whiten(const Vector& z) const {
  if (!factor_) return z;
  return factor_->llt.matrixU().solve(z);
}

OracleConfig OracleConfig::with_seed(std::uint64_t seed) const {
  OracleConfig copy = *this;
  copy.seed_ = seed;
  return copy;
}

OracleConfig OracleConfig::with_mu(double mu) const {
  check_mu(mu);
  OracleConfig copy = *this;
  copy.mu_ = mu;
  return copy;
}

Direction sample_direction(const OracleConfig& cfg, std::uint64_t counter) {
  StreamRng rng(cfg.seed(), counter);
  Vector z(cfg.dim());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  return Direction{cfg.whiten(z)};
}

OracleSample oracle_eval_at(const ObjectiveFn& f, const Vector& x, double f_x,
                            const Direction& u, const OracleConfig& cfg) {
  if (x.size() != u.u.size() || static_cast<std::size_t>(x.size()) != cfg.dim()) {
    throw DimensionError("oracle: x, u and B dimensions differ");
  }
  checked_value(f_x, "x");
  const double mu = cfg.mu();
  const double f_shift = checked_value(f(x + mu * u.u), "x + mu*u");
  const double slope = (f_shift - f_x) / mu;
  return OracleSample{slope * cfg.apply_b(u.u), f_shift};
}

Vector oracle_eval(const ObjectiveFn& f, const Vector& x, const Direction& u,
                   const OracleConfig& cfg) {
  return oracle_eval_at(f, x, f(x), u, cfg).g;
}

SmoothEstimate smooth_estimate(const ObjectiveFn& f, const Vector& x,
                               const OracleConfig& cfg,
                               std::size_t num_samples, SmoothMode mode,
                               std::uint64_t first_counter) {
  if (num_samples < 2) {
    throw ConfigError("smooth_estimate needs at least 2 samples");
  }
  const Eigen::Index width = mode == SmoothMode::value ? 1 : x.size();
  // Welford running mean / M2 per coordinate.
  Vector mean = Vector::Zero(width);
  Vector m2 = Vector::Zero(width);
  const double f_x = mode == SmoothMode::gradient ? checked_value(f(x), "x") : 0.0;

  Vector sample(width);
  for (std::size_t s = 0; s < num_samples; ++s) {
    const Direction u = sample_direction(cfg, first_counter + s);
    if (mode == SmoothMode::value) {
      sample[0] = checked_value(f(x + cfg.mu() * u.u), "x + mu*u");
    } else {
      sample = oracle_eval_at(f, x, f_x, u, cfg).g;
    }
    const double count = static_cast<double>(s + 1);
    const Vector delta = sample - mean;
    mean += delta / count;
    m2 += delta.cwiseProduct(sample - mean);
  }
  const double n = static_cast<double>(num_samples);
  Vector std_err = (m2 / (n - 1.0) / n).cwiseSqrt();
  return SmoothEstimate{std::move(mean), std::move(std_err), num_samples};
}

}  // namespace zopt
