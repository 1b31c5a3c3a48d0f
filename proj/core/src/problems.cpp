#include "zopt/problems.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "zopt/errors.hpp"
#include "zopt/rng.hpp"

namespace zopt {

ProblemConstants problem_constants(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw DimensionError("b must have one entry per row of A");
  if (a.size() == 0) throw DegenerateProblemError("A is empty");

  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  if (!(smax > 0.0)) throw DegenerateProblemError("A has rank 0");

  const double cutoff = kRankTolerance * smax;
  std::size_t rank = 0;
  double smin_pos = smax;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) {
      ++rank;
      smin_pos = sv[i];
    }
  }

  ProblemConstants c;
  c.rank = rank;
  c.lip_const = 2.0 * smax * smax;
  c.pl_const = 2.0 * smin_pos * smin_pos;
  c.norm_pl_const = 2.0 * smax * smax;

  const auto r = static_cast<Eigen::Index>(rank);
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  const Vector coeff = (u.leftCols(r).transpose() * b).cwiseQuotient(sv.head(r));
  c.min_norm_solution = v.leftCols(r) * coeff;
  c.opt_value = (a * c.min_norm_solution - b).squaredNorm();
  return c;
}

TestProblem::TestProblem(Matrix a, Vector b, std::uint64_t seed, double noise_std)
    : data_(std::make_shared<const Data>(Data{std::move(a), std::move(b)})),
      objective_(static_cast<std::size_t>(data_->a.cols()),
                 [data = data_](const Vector& x) {
                   return (data->a * x - data->b).squaredNorm();
                 }),
      constants_(problem_constants(data_->a, data_->b)),
      seed_(seed),
      noise_std_(noise_std) {}

Vector TestProblem::grad(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != n()) {
    throw DimensionError("gradient point has wrong dimension");
  }
  return 2.0 * (data_->a.transpose() * (data_->a * x - data_->b));
}

std::string TestProblem::opt_point_set_note() const {
  std::ostringstream note;
  if (rank() == n()) {
    note << "unique minimizer (A has full column rank " << rank() << ")";
  } else {
    note << "affine set x_mn + null(A), dim " << (n() - rank())
         << ", x_mn = minimum-norm least-squares solution";
  }
  return note.str();
}

TestProblem make_least_squares(std::size_t m, std::size_t n, double noise_std,
                               std::uint64_t seed) {
  if (m == 0 || n < m) throw ConfigError("make_least_squares requires n >= m >= 1");
  if (!(noise_std >= 0.0)) throw ConfigError("noise_std must be nonnegative");

  // Separate streams for A, x_bar and the noise keep each piece stable if the
  // others change shape.
  StreamRng rng_a(seed, 0);
  StreamRng rng_x(seed, 1);
  StreamRng rng_w(seed, 2);

  const auto rows = static_cast<Eigen::Index>(m);
  const auto cols = static_cast<Eigen::Index>(n);
  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = rng_a.normal();

  Vector x_bar(cols);
  for (Eigen::Index j = 0; j < cols; ++j) x_bar[j] = rng_x.normal();

  Vector b = a * x_bar;
  for (Eigen::Index i = 0; i < rows; ++i) b[i] += noise_std * rng_w.normal();

  return TestProblem(std::move(a), std::move(b), seed, noise_std);
}

PlReport check_pl(const ObjectiveFn& f, const GradientFn& grad, double pl_const,
                  double opt_value, std::size_t num_points, std::uint64_t seed) {
  PlReport report{std::numeric_limits<double>::infinity(), 0, 0, 0};
  const double threshold = pl_const * (1.0 - 1e-9);
  for (std::size_t p = 0; p < num_points; ++p) {
    StreamRng rng(seed, p);
    Vector x(f.dim());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.normal();
    const double gap = f(x) - opt_value;
    if (gap < 1e-12) {
      ++report.skipped;
      continue;
    }
    const double ratio = 0.5 * grad(x).squaredNorm() / gap;
    report.min_ratio = std::min(report.min_ratio, ratio);
    if (ratio < threshold) ++report.violations;
    ++report.evaluated;
  }
  return report;
}

PlReport check_pl(const TestProblem& problem, std::size_t num_points,
                  std::uint64_t seed) {
  return check_pl(
      problem.objective(), [&problem](const Vector& x) { return problem.grad(x); },
      problem.pl_const(), problem.opt_value(), num_points, seed);
}

void save_problem(const TestProblem& problem, std::ostream& out) {
  out << "zopt-problem 1\n";
  out << "m " << problem.m() << " n " << problem.n() << " seed " << problem.seed()
      << " noise_std " << std::setprecision(17) << problem.noise_std() << '\n';
  out << std::setprecision(17);
  const Matrix& a = problem.a();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out << (j ? " " : "") << a(i, j);
    out << '\n';
  }
  const Vector& b = problem.b();
  for (Eigen::Index i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
  out << '\n';
}

TestProblem load_problem(std::istream& in) {
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (!in || magic != "zopt-problem" || version != 1) {
    throw ConfigError("not a zopt-problem v1 file");
  }
  std::string km, kn, ks, kw;
  std::size_t m = 0, n = 0;
  std::uint64_t seed = 0;
  double noise = 0.0;
  in >> km >> m >> kn >> n >> ks >> seed >> kw >> noise;
  if (!in || km != "m" || kn != "n" || ks != "seed" || kw != "noise_std") {
    throw ConfigError("malformed zopt-problem header");
  }
  Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) in >> a(i, j);
  Vector b(static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < b.size(); ++i) in >> b[i];
  if (!in) throw ConfigError("truncated zopt-problem body");
  return TestProblem(std::move(a), std::move(b), seed, noise);
}

}  // namespace zopt
