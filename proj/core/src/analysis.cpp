#include "zopt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "zopt/errors.hpp"
#include "zopt/rng.hpp"

namespace zopt {

void BoundInputs::validate() const {
  if (n == 0 || !(lip_const > 0.0) || !(pl_const > 0.0)) {
    throw ConfigError("bound inputs: n, L1 and l must be positive");
  }
  if (!(mu >= 0.0) || !(initial_gap >= 0.0)) {
    throw ConfigError("bound inputs: mu and the initial gap must be nonnegative");
  }
  for (double s : sigma_seq) {
    if (!(s >= 0.0)) throw ConfigError("bound inputs: sigma_k must be nonnegative");
  }
}

double theorem1_rhs(const BoundInputs& in, std::size_t num_iters) {
  in.validate();
  const double n4 = static_cast<double>(in.n) + 4.0;
  const double n6 = static_cast<double>(in.n) + 6.0;
  const double lip = in.lip_const;
  const double l = in.pl_const;
  const double mu2 = in.mu * in.mu;
  const double count = static_cast<double>(num_iters) + 1.0;
  return (8.0 * n4 * lip / l) * (in.initial_gap / count + 3.0 * mu2 * n4 * lip / 32.0) +
         mu2 * lip * lip * n6 * n6 * n6 / (4.0 * l);
}

namespace {

double checked_diameter(const BoundInputs& in) {
  if (!in.d_x || !std::isfinite(*in.d_x) || !(*in.d_x > 0.0)) {
    throw ConfigError("constrained bound needs a finite positive diameter");
  }
  return *in.d_x;
}

double theorem2_from_sums(const BoundInputs& in, double d_x, std::size_t num_iters,
                          double sigma_sum, double sigma_sq_sum) {
  const double lip = in.lip_const;
  const double l = in.pl_const;
  const double n3 = static_cast<double>(in.n) + 3.0;
  const double count = static_cast<double>(num_iters) + 1.0;
  return (lip / l) * in.initial_gap / count +
         in.mu * d_x * lip * lip * std::pow(n3, 1.5) / (2.0 * l) +
         lip * d_x / (l * count) * sigma_sum + sigma_sq_sum / (l * count);
}

}  // namespace

double theorem2_rhs(const BoundInputs& in, std::size_t num_iters) {
  in.validate();
  const double d_x = checked_diameter(in);
  if (in.sigma_seq.size() < num_iters + 1) {
    throw ConfigError("theorem2_rhs: sigma_seq must cover k = 0..N");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k <= num_iters; ++k) {
    sum += in.sigma_seq[k];
    sum_sq += in.sigma_seq[k] * in.sigma_seq[k];
  }
  return theorem2_from_sums(in, d_x, num_iters, sum, sum_sq);
}

std::vector<double> theorem2_curve(const BoundInputs& in,
                                   const std::vector<std::size_t>& checkpoints) {
  in.validate();
  const double d_x = checked_diameter(in);
  std::vector<double> out;
  out.reserve(checkpoints.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t next = 0;  // first sigma index not yet summed
  for (std::size_t k : checkpoints) {
    if (k + 1 > in.sigma_seq.size()) {
      throw ConfigError("theorem2_curve: sigma_seq must cover every checkpoint");
    }
    if (k + 1 < next) throw ConfigError("theorem2_curve: checkpoints must be increasing");
    for (; next <= k; ++next) {
      sum += in.sigma_seq[next];
      sum_sq += in.sigma_seq[next] * in.sigma_seq[next];
    }
    out.push_back(theorem2_from_sums(in, d_x, k, sum, sum_sq));
  }
  return out;
}

double sigma_bound(SmoothnessClass cls, double mu, std::size_t n, double lipschitz,
                   double grad_norm) {
  if (!(mu >= 0.0) || !(lipschitz >= 0.0) || !(grad_norm >= 0.0)) {
    throw ConfigError("sigma_bound: inputs must be nonnegative");
  }
  const double nd = static_cast<double>(n);
  if (cls == SmoothnessClass::c00) {
    return lipschitz * lipschitz * (nd + 4.0) * (nd + 4.0);
  }
  const double n6 = nd + 6.0;
  return mu * mu * lipschitz * lipschitz * n6 * n6 * n6 / 2.0 +
         2.0 * (nd + 4.0) * grad_norm * grad_norm;
}

double prox_quantity(const FeasibleSet& set, const Vector& x, double a, const Vector& vec) {
  if (!(a > 0.0)) throw ConfigError("prox_quantity: a must be positive");
  if (vec.size() != x.size()) throw DimensionError("prox_quantity: x and vec differ in size");
  if (!set.contains(x)) throw InfeasiblePointError("prox_quantity: x is not in the set");
  if (set.kind() == FeasibleSet::Kind::whole_space) {
    // z* - x = -vec/a, and the bracket collapses to -||vec||^2 / (2a).
    return vec.squaredNorm();
  }
  const Vector step = set.project(x - vec / a) - x;
  return -2.0 * a * (0.5 * a * step.squaredNorm() + vec.dot(step));
}

double prox_quantities(const TestProblem& problem, const FeasibleSet& set, const Vector& x,
                       double a, const Vector& vec, ProxKind which) {
  if (which == ProxKind::q) return prox_quantity(set, x, a, problem.grad(x));
  return prox_quantity(set, x, a, vec);
}

ReferenceMinimum constrained_opt_value(const TestProblem& problem, const FeasibleSet& set,
                                       std::size_t max_iters) {
  if (set.dim() != problem.n()) throw DimensionError("set and problem dimensions differ");
  const Vector& x_mn = problem.min_norm_solution();
  if (set.kind() == FeasibleSet::Kind::whole_space || set.contains(x_mn)) {
    return ReferenceMinimum{problem.opt_value(), x_mn, 0};
  }

  // FISTA with gradient-based adaptive restart.
  const double step = 1.0 / problem.lip_const();
  Vector x = set.project(x_mn);
  Vector y = x;
  double t = 1.0;
  double best = problem.value(x);
  Vector best_x = x;
  std::size_t it = 0;
  for (; it < max_iters; ++it) {
    Vector x_next = set.project(y - step * problem.grad(y));
    const double f_next = problem.value(x_next);
    if (f_next < best) {
      best = f_next;
      best_x = x_next;
    }
    const Vector dx = x_next - x;
    if (dx.norm() <= 1e-15 * (1.0 + x.norm())) {
      x = std::move(x_next);
      break;
    }
    if ((y - x_next).dot(dx) > 0.0) {
      t = 1.0;
      y = x_next;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = x_next + ((t - 1.0) / t_next) * dx;
      t = t_next;
    }
    x = std::move(x_next);
  }
  best = std::max(best, problem.opt_value());
  return ReferenceMinimum{best, best_x, it};
}

namespace {

struct Welford {
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t count = 0;

  void add(double v) {
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }
  Estimate estimate() const {
    if (count < 2) return Estimate{mean, 0.0};
    const double c = static_cast<double>(count);
    return Estimate{mean, std::sqrt(m2 / (c - 1.0) / c)};
  }
};

Vector random_feasible_point(const FeasibleSet& set, std::uint64_t seed, std::uint64_t index) {
  StreamRng rng(seed, index);
  Vector x(static_cast<Eigen::Index>(set.dim()));
  if (const Box* box = set.as_box()) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      x[i] = box->lower[i] + (box->upper[i] - box->lower[i]) * rng.uniform();
    }
    return x;
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.normal();
  return set.project(x);
}

}  // namespace

Diagnostics probe_diagnostics(const TestProblem& problem, const FeasibleSet& set,
                              const OracleConfig& cfg, const Vector& x, double h,
                              std::size_t num_samples, std::uint64_t first_counter) {
  if (num_samples < 2) throw ConfigError("probe_diagnostics needs at least 2 samples");
  const ObjectiveFn& f = problem.objective();
  const Vector grad = problem.grad(x);
  const Vector v = gradient_map(set, x, grad, h);
  const double f_x = f(x);
  const auto dim = x.size();

  Welford xi_norm, xi_sq, t_val;
  Vector s_mean = Vector::Zero(dim), s_m2 = Vector::Zero(dim);
  Vector g_mean = Vector::Zero(dim), g_m2 = Vector::Zero(dim);

  Diagnostics out;
  for (std::size_t j = 0; j < num_samples; ++j) {
    const Direction u = sample_direction(cfg, first_counter + j);
    const Vector g = oracle_eval_at(f, x, f_x, u, cfg).g;
    const Vector xi = g - grad;
    const Vector s = gradient_map(set, x, g, h);

    const double xi_n = xi.norm();
    const double lhs = xi.dot(s - v);
    const double rhs = xi.squaredNorm();
    // Rounding in s and v is of order eps * (||x|| + h||g||) / h.
    const double scale =
        xi_n * (xi_n + s.norm() + v.norm() + (x.norm() + 1.0) / h) + 1e-300;
    const double excess = (lhs - rhs) / scale;
    out.gh_max_excess = j == 0 ? excess : std::max(out.gh_max_excess, excess);
    if (excess > kGhRelTol) ++out.gh_violations;

    xi_norm.add(xi_n);
    xi_sq.add(rhs);
    t_val.add(prox_quantity(set, x, 1.0 / h, g));

    const double c = static_cast<double>(j + 1);
    Vector d = s - s_mean;
    s_mean += d / c;
    s_m2 += d.cwiseProduct(s - s_mean);
    d = g - g_mean;
    g_mean += d / c;
    g_m2 += d.cwiseProduct(g - g_mean);
  }
  const double count = static_cast<double>(num_samples);
  const Vector g_se = (g_m2 / (count - 1.0) / count).cwiseSqrt();

  out.xi_norm = xi_norm.estimate();
  out.xi_norm_sq = xi_sq.estimate();
  out.t_value = t_val.estimate();
  out.s_mean = std::move(s_mean);
  out.s_std_err = (s_m2 / (count - 1.0) / count).cwiseSqrt();
  out.v = v;
  out.smoothed_grad_sq = Estimate{
      g_mean.squaredNorm(),
      2.0 * std::sqrt(g_mean.cwiseProduct(g_mean).dot(g_se.cwiseProduct(g_se)))};
  out.grad_sq = Estimate{grad.squaredNorm(), 0.0};
  out.samples = num_samples;
  return out;
}

LemmaReport verify_appendix_lemmas(const TestProblem& problem, const FeasibleSet& set,
                                   const OracleConfig& cfg, std::size_t num_probes,
                                   std::size_t num_samples, std::uint64_t seed) {
  if (set.dim() != problem.n() || cfg.dim() != problem.n()) {
    throw DimensionError("verify: problem, set and oracle dimensions differ");
  }
  const double lip = problem.lip_const();
  const double h = 1.0 / lip;
  const double f_star = constrained_opt_value(problem, set).value;
  const double d_x = set.diameter();
  const std::size_t n = problem.n();

  LemmaReport report;
  report.probes = num_probes;
  report.samples = num_samples;
  report.step = h;
  report.opt_value = f_star;
  report.ppl_min_ratio = std::numeric_limits<double>::infinity();

  struct ProbeSummary {
    double gap;
    Estimate t;
    double xi_mean;
  };
  std::vector<ProbeSummary> summaries;
  summaries.reserve(num_probes);

  for (std::size_t p = 0; p < num_probes; ++p) {
    const Vector x = random_feasible_point(set, seed, p);
    const Diagnostics d = probe_diagnostics(problem, set, cfg, x, h, num_samples,
                                            static_cast<std::uint64_t>(p) * num_samples);
    report.gh_checks += d.samples;
    report.gh_violations += d.gh_violations;
    report.gh_max_excess =
        p == 0 ? d.gh_max_excess : std::max(report.gh_max_excess, d.gh_max_excess);

    if (d.xi_norm.mean > std::sqrt(d.xi_norm_sq.mean) * (1.0 + 1e-12)) {
      ++report.jensen_violations;
    }

    const double sigma =
        std::sqrt(sigma_bound(SmoothnessClass::c11, cfg.mu(), n, lip, std::sqrt(d.grad_sq.mean)));
    if (d.xi_norm.mean > sigma + kStatMargin * d.xi_norm.std_err) ++report.sigma_violations;

    const double gap = problem.value(x) - f_star;
    if (gap > 1e-12) {
      const double ratio = 0.5 * prox_quantity(set, x, lip, problem.grad(x)) / gap;
      report.ppl_min_ratio = std::min(report.ppl_min_ratio, ratio);
      if (ratio < problem.pl_const() * (1.0 - 1e-9)) ++report.ppl_below_pl_const;
      ++report.ppl_evaluated;
    }
    summaries.push_back(ProbeSummary{gap, d.t_value, d.xi_norm.mean});
  }

  if (std::isfinite(d_x) && report.ppl_evaluated > 0) {
    const double l_emp = std::min(problem.pl_const(), report.ppl_min_ratio);
    const double smoothing_term =
        cfg.mu() * lip * lip * std::pow(static_cast<double>(n) + 3.0, 1.5) * d_x;
    for (const auto& s : summaries) {
      const double lower = 2.0 * l_emp * std::max(s.gap, 0.0) - smoothing_term -
                           2.0 * lip * d_x * s.xi_mean;
      if (s.t.mean + kStatMargin * s.t.std_err < lower) ++report.lemma2_violations;
    }
  }
  return report;
}

void write_report(std::ostream& out, const LemmaReport& r) {
  out << "zopt verify: " << r.probes << " probes x " << r.samples << " samples, h = " << r.step
      << ", f* = " << r.opt_value << '\n';
  out << "  [" << (r.gh_violations == 0 ? "PASS" : "FAIL") << "] <xi, s - v> <= ||xi||^2: "
      << r.gh_violations << " violations in " << r.gh_checks
      << " draws (max scaled excess " << r.gh_max_excess << ")\n";
  out << "  [" << (r.jensen_violations == 0 ? "PASS" : "FAIL")
      << "] mean ||xi|| <= sqrt(mean ||xi||^2): " << r.jensen_violations << " violations\n";
  out << "  [" << (r.sigma_violations == 0 ? "PASS" : "FAIL")
      << "] mean ||xi|| <= sigma (c11 candidate, 5 SE): " << r.sigma_violations
      << " violations\n";
  out << "  [info] proximal-PL ratio 0.5 Q(x, L1) / (f - f*): min " << r.ppl_min_ratio
      << " over " << r.ppl_evaluated << " probes; " << r.ppl_below_pl_const
      << " below the unconstrained PL constant\n";
  out << "  [info] operator-T lower bound (empirical PPL constant, 5 SE): "
      << r.lemma2_violations << " violations\n";
  out << (r.passed() ? "PASS" : "FAIL") << '\n';
}

void write_report_csv(std::ostream& out, const LemmaReport& r) {
  out << "check,probes,violations,margin\n";
  out << "gh_inner_product," << r.probes << ',' << r.gh_violations << ',' << kGhRelTol << '\n';
  out << "jensen_ordering," << r.probes << ',' << r.jensen_violations << ",1e-12\n";
  out << "sigma_c11," << r.probes << ',' << r.sigma_violations << ',' << kStatMargin << '\n';
  out << "ppl_below_pl_const," << r.ppl_evaluated << ',' << r.ppl_below_pl_const << ",1e-9\n";
  out << "operator_t_lower_bound," << r.probes << ',' << r.lemma2_violations << ','
      << kStatMargin << '\n';
}

}  // namespace zopt
