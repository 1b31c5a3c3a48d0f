#include "zopt/sets.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "zopt/errors.hpp"

namespace zopt {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

FeasibleSet::FeasibleSet(std::size_t dim, std::variant<WholeSpace, Box, Ball> shape)
    : dim_(dim), shape_(std::move(shape)) {
  if (dim_ == 0) throw ConfigError("feasible set dimension must be positive");
}

FeasibleSet FeasibleSet::whole_space(std::size_t dim) { return FeasibleSet(dim, WholeSpace{}); }

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size()) throw DimensionError("box bounds differ in size");
  if (!(lower.array() < upper.array()).all()) {
    throw ConfigError("box requires lower < upper in every coordinate");
  }
  const auto dim = static_cast<std::size_t>(lower.size());
  return FeasibleSet(dim, Box{std::move(lower), std::move(upper)});
}

FeasibleSet FeasibleSet::uniform_box(std::size_t dim, double lo, double hi) {
  const auto n = static_cast<Eigen::Index>(dim);
  return box(Vector::Constant(n, lo), Vector::Constant(n, hi));
}

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("ball radius must be positive and finite");
  }
  const auto dim = static_cast<std::size_t>(center.size());
  return FeasibleSet(dim, Ball{std::move(center), radius});
}

FeasibleSet::Kind FeasibleSet::kind() const noexcept {
  return std::visit(Overloaded{[](const WholeSpace&) { return Kind::whole_space; },
                               [](const Box&) { return Kind::box; },
                               [](const Ball&) { return Kind::ball; }},
                    shape_);
}

Vector FeasibleSet::project(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim_) {
    throw DimensionError("projection point has wrong dimension");
  }
  return std::visit(
      Overloaded{[&](const WholeSpace&) -> Vector { return x; },
                 [&](const Box& b) -> Vector {
                   return x.cwiseMax(b.lower).cwiseMin(b.upper);
                 },
                 [&](const Ball& b) -> Vector {
                   const Vector d = x - b.center;
                   const double norm = d.norm();
                   if (norm <= b.radius) return x;
                   return b.center + (b.radius / norm) * d;
                 }},
      shape_);
}

bool FeasibleSet::contains(const Vector& x, double tol) const {
  if (static_cast<std::size_t>(x.size()) != dim_) return false;
  return std::visit(
      Overloaded{[&](const WholeSpace&) { return x.allFinite(); },
                 [&](const Box& b) {
                   return ((x.array() >= b.lower.array() - tol) &&
                           (x.array() <= b.upper.array() + tol))
                       .all();
                 },
                 [&](const Ball& b) { return (x - b.center).norm() <= b.radius + tol; }},
      shape_);
}

double FeasibleSet::diameter() const {
  return std::visit(
      Overloaded{[](const WholeSpace&) { return std::numeric_limits<double>::infinity(); },
                 [](const Box& b) { return (b.upper - b.lower).norm(); },
                 [](const Ball& b) { return 2.0 * b.radius; }},
      shape_);
}

std::string FeasibleSet::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{[&](const WholeSpace&) { out << "whole_space dim=" << dim_; },
                        [&](const Box& b) {
                          const bool uniform =
                              (b.lower.array() == b.lower[0]).all() &&
                              (b.upper.array() == b.upper[0]).all();
                          out << "box dim=" << dim_;
                          if (uniform) out << " [" << b.lower[0] << ", " << b.upper[0] << "]";
                        },
                        [&](const Ball& b) {
                          out << "ball dim=" << dim_ << " radius=" << b.radius;
                        }},
             shape_);
  return out.str();
}

Vector gradient_map(const FeasibleSet& set, const Vector& x, const Vector& g,
                    double h) {
  if (!(h > 0.0)) throw ConfigError("gradient_map step h must be positive");
  if (g.size() != x.size()) throw DimensionError("gradient_map: x and g differ in size");
  if (!set.contains(x)) throw InfeasiblePointError("gradient_map: x is not in the set");
  // Identity projection: skip the round trip through x - h g.
  if (set.kind() == FeasibleSet::Kind::whole_space) return g;
  return (x - set.project(x - h * g)) / h;
}

}  // namespace zopt
