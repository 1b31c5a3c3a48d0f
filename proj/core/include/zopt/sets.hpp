#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "zopt/types.hpp"

namespace zopt {

/// Absolute per-coordinate slack for membership tests. Projections land
/// exactly on the boundary, so a strict test would flap.
inline constexpr double kMembershipTol = 1e-12;

struct WholeSpace {};

struct Box {
  Vector lower;
  Vector upper;
};

struct Ball {
  Vector center;
  double radius;
};

/// Closed convex set with an exact Euclidean projection.
class FeasibleSet {
 public:
  enum class Kind { whole_space, box, ball };

  static FeasibleSet whole_space(std::size_t dim);
  /// Requires lower < upper componentwise.
  static FeasibleSet box(Vector lower, Vector upper);
  /// [lo, hi]^dim.
  static FeasibleSet uniform_box(std::size_t dim, double lo, double hi);
  /// Requires radius > 0.
  static FeasibleSet ball(Vector center, double radius);

  Kind kind() const noexcept;
  std::size_t dim() const noexcept { return dim_; }
  const Box* as_box() const noexcept { return std::get_if<Box>(&shape_); }
  const Ball* as_ball() const noexcept { return std::get_if<Ball>(&shape_); }

  /// argmin_{z in X} ||z - x||^2. Throws DimensionError on size mismatch.
  Vector project(const Vector& x) const;

  bool contains(const Vector& x, double tol = kMembershipTol) const;

  /// max ||x - y|| over the set; +inf for the whole space.
  double diameter() const;

  std::string describe() const;

 private:
  FeasibleSet(std::size_t dim, std::variant<WholeSpace, Box, Ball> shape);

  std::size_t dim_;
  std::variant<WholeSpace, Box, Ball> shape_;
};

/// Gradient mapping (x - Proj(x - h g)) / h. Requires x in the set and h > 0;
/// throws InfeasiblePointError / ConfigError otherwise.
Vector gradient_map(const FeasibleSet& set, const Vector& x, const Vector& g,
                    double h);

}  // namespace zopt
