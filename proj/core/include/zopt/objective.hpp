#pragma once

#include <cstddef>
#include <functional>
#include <utility>

#include "zopt/types.hpp"

namespace zopt {

/// Black-box objective: value-only access to f : R^n -> R.
///
/// The wrapped callable must be deterministic. Solvers never see anything
/// beyond this interface.
class ObjectiveFn {
 public:
  using Eval = std::function<double(const Vector&)>;

  ObjectiveFn(std::size_t dim, Eval eval);

  std::size_t dim() const noexcept { return dim_; }

  /// Throws DimensionError when x.size() != dim().
  double operator()(const Vector& x) const;

 private:
  std::size_t dim_;
  Eval eval_;
};

}  // namespace zopt
