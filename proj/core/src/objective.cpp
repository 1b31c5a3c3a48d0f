#include "zopt/objective.hpp"

#include <sstream>

#include "zopt/errors.hpp"

namespace zopt {

ObjectiveFn::ObjectiveFn(std::size_t dim, Eval eval)
    : dim_(dim), eval_(std::move(eval)) {
  if (dim_ == 0) throw ConfigError("objective dimension must be positive");
  if (!eval_) throw ConfigError("objective callable is empty");
}

double ObjectiveFn::operator()(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim_) {
    std::ostringstream msg;
    msg << "objective expects dimension " << dim_ << ", got " << x.size();
    throw DimensionError(msg.str());
  }
  return eval_(x);
}

}  // namespace zopt
