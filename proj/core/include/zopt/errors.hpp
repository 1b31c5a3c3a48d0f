#pragma once

#include <stdexcept>
#include <string>

namespace zopt {

/// Invalid construction parameters (non-SPD B, mu <= 0, bad set bounds, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vector or matrix sizes that do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The objective returned a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point required to lie in the feasible set does not.
class InfeasiblePointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Structurally degenerate input, e.g. an all-zero data matrix.
class DegenerateProblemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace zopt
