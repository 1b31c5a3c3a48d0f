#pragma once

#include <Eigen/Dense>

namespace zopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class ProblemMode { unconstrained, constrained };

}  // namespace zopt
