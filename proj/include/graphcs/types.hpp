#pragma once

#include <Eigen/Core>

namespace graphcs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace graphcs
