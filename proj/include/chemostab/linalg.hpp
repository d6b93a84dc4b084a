#pragma once

#include <Eigen/Dense>

namespace chemostab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace chemostab
