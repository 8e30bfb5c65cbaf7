#pragma once

#include <Eigen/Dense>

namespace fairmax {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace fairmax
