#pragma once

#include <Eigen/Dense>

namespace spinrelay {

/// Matrix exponential by Pade approximation with scaling and squaring
/// (degrees 3/5/7/9/13, chosen from the 1-norm).
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

}  // namespace spinrelay
