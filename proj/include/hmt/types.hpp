#pragma once

#include <Eigen/Core>

namespace hmt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

} // namespace hmt
