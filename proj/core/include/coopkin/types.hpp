#pragma once

#include <Eigen/Dense>

namespace coopkin {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec12 = Eigen::Matrix<double, 12, 1>;
using Mat12 = Eigen::Matrix<double, 12, 12>;
using Mat6x12 = Eigen::Matrix<double, 6, 12>;
using Mat12x6 = Eigen::Matrix<double, 12, 6>;

/// Stacked joint values of one arm or of the whole dual-arm chain ([q1; q2]).
using JointVector = Eigen::VectorXd;

}  // namespace coopkin
