#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace coopkin::testing {

// Closed-form matrix exponential of a real 2x2 matrix: write M = s I + B with
// B traceless, then exp(M) = e^s (cosh(mu) I + sinhc(mu) B) where
// mu^2 = -det(B). Handles oscillatory (mu^2 < 0) and defective (mu = 0) cases.
inline Eigen::Matrix2d expm2(const Eigen::Matrix2d &M) {
  const double s = 0.5 * M.trace();
  const Eigen::Matrix2d B = M - s * Eigen::Matrix2d::Identity();
  const double mu2 = -B.determinant();

  double c, sc;  // cosh(mu), sinh(mu)/mu continued through mu = 0
  if (mu2 > 0.0) {
    const double mu = std::sqrt(mu2);
    c = std::cosh(mu);
    sc = std::sinh(mu) / mu;
  } else if (mu2 < 0.0) {
    const double w = std::sqrt(-mu2);
    c = std::cos(w);
    sc = std::sin(w) / w;
  } else {
    c = 1.0;
    sc = 1.0;
  }
  return std::exp(s) * (c * Eigen::Matrix2d::Identity() + sc * B);
}

// Exact state of the two-point system at time t from the initial state.
inline Eigen::Vector2d point_system_exact(double K, const Eigen::Vector2d &p0,
                                          double t) {
  Eigen::Matrix2d A;
  A << -(K + 1.0), 1.0, 1.0 - K, -1.0;
  A *= 0.5;
  return expm2(A * t) * p0;
}

}  // namespace coopkin::testing
