#include <coopkin/ik.hpp>

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace coopkin {

namespace {

struct SvdPinv {
  Eigen::MatrixXd inverse;
  int rank{0};
  double smallest_retained{0.0};
};

SvdPinv svd_pinv(const Eigen::MatrixXd &M, const SolveOptions &opts) {
  if (!(opts.svd_tolerance > 0.0 && opts.svd_tolerance < 1.0))
    throw std::invalid_argument("svd_tolerance must lie in (0, 1)");
  if (!(opts.damping >= 0.0) || !std::isfinite(opts.damping))
    throw std::invalid_argument("damping must be finite and non-negative");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd &sigma = svd.singularValues();
  const double cutoff = sigma.size() ? opts.svd_tolerance * sigma[0] : 0.0;

  SvdPinv out;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sigma.size());
  const double lambda2 = opts.damping * opts.damping;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > cutoff && sigma[i] > 0.0) {
      inv[i] = lambda2 > 0.0 ? sigma[i] / (sigma[i] * sigma[i] + lambda2) : 1.0 / sigma[i];
      ++out.rank;
      out.smallest_retained = sigma[i];
    }
  }
  out.inverse = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return out;
}

Eigen::MatrixXd checked_pinv(const Eigen::MatrixXd &M, const SolveOptions &opts,
                             const char *context) {
  const SvdPinv result = svd_pinv(M, opts);
  if (opts.rank_policy == RankPolicy::error_on_deficient && result.rank < M.rows()) {
    std::ostringstream msg;
    msg << context << ": matrix is row-rank deficient (rank " << result.rank << " of "
        << M.rows() << ", smallest retained singular value " << result.smallest_retained
        << ")";
    throw RankDeficiencyError(msg.str(), result.rank, result.smallest_retained);
  }
  return result.inverse;
}

}  // namespace

Eigen::MatrixXd pinv(const Eigen::MatrixXd &M, const SolveOptions &opts) {
  return checked_pinv(M, opts, "pinv");
}

int numerical_rank(const Eigen::MatrixXd &M, double svd_tolerance) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const Eigen::VectorXd &sigma = svd.singularValues();
  const double cutoff = sigma.size() ? svd_tolerance * sigma[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma[i] > cutoff && sigma[i] > 0.0) ++rank;
  return rank;
}

CoopJacobian coop_jacobian(const DualArmSystem &sys, const JointVector &q,
                           CoopJacobianKind kind, CoopParam alpha) {
  const Eigen::MatrixXd J = block_jacobian(sys, q);
  const Mat12 W = stacked_screw(sys, q);
  const Eigen::MatrixXd WJ = W * J;

  CoopJacobian out{kind, alpha.value(), {}};
  switch (kind) {
    case CoopJacobianKind::cts:
      out.matrix = linking(LinkKind::cts).matrix * WJ;
      out.alpha = 0.5;
      break;
    case CoopJacobianKind::ects:
      out.matrix = linking(LinkKind::ects, alpha).matrix * WJ;
      break;
    case CoopJacobianKind::relative:
      out.matrix = linking(LinkKind::relative).matrix * WJ;
      out.alpha = 0.5;
      break;
    case CoopJacobianKind::asym_relative:
      out.matrix = linking(LinkKind::asym_relative, alpha).matrix * WJ;
      break;
    case CoopJacobianKind::per_arm:
      out.matrix = WJ;
      break;
  }
  return out;
}

JointVector solve_priority(const Eigen::MatrixXd &J_primary, const Vec6 &v_primary,
                           const JointVector &zeta, const SolveOptions &opts) {
  return solve_priority(J_primary, Eigen::VectorXd(v_primary), zeta, opts);
}

JointVector solve_priority(const Eigen::MatrixXd &J_primary,
                           const Eigen::VectorXd &v_primary, const JointVector &zeta,
                           const SolveOptions &opts) {
  if (v_primary.size() != J_primary.rows())
    throw std::invalid_argument("solve_priority: task dimension mismatch");
  if (zeta.size() != J_primary.cols())
    throw std::invalid_argument("solve_priority: zeta dimension mismatch");

  const Eigen::MatrixXd Jp = checked_pinv(J_primary, opts, "solve_priority");
  const JointVector particular = Jp * v_primary;
  // (I - J+ J) zeta without materializing the projector
  return particular + zeta - Jp * (J_primary * zeta);
}

JointVector secondary_end_effector_1(const DualArmSystem &sys, const JointVector &q,
                                     const Twist6 &v1_desired, const SolveOptions &opts) {
  const auto [q1, q2] = split_joints(sys, q);
  Eigen::MatrixXd J1row = Eigen::MatrixXd::Zero(6, sys.dof());
  J1row.leftCols(q1.size()) = geometric_jacobian(sys.left, q1);
  return checked_pinv(J1row, opts, "secondary_end_effector_1") * v1_desired.vec();
}

JointVector secondary_asym_relative(const DualArmSystem &sys, const JointVector &q,
                                    const Twist6 &v_r, CoopParam alpha,
                                    const SolveOptions &opts) {
  const CoopJacobian Jr = coop_jacobian(sys, q, CoopJacobianKind::asym_relative, alpha);
  return checked_pinv(Jr.matrix, opts, "secondary_asym_relative") * v_r.vec();
}

GainMatrix::GainMatrix(const Mat6 &K) : K_(K) {
  if (!K.isApprox(K.transpose(), 1e-12))
    throw std::invalid_argument("gain matrix must be symmetric");
  const Eigen::SelfAdjointEigenSolver<Mat6> eig(K);
  if (eig.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("gain matrix must be positive definite");
}

GainMatrix GainMatrix::diagonal(double linear_gain, double angular_gain) {
  Mat6 K = Mat6::Identity();
  K.topLeftCorner<3, 3>() *= linear_gain;
  K.bottomRightCorner<3, 3>() *= angular_gain;
  return GainMatrix(K);
}

Twist6 relative_task_twist(const Pose &pose_o1, const Pose &pose_o2,
                           const GainMatrix &Kp) {
  const UnitQuat err = quat_error(pose_o1.orientation, pose_o2.orientation);
  Vec6 e;
  e.head<3>() = pose_o2.position - pose_o1.position;
  e.tail<3>() = pose_o1.rotation() * err.xyz();
  return Twist6::from_vec(-Kp.matrix() * e);
}

JointVector resolve_per_arm(const DualArmSystem &sys, const JointVector &q,
                            const Twist6 &v_r, const SolveOptions &opts,
                            bool include_screw) {
  // Task-space split first, then each arm solves its own differential IK.
  Vec12 v = pinv_relative() * v_r.vec();
  if (include_screw) {
    const auto [r1, r2] = virtual_sticks(sys, q);
    v.head<6>() = screw_transform(-r1) * v.head<6>();
    v.tail<6>() = screw_transform(-r2) * v.tail<6>();
  }
  const auto [q1, q2] = split_joints(sys, q);
  JointVector qdot(sys.dof());
  qdot.head(q1.size()) =
      checked_pinv(geometric_jacobian(sys.left, q1), opts, "resolve_per_arm[left]") *
      v.head<6>();
  qdot.tail(q2.size()) =
      checked_pinv(geometric_jacobian(sys.right, q2), opts, "resolve_per_arm[right]") *
      v.tail<6>();
  return qdot;
}

}  // namespace coopkin
