#pragma once

#include <coopkin/chain.hpp>
#include <coopkin/coop.hpp>

#include <stdexcept>

namespace coopkin {

enum class RankPolicy { error_on_deficient, damped_continue };

/// Thrown when a pseudo-inverse is requested on a row-rank-deficient matrix
/// under RankPolicy::error_on_deficient.
class RankDeficiencyError : public std::runtime_error {
 public:
  RankDeficiencyError(const std::string &msg, int rank, double smallest_retained)
      : std::runtime_error(msg), rank(rank), smallest_retained(smallest_retained) {}

  int rank;
  double smallest_retained;  // smallest singular value kept by the tolerance
};

struct SolveOptions {
  /// Singular values below svd_tolerance * sigma_max count as zero.
  double svd_tolerance{1e-10};
  /// Damped least squares factor; 0 gives the exact pseudo-inverse.
  double damping{0.0};
  RankPolicy rank_policy{RankPolicy::error_on_deficient};
};

/// Moore-Penrose pseudo-inverse by SVD. With damping > 0 returns the damped
/// inverse V * diag(s / (s^2 + damping^2)) * U^T instead.
Eigen::MatrixXd pinv(const Eigen::MatrixXd &M, const SolveOptions &opts = {});

/// Numerical row/column rank under the same tolerance rule as pinv.
int numerical_rank(const Eigen::MatrixXd &M, double svd_tolerance = 1e-10);

/// Joint-space cooperative Jacobians: linking map composed with the stacked
/// screw transform and the block Jacobian at q. per_arm denotes the plain
/// object-frame block Jacobian W * J with no linking map applied.
enum class CoopJacobianKind { cts, ects, relative, asym_relative, per_arm };

struct CoopJacobian {
  CoopJacobianKind kind;
  double alpha;
  Eigen::MatrixXd matrix;  // 12 x 2n or 6 x 2n
};

CoopJacobian coop_jacobian(const DualArmSystem &sys, const JointVector &q,
                           CoopJacobianKind kind, CoopParam alpha = CoopParam(0.5));

/// Task-priority resolution q' = J+ v + (I - J+ J) zeta: the secondary joint
/// velocity zeta is filtered through the nullspace of the primary task.
JointVector solve_priority(const Eigen::MatrixXd &J_primary, const Vec6 &v_primary,
                           const JointVector &zeta, const SolveOptions &opts = {});
JointVector solve_priority(const Eigen::MatrixXd &J_primary,
                           const Eigen::VectorXd &v_primary, const JointVector &zeta,
                           const SolveOptions &opts = {});

/// Secondary task commanding a twist for end-effector 1: zeta = [J1 0]+ v1.
/// The right-arm entries of the result are zero.
JointVector secondary_end_effector_1(const DualArmSystem &sys, const JointVector &q,
                                     const Twist6 &v1_desired,
                                     const SolveOptions &opts = {});

/// Secondary task distributing a relative twist with asymmetry alpha:
/// zeta = Jr(alpha)+ vr.
JointVector secondary_asym_relative(const DualArmSystem &sys, const JointVector &q,
                                    const Twist6 &v_r, CoopParam alpha,
                                    const SolveOptions &opts = {});

/// Symmetric positive definite 6x6 gain.
class GainMatrix {
 public:
  explicit GainMatrix(const Mat6 &K);
  static GainMatrix identity() { return GainMatrix(Mat6::Identity()); }
  static GainMatrix diagonal(double linear_gain, double angular_gain);
  const Mat6 &matrix() const { return K_; }

 private:
  Mat6 K_;
};

/// Pose-regulation feedback for a relative alignment task:
/// v_r = -Kp [p_o2 - p_o1; R_o1 * xi], with xi the vector part of the error
/// quaternion of R_o1^T R_o2 (shortest rotation). All twists are expressed in
/// the base frame.
Twist6 relative_task_twist(const Pose &pose_o1, const Pose &pose_o2,
                           const GainMatrix &Kp);

/// Resolves a relative task through each arm separately:
/// q' = J+ W^-1 Lr+ v_r (include_screw = true expresses the task at the
/// object frames; false matches the plain end-effector form J+ Lr+ v_r).
/// No cross-arm nullspace mixing occurs, so no non-commanded absolute motion
/// is introduced at the twist level.
JointVector resolve_per_arm(const DualArmSystem &sys, const JointVector &q,
                            const Twist6 &v_r, const SolveOptions &opts = {},
                            bool include_screw = true);

}  // namespace coopkin
