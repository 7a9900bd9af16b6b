#include <coopkin/chain.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace coopkin {

namespace {

void require_length(const SerialChain &chain, const JointVector &q) {
  if (q.size() != chain.dof()) {
    std::ostringstream msg;
    msg << "joint vector length " << q.size() << " does not match chain '"
        << chain.name << "' with " << chain.dof() << " joints";
    throw std::invalid_argument(msg.str());
  }
}

// Classic DH step: Rz(theta) Tz(d) Tx(a) Rx(alpha), with the joint variable
// entering theta (revolute) or d (prismatic).
Pose dh_step(const DHRow &row, double qj) {
  const double theta = row.theta_offset + (row.kind == JointKind::revolute ? qj : 0.0);
  const double d = row.d + (row.kind == JointKind::prismatic ? qj : 0.0);
  const double ct = std::cos(theta * 0.5), st = std::sin(theta * 0.5);
  const double ca = std::cos(row.alpha * 0.5), sa = std::sin(row.alpha * 0.5);

  Pose step;
  step.position = Vec3(row.a * std::cos(theta), row.a * std::sin(theta), d);
  step.orientation = UnitQuat(ct, 0.0, 0.0, st) * UnitQuat(ca, sa, 0.0, 0.0);
  return step;
}

}  // namespace

Pose forward_kinematics(const SerialChain &chain, const JointVector &q) {
  require_length(chain, q);
  Pose T = chain.base_pose;
  for (int j = 0; j < chain.dof(); ++j) T = T * dh_step(chain.rows[j], q[j]);
  return T * chain.tool_offset;
}

std::vector<Pose> joint_frames(const SerialChain &chain, const JointVector &q) {
  require_length(chain, q);
  std::vector<Pose> frames;
  frames.reserve(chain.dof() + 1);
  Pose T = chain.base_pose;
  frames.push_back(T);
  for (int j = 0; j < chain.dof(); ++j) {
    T = T * dh_step(chain.rows[j], q[j]);
    frames.push_back(T);
  }
  return frames;
}

Eigen::MatrixXd geometric_jacobian(const SerialChain &chain, const JointVector &q) {
  const std::vector<Pose> frames = joint_frames(chain, q);
  const Vec3 p_e = (frames.back() * chain.tool_offset).position;

  Eigen::MatrixXd J(6, chain.dof());
  for (int j = 0; j < chain.dof(); ++j) {
    const Vec3 z = frames[j].rotation().col(2);
    if (chain.rows[j].kind == JointKind::revolute) {
      J.col(j).head<3>() = z.cross(p_e - frames[j].position);
      J.col(j).tail<3>() = z;
    } else {
      J.col(j).head<3>() = z;
      J.col(j).tail<3>().setZero();
    }
  }
  return J;
}

std::vector<std::string> check_limits(const SerialChain &chain, const JointVector &q) {
  require_length(chain, q);
  std::vector<std::string> violations;
  const int nl = static_cast<int>(chain.limits.size());
  for (int j = 0; j < chain.dof() && j < nl; ++j) {
    if (q[j] < chain.limits[j].lo || q[j] > chain.limits[j].hi) {
      std::ostringstream msg;
      msg << chain.name << " joint " << (j + 1) << " = " << q[j]
          << " outside [" << chain.limits[j].lo << ", " << chain.limits[j].hi << "]";
      violations.push_back(msg.str());
    }
  }
  return violations;
}

std::pair<JointVector, JointVector> split_joints(const DualArmSystem &sys,
                                                 const JointVector &q) {
  if (q.size() != sys.dof()) {
    std::ostringstream msg;
    msg << "joint vector length " << q.size() << " does not match dual-arm system with "
        << sys.dof() << " joints";
    throw std::invalid_argument(msg.str());
  }
  return {q.head(sys.left.dof()), q.tail(sys.right.dof())};
}

std::pair<Pose, Pose> end_effector_poses(const DualArmSystem &sys, const JointVector &q) {
  const auto [q1, q2] = split_joints(sys, q);
  return {forward_kinematics(sys.left, q1), forward_kinematics(sys.right, q2)};
}

std::pair<Pose, Pose> object_poses(const DualArmSystem &sys, const JointVector &q) {
  const auto [ee1, ee2] = end_effector_poses(sys, q);
  return {ee1 * sys.object_offset_left, ee2 * sys.object_offset_right};
}

std::pair<Vec3, Vec3> virtual_sticks(const DualArmSystem &sys, const JointVector &q) {
  const auto [ee1, ee2] = end_effector_poses(sys, q);
  const Pose o1 = ee1 * sys.object_offset_left;
  const Pose o2 = ee2 * sys.object_offset_right;
  return {o1.position - ee1.position, o2.position - ee2.position};
}

Eigen::MatrixXd block_jacobian(const DualArmSystem &sys, const JointVector &q) {
  const auto [q1, q2] = split_joints(sys, q);
  const int n1 = sys.left.dof(), n2 = sys.right.dof();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(12, n1 + n2);
  J.block(0, 0, 6, n1) = geometric_jacobian(sys.left, q1);
  J.block(6, n1, 6, n2) = geometric_jacobian(sys.right, q2);
  return J;
}

Mat12 stacked_screw(const DualArmSystem &sys, const JointVector &q) {
  const auto [r1, r2] = virtual_sticks(sys, q);
  Mat12 W = Mat12::Identity();
  W.block<6, 6>(0, 0) = screw_transform(r1);
  W.block<6, 6>(6, 6) = screw_transform(r2);
  return W;
}

}  // namespace coopkin
