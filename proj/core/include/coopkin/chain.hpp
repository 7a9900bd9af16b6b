#pragma once

#include <coopkin/geometry.hpp>

#include <string>
#include <vector>

namespace coopkin {

enum class JointKind { revolute, prismatic };

/// One row of a classic (distal) Denavit-Hartenberg table.
struct DHRow {
  double a{0.0};             // link length [m]
  double alpha{0.0};         // link twist [rad]
  double d{0.0};             // link offset [m]
  double theta_offset{0.0};  // joint angle offset [rad]
  JointKind kind{JointKind::revolute};
};

struct JointLimit {
  double lo{0.0};
  double hi{0.0};
};

/// Kinematic description of one serial manipulator. The end-effector frame
/// is the last DH frame composed with tool_offset.
struct SerialChain {
  std::string name;
  Pose base_pose;
  std::vector<DHRow> rows;
  std::vector<JointLimit> limits;
  Pose tool_offset;

  int dof() const { return static_cast<int>(rows.size()); }
};

/// Two manipulators in a common base frame plus the rigid object frames
/// {h_o1}, {h_o2} attached to their end-effectors. Index 1 is the left arm.
struct DualArmSystem {
  SerialChain left;
  SerialChain right;
  Pose object_offset_left;   // {h_o1} expressed in {h_1}
  Pose object_offset_right;  // {h_o2} expressed in {h_2}

  int dof() const { return left.dof() + right.dof(); }
};

/// Pose of the end-effector frame in the base frame.
Pose forward_kinematics(const SerialChain &chain, const JointVector &q);

/// Origins and z axes of every joint frame, needed by the geometric Jacobian.
/// frames[j] is the pose reached after applying rows 0..j-1 (frames[0] is the
/// base pose), so joint j acts about frames[j].
std::vector<Pose> joint_frames(const SerialChain &chain, const JointVector &q);

/// Base-frame geometric Jacobian (6 x n): column j is [z_j x (p_e - p_j); z_j]
/// for a revolute joint and [z_j; 0] for a prismatic one.
Eigen::MatrixXd geometric_jacobian(const SerialChain &chain, const JointVector &q);

/// Joint-limit check. Limits are advisory: violations are reported, not
/// enforced.
std::vector<std::string> check_limits(const SerialChain &chain, const JointVector &q);

/// Splits a stacked [q1; q2] vector into the per-arm parts.
std::pair<JointVector, JointVector> split_joints(const DualArmSystem &sys,
                                                 const JointVector &q);

/// End-effector poses (h_1, h_2) at q.
std::pair<Pose, Pose> end_effector_poses(const DualArmSystem &sys, const JointVector &q);

/// Object-frame poses (h_o1, h_o2) at q.
std::pair<Pose, Pose> object_poses(const DualArmSystem &sys, const JointVector &q);

/// Virtual sticks r_i = p_oi - p_i at q, expressed in the base frame.
std::pair<Vec3, Vec3> virtual_sticks(const DualArmSystem &sys, const JointVector &q);

/// Block-diagonal [J1 0; 0 J2] of the two geometric Jacobians (12 x 2n).
Eigen::MatrixXd block_jacobian(const DualArmSystem &sys, const JointVector &q);

/// Block-diagonal screw transform W = diag(W1, W2) built from the virtual
/// sticks at the current configuration (12 x 12).
Mat12 stacked_screw(const DualArmSystem &sys, const JointVector &q);

}  // namespace coopkin
