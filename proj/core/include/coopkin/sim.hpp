#pragma once

#include <coopkin/config.hpp>
#include <coopkin/ik.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace coopkin {

/// Differential IK resolution used by the alignment simulation.
///  - cts:           12-D task [v_a; v_r] = [0; v_r] through the CTS joint Jacobian
///  - ects:          task-space split via invert_ects, then per-arm IK
///  - relative:      minimum-norm relative Jacobian solution (plus optional secondary)
///  - asym_relative: relative Jacobian primary with the asymmetric secondary
///  - per_arm:       symmetric split resolved by each arm separately
enum class Method { cts, ects, relative, asym_relative, per_arm };

enum class TaskKind { translational, rotational, custom_target };

struct SecondaryTask {
  enum class Kind { none, end_effector_1, asym_relative, raw_joint_velocity };
  Kind kind{Kind::none};
  Twist6 twist;        // payload for end_effector_1
  JointVector joints;  // payload for raw_joint_velocity
  double alpha{0.5};   // payload for asym_relative
};

struct SimConfig {
  double dt{0.005};
  double duration{10.0};
  Method method{Method::asym_relative};
  double alpha{0.5};
  GainMatrix Kp{GainMatrix::identity()};
  TaskKind task{TaskKind::translational};
  SecondaryTask secondary;
  JointVector seed_joints;
  SolveOptions solve;

  /// Ablation switch: apply the asymmetric secondary directly as the primary
  /// task, skipping the nullspace projection.
  bool primary_only{false};

  /// Run ends when sqrt(|p~|^2 + |xi~|^2) drops below this, or at duration.
  double stop_tolerance{1e-6};

  /// Initial object poses. The translational task places both frames with
  /// identity orientation at target_p1/target_p2; the rotational task puts
  /// them at the midpoint of the two targets with a relative rotation of
  /// rotation_angle about rotation_axis. custom_target keeps the offsets
  /// from the robot description.
  ///
  /// The default displacement of pi/15 is the largest round value whose
  /// quaternion-feedback error (effective angular rate sin(theta/2), about
  /// half the position-loop rate at unit gain) still drops below 1e-3 within
  /// ten seconds.
  Vec3 target_p1{0.36, 0.15, 0.36};
  Vec3 target_p2{0.45, 0.0, 0.21};
  Vec3 rotation_axis{0.0, 0.0, 1.0};
  double rotation_angle{M_PI / 15.0};
};

struct StepRecord {
  double t{0.0};
  JointVector q;
  JointVector qdot;
  Pose pose_o1;
  Pose pose_o2;
  Vec3 p_tilde{Vec3::Zero()};   // p_o2 - p_o1
  Vec3 xi_tilde{Vec3::Zero()};  // error-quaternion vector part (frame o1)
  Pose absolute;                // CTS absolute frame of the object poses
  Twist6 v_o1;                  // realized object twists W J qdot
  Twist6 v_o2;
  double asym{0.5};
  double asym_linear{0.5};
  double asym_angular{0.5};
  double cumulative_qdot_norm{0.0};  // integral of |qdot| dt up to this state

  double pos_error() const { return p_tilde.norm(); }
  double rot_error() const { return xi_tilde.norm(); }
};

struct SimLog {
  std::vector<StepRecord> records;
  double dt{0.0};
  bool converged{false};
  std::string termination;  // "converged" or "duration"
  std::vector<std::string> warnings;

  double joint_path_norm() const {
    return records.empty() ? 0.0 : records.back().cumulative_qdot_norm;
  }
  double mean_asymmetry() const;
  double max_pos_error() const;
  double max_rot_error() const;
};

/// Thrown when a run aborts on a rank-deficient solve; carries the step index.
class SimulationAbort : public std::runtime_error {
 public:
  SimulationAbort(const std::string &msg, int step)
      : std::runtime_error(msg), step(step) {}
  int step;
};

/// Rebuilds the object offsets so that at the seed configuration the object
/// poses realize exactly the displacement configured by cfg.task.
DualArmSystem with_task_offsets(const DualArmSystem &sys, const JointVector &seed,
                                const SimConfig &cfg);

/// Fixed-step alignment run: at every step the relative task twist is
/// computed from the current object poses, resolved to joint velocities by
/// cfg.method, and integrated with explicit Euler. Logs floor(duration/dt)+1
/// records unless the error converges first.
SimLog run_alignment(const DualArmSystem &sys, const SimConfig &cfg);

struct MethodSummary {
  std::string name;
  Method method;
  double alpha{0.5};
  bool converged{false};
  int steps{0};
  double final_pos_error{0.0};
  double final_rot_error{0.0};
  double joint_path_norm{0.0};
  double mean_asymmetry{0.5};
  double absolute_displacement{0.0};    // |p_abs(end) - p_abs(0)|
  double absolute_rotation_angle{0.0};  // angle between initial/final abs frames
};

std::string method_name(Method m);

/// Runs every method on the same task and collects the comparison metrics.
/// Runs are independent and execute concurrently.
std::vector<MethodSummary> compare_methods(const DualArmSystem &sys,
                                           const SimConfig &cfg,
                                           const std::vector<Method> &methods);

MethodSummary summarize(const SimLog &log, Method method, double alpha);

// --- one-dimensional two-point system ---------------------------------------

/// Two points on a line tracking the relative command p1 - p2 while a
/// secondary task -K p1 regulates the first point, yielding the autonomous
/// system  [p1'; p2'] = 1/2 [[-(K+1), 1], [1-K, -1]] [p1; p2].
struct PointSystemConfig {
  double K{1.0};  // secondary gain, >= 0 (0 is the symmetric limit)
  double p1_0{0.0};
  double p2_0{1.0};
  double dt{1e-3};
  double duration{10.0};
};

struct PointRecord {
  double t{0.0};
  double p1{0.0}, p2{0.0};
  double dp1{0.0}, dp2{0.0};
  double alpha{0.5};   // |p2'| / (|p1'| + |p2'|)
  double pa_dot{0.0};  // induced absolute velocity (p1' + p2') / 2
};

struct PointTrace {
  double K{0.0};
  std::vector<PointRecord> records;  // one per integration step
};

/// Explicit-Euler integration of the two-point system. Records one row per
/// step taken (a zero-duration run produces no rows).
PointTrace run_point_example(const PointSystemConfig &cfg);

// --- CSV persistence ---------------------------------------------------------

/// Thrown on filesystem failures while writing artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes an alignment log: header plus one row per record. Floats carry 17
/// significant digits so values round-trip bit-exactly. Columns: step, t,
/// q[2n], qdot[2n], then 26 metric columns (p~, xi~, absolute frame position
/// and rotation angle, both object twists, the three asymmetry measures and
/// the cumulative joint path norm).
void write_csv(const SimLog &log, const std::string &path);

/// Point-system trace: t, p1, p2, dp1, dp2, alpha, pa_dot.
void write_csv(const PointTrace &trace, const std::string &path);

/// Combined asymmetry traces of several point runs: t, alpha_K<K>...
void write_alpha_csv(const std::vector<PointTrace> &traces, const std::string &path);

/// Method-comparison summary as CSV and as an aligned text table.
void write_summary_csv(const std::vector<MethodSummary> &rows, const std::string &path);
std::string format_summary_table(const std::vector<MethodSummary> &rows);

}  // namespace coopkin
