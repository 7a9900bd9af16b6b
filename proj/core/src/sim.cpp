#include <coopkin/sim.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace coopkin {

namespace {

int planned_steps(double duration, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(duration >= 0.0)) throw std::invalid_argument("duration must be non-negative");
  // Tolerate representation error in duration/dt so that e.g. 10/0.005 -> 2000.
  return static_cast<int>(std::floor(duration / dt + 1e-9));
}

JointVector step_velocity(const DualArmSystem &sys, const JointVector &q,
                          const Twist6 &v_r, const SimConfig &cfg) {
  const CoopParam alpha(cfg.alpha);
  switch (cfg.method) {
    case Method::cts: {
      const CoopJacobian J = coop_jacobian(sys, q, CoopJacobianKind::cts);
      Vec12 v_task = Vec12::Zero();
      v_task.tail<6>() = v_r.vec();
      return pinv(J.matrix, cfg.solve) * v_task;
    }
    case Method::ects: {
      // Task-space split [v_a; v_r] = [0; v_r], then per-arm differential IK
      // on the object-frame twists.
      Vec12 v_task = Vec12::Zero();
      v_task.tail<6>() = v_r.vec();
      const Vec12 v_obj = invert_ects(alpha) * v_task;
      const auto [r1, r2] = virtual_sticks(sys, q);
      const auto [q1, q2] = split_joints(sys, q);
      const Vec6 v1 = screw_transform(-r1) * v_obj.head<6>();
      const Vec6 v2 = screw_transform(-r2) * v_obj.tail<6>();
      JointVector qdot(sys.dof());
      qdot.head(q1.size()) =
          pinv(geometric_jacobian(sys.left, q1), cfg.solve) * v1;
      qdot.tail(q2.size()) =
          pinv(geometric_jacobian(sys.right, q2), cfg.solve) * v2;
      return qdot;
    }
    case Method::relative: {
      const CoopJacobian Jr = coop_jacobian(sys, q, CoopJacobianKind::relative);
      switch (cfg.secondary.kind) {
        case SecondaryTask::Kind::none:
          return pinv(Jr.matrix, cfg.solve) * v_r.vec();
        case SecondaryTask::Kind::end_effector_1:
          return solve_priority(
              Jr.matrix, v_r.vec(),
              secondary_end_effector_1(sys, q, cfg.secondary.twist, cfg.solve),
              cfg.solve);
        case SecondaryTask::Kind::asym_relative:
          return solve_priority(Jr.matrix, v_r.vec(),
                                secondary_asym_relative(sys, q, v_r,
                                                        CoopParam(cfg.secondary.alpha),
                                                        cfg.solve),
                                cfg.solve);
        case SecondaryTask::Kind::raw_joint_velocity:
          return solve_priority(Jr.matrix, v_r.vec(), cfg.secondary.joints, cfg.solve);
      }
      break;
    }
    case Method::asym_relative: {
      const JointVector zeta = secondary_asym_relative(sys, q, v_r, alpha, cfg.solve);
      if (cfg.primary_only) return zeta;
      const CoopJacobian Jr = coop_jacobian(sys, q, CoopJacobianKind::relative);
      return solve_priority(Jr.matrix, v_r.vec(), zeta, cfg.solve);
    }
    case Method::per_arm:
      return resolve_per_arm(sys, q, v_r, cfg.solve);
  }
  throw std::logic_error("step_velocity: unhandled method");
}

StepRecord make_record(const DualArmSystem &sys, const JointVector &q,
                       const JointVector &qdot, double t, double cumulative) {
  StepRecord rec;
  rec.t = t;
  rec.q = q;
  rec.qdot = qdot;
  const auto [o1, o2] = object_poses(sys, q);
  rec.pose_o1 = o1;
  rec.pose_o2 = o2;
  rec.p_tilde = o2.position - o1.position;
  rec.xi_tilde = quat_error(o1.orientation, o2.orientation).xyz();
  rec.absolute = cooperative_frames(o1, o2, FrameConvention::cts).absolute;

  const Vec12 v_obj = stacked_screw(sys, q) * (block_jacobian(sys, q) * qdot);
  rec.v_o1 = Twist6::from_vec(v_obj.head<6>());
  rec.v_o2 = Twist6::from_vec(v_obj.tail<6>());
  rec.asym = asymmetry_measure(rec.v_o1, rec.v_o2);
  rec.asym_linear = asymmetry_measure_linear(rec.v_o1, rec.v_o2);
  rec.asym_angular = asymmetry_measure_angular(rec.v_o1, rec.v_o2);
  rec.cumulative_qdot_norm = cumulative;
  return rec;
}

}  // namespace

double SimLog::mean_asymmetry() const {
  if (records.empty()) return 0.5;
  double sum = 0.0;
  for (const StepRecord &r : records) sum += r.asym;
  return sum / static_cast<double>(records.size());
}

double SimLog::max_pos_error() const {
  double m = 0.0;
  for (const StepRecord &r : records) m = std::max(m, r.pos_error());
  return m;
}

double SimLog::max_rot_error() const {
  double m = 0.0;
  for (const StepRecord &r : records) m = std::max(m, r.rot_error());
  return m;
}

DualArmSystem with_task_offsets(const DualArmSystem &sys, const JointVector &seed,
                                const SimConfig &cfg) {
  if (cfg.task == TaskKind::custom_target) return sys;

  Pose target1, target2;
  if (cfg.task == TaskKind::translational) {
    target1 = Pose{cfg.target_p1, UnitQuat::identity()};
    target2 = Pose{cfg.target_p2, UnitQuat::identity()};
  } else {
    const Vec3 mid = 0.5 * (cfg.target_p1 + cfg.target_p2);
    const Vec3 axis = cfg.rotation_axis.normalized();
    target1 = Pose{mid, UnitQuat::from_rotation(rot_of(axis, -0.5 * cfg.rotation_angle))};
    target2 = Pose{mid, UnitQuat::from_rotation(rot_of(axis, +0.5 * cfg.rotation_angle))};
  }

  const auto [ee1, ee2] = end_effector_poses(sys, seed);
  DualArmSystem adjusted = sys;
  adjusted.object_offset_left = ee1.inverse() * target1;
  adjusted.object_offset_right = ee2.inverse() * target2;
  return adjusted;
}

SimLog run_alignment(const DualArmSystem &sys_in, const SimConfig &cfg) {
  if (cfg.seed_joints.size() != sys_in.dof())
    throw std::invalid_argument("run_alignment: seed joint vector does not match system");
  if (!(cfg.duration >= cfg.dt) && cfg.duration != 0.0)
    throw std::invalid_argument("run_alignment: duration must be 0 or >= dt");

  const DualArmSystem sys = with_task_offsets(sys_in, cfg.seed_joints, cfg);

  SimLog log;
  log.dt = cfg.dt;
  const auto [q1, q2] = split_joints(sys, cfg.seed_joints);
  for (const std::string &w : check_limits(sys.left, q1)) log.warnings.push_back(w);
  for (const std::string &w : check_limits(sys.right, q2)) log.warnings.push_back(w);

  const int steps = planned_steps(cfg.duration, cfg.dt);
  JointVector q = cfg.seed_joints;
  double cumulative = 0.0;

  for (int k = 0;; ++k) {
    const auto [o1, o2] = object_poses(sys, q);
    const Twist6 v_r = relative_task_twist(o1, o2, cfg.Kp);

    JointVector qdot;
    try {
      qdot = step_velocity(sys, q, v_r, cfg);
    } catch (const RankDeficiencyError &e) {
      throw SimulationAbort(std::string(e.what()) + " at step " + std::to_string(k), k);
    }

    log.records.push_back(make_record(sys, q, qdot, k * cfg.dt, cumulative));

    const StepRecord &rec = log.records.back();
    const double err = std::sqrt(rec.p_tilde.squaredNorm() + rec.xi_tilde.squaredNorm());
    if (err < cfg.stop_tolerance) {
      log.converged = true;
      log.termination = "converged";
      break;
    }
    if (k == steps) {
      log.termination = "duration";
      break;
    }

    q += cfg.dt * qdot;
    cumulative += cfg.dt * qdot.norm();
  }
  return log;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::cts: return "cts";
    case Method::ects: return "ects";
    case Method::relative: return "relative";
    case Method::asym_relative: return "asym_relative";
    case Method::per_arm: return "per_arm";
  }
  return "unknown";
}

MethodSummary summarize(const SimLog &log, Method method, double alpha) {
  MethodSummary s;
  s.name = method_name(method);
  s.method = method;
  s.alpha = alpha;
  s.converged = log.converged;
  s.steps = static_cast<int>(log.records.size());
  if (!log.records.empty()) {
    const StepRecord &last = log.records.back();
    s.final_pos_error = last.pos_error();
    s.final_rot_error = last.rot_error();
    s.joint_path_norm = log.joint_path_norm();
    s.mean_asymmetry = log.mean_asymmetry();
    const StepRecord &first = log.records.front();
    s.absolute_displacement = (last.absolute.position - first.absolute.position).norm();
    s.absolute_rotation_angle =
        angle_axis_of(first.absolute.rotation().transpose() * last.absolute.rotation())
            .angle;
  }
  return s;
}

std::vector<MethodSummary> compare_methods(const DualArmSystem &sys,
                                           const SimConfig &cfg,
                                           const std::vector<Method> &methods) {
  std::vector<std::future<MethodSummary>> jobs;
  jobs.reserve(methods.size());
  for (const Method m : methods) {
    jobs.push_back(std::async(std::launch::async, [&, m]() {
      SimConfig run_cfg = cfg;
      run_cfg.method = m;
      return summarize(run_alignment(sys, run_cfg), m, cfg.alpha);
    }));
  }
  std::vector<MethodSummary> out;
  out.reserve(jobs.size());
  for (auto &job : jobs) out.push_back(job.get());
  return out;
}

PointTrace run_point_example(const PointSystemConfig &cfg) {
  if (!(cfg.K >= 0.0))
    throw std::invalid_argument(
        "point-system gain must satisfy K >= 0 (the regulation task is defined for "
        "K > 0; K = 0 is the symmetric limit)");
  const int steps = planned_steps(cfg.duration, cfg.dt);

  PointTrace trace;
  trace.K = cfg.K;
  trace.records.reserve(steps);

  double p1 = cfg.p1_0, p2 = cfg.p2_0;
  for (int k = 0; k < steps; ++k) {
    PointRecord rec;
    rec.t = k * cfg.dt;
    rec.p1 = p1;
    rec.p2 = p2;
    rec.dp1 = 0.5 * (-(cfg.K + 1.0) * p1 + p2);
    rec.dp2 = 0.5 * ((1.0 - cfg.K) * p1 - p2);
    rec.alpha = asymmetry_measure(rec.dp1, rec.dp2);
    rec.pa_dot = 0.5 * (rec.dp1 + rec.dp2);
    trace.records.push_back(rec);

    p1 += cfg.dt * rec.dp1;
    p2 += cfg.dt * rec.dp2;
  }
  return trace;
}

}  // namespace coopkin
