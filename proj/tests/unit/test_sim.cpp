#include <coopkin/sim.hpp>

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "expm2.hpp"
#include "test_support.hpp"

using namespace coopkin;
using namespace coopkin::testing;

#ifndef COOPKIN_TEST_CONFIG
#define COOPKIN_TEST_CONFIG "configs/twin_7dof.cfg"
#endif

namespace {

const LoadedSystem &bundled() {
  static const LoadedSystem loaded = load_system_file(COOPKIN_TEST_CONFIG);
  return loaded;
}

SimConfig short_cfg(Method m, TaskKind task, double alpha = 0.8) {
  SimConfig cfg;
  cfg.method = m;
  cfg.task = task;
  cfg.alpha = alpha;
  cfg.duration = 1.0;
  cfg.seed_joints = bundled().seed;
  return cfg;
}

std::filesystem::path temp_file(const char *name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("point system: the relative command is attained algebraically") {
  PointSystemConfig cfg;
  cfg.K = 8.0;
  cfg.duration = 2.0;
  const PointTrace trace = run_point_example(cfg);
  REQUIRE(trace.records.size() == 2000);
  for (const PointRecord &r : trace.records)
    CHECK(std::abs((r.dp2 - r.dp1) - (r.p1 - r.p2)) < 1e-15);
}

TEST_CASE("point system: K = 0 keeps the split symmetric") {
  PointSystemConfig cfg;
  cfg.K = 0.0;
  const PointTrace trace = run_point_example(cfg);
  for (const PointRecord &r : trace.records) {
    CHECK(std::abs(r.dp1 + r.dp2) < 1e-18);
    CHECK(r.alpha == 0.5);
  }
}

TEST_CASE("point system: trace follows the matrix-exponential oracle") {
  PointSystemConfig cfg;
  cfg.K = 8.0;
  cfg.dt = 1e-3;
  cfg.duration = 6.0;
  const PointTrace trace = run_point_example(cfg);
  double worst = 0.0;
  for (size_t k = 0; k < trace.records.size(); k += 100) {
    const PointRecord &r = trace.records[k];
    const Eigen::Vector2d exact = point_system_exact(8.0, {0.0, 1.0}, r.t);
    worst = std::max(worst, std::abs(r.p1 - exact[0]));
    worst = std::max(worst, std::abs(r.p2 - exact[1]));
  }
  CHECK(worst < 5e-3);  // explicit Euler at dt = 1e-3

  // alpha grows past 0.8 once the regulation dominates
  bool exceeded = false;
  for (const PointRecord &r : trace.records) exceeded = exceeded || r.alpha > 0.8;
  CHECK(exceeded);
}

TEST_CASE("point system: halving dt halves the global error") {
  PointSystemConfig cfg;
  cfg.K = 4.0;
  cfg.duration = 2.0;
  cfg.dt = 2e-3;
  const PointTrace coarse = run_point_example(cfg);
  cfg.dt = 1e-3;
  const PointTrace fine = run_point_example(cfg);

  const Eigen::Vector2d exact = point_system_exact(4.0, {0.0, 1.0}, coarse.records.back().t);
  const double err_coarse = std::abs(coarse.records.back().p1 - exact[0]) +
                            std::abs(coarse.records.back().p2 - exact[1]);
  const PointRecord &fine_last = fine.records[fine.records.size() - 2];  // same t
  const Eigen::Vector2d exact_f = point_system_exact(4.0, {0.0, 1.0}, fine_last.t);
  const double err_fine =
      std::abs(fine_last.p1 - exact_f[0]) + std::abs(fine_last.p2 - exact_f[1]);
  CHECK(err_fine < err_coarse);
  CHECK(err_fine > err_coarse / 4.0);  // first order, not second
}

TEST_CASE("point system rejects negative gains and bad steps") {
  PointSystemConfig cfg;
  cfg.K = -1.0;
  CHECK_THROWS_AS(run_point_example(cfg), std::invalid_argument);
  cfg.K = 1.0;
  cfg.dt = 0.0;
  CHECK_THROWS_AS(run_point_example(cfg), std::invalid_argument);
}

TEST_CASE("zero-duration runs: point trace is empty, alignment logs one record") {
  PointSystemConfig pc;
  pc.duration = 0.0;
  CHECK(run_point_example(pc).records.empty());

  SimConfig cfg = short_cfg(Method::relative, TaskKind::translational);
  cfg.duration = 0.0;
  const SimLog log = run_alignment(bundled().system, cfg);
  CHECK(log.records.size() == 1);
}

TEST_CASE("alignment on an already-aligned system stays at rest") {
  SimConfig cfg = short_cfg(Method::asym_relative, TaskKind::custom_target);
  // custom_target aligns the configured object frames; make them coincide.
  DualArmSystem sys = bundled().system;
  const auto [ee1, ee2] = end_effector_poses(sys, bundled().seed);
  const Pose shared{Vec3(0.4, 0.05, 0.3), UnitQuat::identity()};
  sys.object_offset_left = ee1.inverse() * shared;
  sys.object_offset_right = ee2.inverse() * shared;

  const SimLog log = run_alignment(sys, cfg);
  CHECK(log.converged);
  CHECK(log.records.size() == 1);
  CHECK(log.records.front().qdot.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(log.joint_path_norm() == 0.0);
}

TEST_CASE("alignment record count follows duration over dt") {
  SimConfig cfg = short_cfg(Method::relative, TaskKind::translational);
  cfg.duration = 0.1;
  cfg.dt = 0.005;
  const SimLog log = run_alignment(bundled().system, cfg);
  CHECK(log.records.size() == 21);  // floor(0.1/0.005) + 1
  for (size_t k = 1; k < log.records.size(); ++k) {
    CHECK(log.records[k].t > log.records[k - 1].t);
  }
}

TEST_CASE("translational task starts with a pure position displacement") {
  SimConfig cfg = short_cfg(Method::relative, TaskKind::translational);
  cfg.duration = 0.0;
  const SimLog log = run_alignment(bundled().system, cfg);
  const StepRecord &r0 = log.records.front();
  CHECK((r0.p_tilde - Vec3(0.09, -0.15, -0.15)).norm() < 1e-12);
  CHECK(r0.rot_error() < 1e-14);
}

TEST_CASE("rotational task starts with a pure orientation displacement") {
  SimConfig cfg = short_cfg(Method::relative, TaskKind::rotational);
  cfg.duration = 0.0;
  const SimLog log = run_alignment(bundled().system, cfg);
  const StepRecord &r0 = log.records.front();
  CHECK(r0.pos_error() < 1e-14);
  CHECK(r0.rot_error() == doctest::Approx(std::sin(M_PI / 30.0)).epsilon(1e-10));
}

TEST_CASE("every method satisfies the relative task residual at every step") {
  for (Method m : {Method::cts, Method::ects, Method::relative, Method::asym_relative,
                   Method::per_arm}) {
    SimConfig cfg = short_cfg(m, TaskKind::translational);
    cfg.duration = 0.5;
    const DualArmSystem sys = with_task_offsets(bundled().system, bundled().seed, cfg);
    const SimLog log = run_alignment(bundled().system, cfg);
    for (size_t k = 0; k < log.records.size(); k += 10) {
      const StepRecord &r = log.records[k];
      const Twist6 vr = relative_task_twist(r.pose_o1, r.pose_o2, cfg.Kp);
      const Eigen::MatrixXd Jr =
          coop_jacobian(sys, r.q, CoopJacobianKind::relative).matrix;
      CAPTURE(method_name(m));
      CHECK((Jr * r.qdot - vr.vec()).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("task-channel errors decrease monotonically") {
  for (Method m : {Method::ects, Method::asym_relative}) {
    SimConfig cfg = short_cfg(m, TaskKind::translational);
    cfg.duration = 2.0;
    const SimLog log = run_alignment(bundled().system, cfg);
    for (size_t k = 1; k < log.records.size(); ++k)
      CHECK(log.records[k].pos_error() <= log.records[k - 1].pos_error() + 1e-9);

    SimConfig rot = short_cfg(m, TaskKind::rotational);
    rot.duration = 2.0;
    const SimLog rlog = run_alignment(bundled().system, rot);
    for (size_t k = 1; k < rlog.records.size(); ++k)
      CHECK(rlog.records[k].rot_error() <= rlog.records[k - 1].rot_error() + 1e-9);
  }
}

TEST_CASE("identical configurations give identical logs") {
  SimConfig cfg = short_cfg(Method::asym_relative, TaskKind::translational);
  cfg.duration = 0.5;
  const SimLog a = run_alignment(bundled().system, cfg);
  const SimLog b = run_alignment(bundled().system, cfg);
  REQUIRE(a.records.size() == b.records.size());
  for (size_t k = 0; k < a.records.size(); ++k) {
    CHECK((a.records[k].q - b.records[k].q).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.records[k].qdot - b.records[k].qdot).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("rank-deficient solves abort with the step index") {
  DualArmSystem sys = bundled().system;
  SimConfig cfg = short_cfg(Method::relative, TaskKind::translational);
  cfg.seed_joints = JointVector::Zero(14);  // fully stretched, singular
  try {
    run_alignment(sys, cfg);
    FAIL("expected SimulationAbort");
  } catch (const SimulationAbort &e) {
    CHECK(e.step == 0);
    CHECK(std::string(e.what()).find("step 0") != std::string::npos);
  }
}

TEST_CASE("compare_methods reproduces the per-method runs in order") {
  SimConfig cfg = short_cfg(Method::relative, TaskKind::translational);
  cfg.duration = 0.5;
  const auto rows = compare_methods(bundled().system, cfg,
                                    {Method::cts, Method::ects, Method::relative});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].name == "cts");
  CHECK(rows[1].name == "ects");
  CHECK(rows[2].name == "relative");

  SimConfig one = cfg;
  one.method = Method::ects;
  const MethodSummary direct = summarize(run_alignment(bundled().system, one),
                                         Method::ects, cfg.alpha);
  CHECK(rows[1].joint_path_norm == direct.joint_path_norm);
  CHECK(rows[1].final_pos_error == direct.final_pos_error);
}

TEST_CASE("csv round-trips values at full precision") {
  SimConfig cfg = short_cfg(Method::asym_relative, TaskKind::translational);
  cfg.duration = 0.05;
  const SimLog log = run_alignment(bundled().system, cfg);
  const auto path = temp_file("coopkin_roundtrip.csv");
  write_csv(log, path.string());

  std::ifstream in(path);
  std::string header, line;
  REQUIRE(std::getline(in, header));
  size_t row = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> values;
    std::getline(ss, cell, ',');  // step index
    while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
    REQUIRE(row < log.records.size());
    const StepRecord &r = log.records[row];
    CHECK(values[0] == r.t);
    for (int j = 0; j < 14; ++j) CHECK(values[1 + j] == r.q[j]);
    for (int j = 0; j < 14; ++j) CHECK(values[15 + j] == r.qdot[j]);
    ++row;
  }
  CHECK(row == log.records.size());
  std::filesystem::remove(path);
}

TEST_CASE("csv schema: two index columns, 4n state columns, 26 metric columns") {
  SimConfig cfg = short_cfg(Method::relative, TaskKind::translational);
  cfg.duration = 0.0;
  const SimLog log = run_alignment(bundled().system, cfg);
  const auto path = temp_file("coopkin_schema.csv");
  write_csv(log, path.string());
  const std::string text = slurp(path);
  std::filesystem::remove(path);

  const size_t newline = text.find('\n');
  REQUIRE(newline != std::string::npos);
  const std::string header = text.substr(0, newline);
  const size_t columns = 1 + std::count(header.begin(), header.end(), ',');
  CHECK(columns == 2 + 2 * 14 + 26);
  // header + one row for the zero-duration run
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}

TEST_CASE("point csv: zero duration writes only the header") {
  PointSystemConfig pc;
  pc.duration = 0.0;
  const auto path = temp_file("coopkin_point_empty.csv");
  write_csv(run_point_example(pc), path.string());
  const std::string text = slurp(path);
  std::filesystem::remove(path);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  CHECK(text.rfind("t,p1,p2,dp1,dp2,alpha,pa_dot\n", 0) == 0);
}

TEST_CASE("csv writers surface filesystem failures") {
  PointSystemConfig pc;
  pc.duration = 0.01;
  CHECK_THROWS_AS(write_csv(run_point_example(pc), "/nonexistent-dir/trace.csv"),
                  IoError);
}

TEST_CASE("halving dt shifts the final error consistently with first order") {
  SimConfig cfg = short_cfg(Method::relative, TaskKind::translational);
  cfg.duration = 2.0;
  cfg.dt = 0.01;
  const double coarse = run_alignment(bundled().system, cfg).records.back().pos_error();
  cfg.dt = 0.005;
  const double fine = run_alignment(bundled().system, cfg).records.back().pos_error();
  const double exact = 0.2245 * std::exp(-2.0);  // continuous-time decay scale
  CHECK(std::abs(fine - exact) < 4.0 * std::abs(coarse - exact) + 1e-12);
}

}  // TEST_SUITE
