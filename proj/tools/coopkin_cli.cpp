// Command-line front end: runs the cooperative-kinematics experiments and
// identity self-checks, writing CSV artifacts to an output directory.
//
// Exit codes: 0 success, 1 self-check failure, 2 usage error, 3 I/O error,
// 4 numerical abort (rank-deficient solve).

#include <coopkin/selfcheck.hpp>
#include <coopkin/sim.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelfcheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

std::string default_out_dir() {
  const char *env = std::getenv("COOPKIN_OUT_DIR");
  return env && *env ? env : ".";
}

std::filesystem::path ensure_out_dir(const std::string &dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw coopkin::IoError("cannot create output directory '" + dir + "'");
  return p;
}

std::string trim_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

coopkin::LoadedSystem load_robot_or_exit(const std::string &path) {
  if (!std::filesystem::exists(path)) {
    std::cerr << "error: robot config '" << path << "' does not exist\n";
    std::exit(kExitIo);
  }
  try {
    coopkin::LoadedSystem loaded = coopkin::load_system_file(path);
    for (const std::string &w : loaded.warnings) std::cerr << "warning: " << w << "\n";
    return loaded;
  } catch (const coopkin::ConfigError &e) {
    std::cerr << "error: " << e.what() << "\n";
    std::exit(kExitUsage);
  }
}

struct AlignArgs {
  std::string robot;
  std::string method{"asym_relative"};
  double alpha{0.5};
  std::string task{"trans"};
  double dt{0.005};
  double duration{10.0};
  double kp{1.0};
  std::string rot_axis{"z"};
  double rot_angle{M_PI / 15.0};
  bool primary_only{false};
  std::string out{default_out_dir()};
};

std::optional<coopkin::Method> parse_method(const std::string &name) {
  using coopkin::Method;
  if (name == "cts") return Method::cts;
  if (name == "ects") return Method::ects;
  if (name == "relative") return Method::relative;
  if (name == "asym_relative") return Method::asym_relative;
  if (name == "per_arm") return Method::per_arm;
  return std::nullopt;
}

bool alpha_matters(coopkin::Method m) {
  return m == coopkin::Method::ects || m == coopkin::Method::asym_relative;
}

coopkin::Vec3 parse_axis(const std::string &axis) {
  if (axis == "x") return coopkin::Vec3(1, 0, 0);
  if (axis == "y") return coopkin::Vec3(0, 1, 0);
  if (axis == "z") return coopkin::Vec3(0, 0, 1);
  throw CLI::ValidationError("--rot-axis", "axis must be one of x, y, z");
}

coopkin::SimConfig make_sim_config(const AlignArgs &args, const coopkin::LoadedSystem &robot,
                                   coopkin::Method method) {
  coopkin::SimConfig cfg;
  cfg.dt = args.dt;
  cfg.duration = args.duration;
  cfg.method = method;
  cfg.alpha = args.alpha;
  cfg.Kp = coopkin::GainMatrix::diagonal(args.kp, args.kp);
  cfg.task = args.task == "rot" ? coopkin::TaskKind::rotational
                                : coopkin::TaskKind::translational;
  cfg.seed_joints = robot.seed;
  cfg.primary_only = args.primary_only;
  cfg.rotation_axis = parse_axis(args.rot_axis);
  cfg.rotation_angle = args.rot_angle;
  return cfg;
}

void print_align_summary(const coopkin::MethodSummary &s, const coopkin::SimLog &log) {
  std::cout << "method=" << s.name << " alpha=" << trim_number(s.alpha)
            << " steps=" << s.steps << " terminated=" << log.termination
            << " final_pos_err=" << s.final_pos_error
            << " final_rot_err=" << s.final_rot_error
            << " qdot_path=" << s.joint_path_norm
            << " mean_asym=" << s.mean_asymmetry << "\n";
}

int cmd_point_example(const std::vector<double> &gains, double dt, double duration,
                      double p1_0, double p2_0, const std::string &out_dir) {
  for (double K : gains) {
    if (K < 0.0) {
      std::cerr << "error: --K values must be non-negative; the point-system "
                   "regulation gain is defined for K > 0 (K = 0 is the symmetric "
                   "limit)\n";
      return kExitUsage;
    }
  }
  try {
    const std::filesystem::path dir = ensure_out_dir(out_dir);
    std::vector<coopkin::PointTrace> traces;
    traces.reserve(gains.size());
    for (double K : gains) {
      coopkin::PointSystemConfig cfg;
      cfg.K = K;
      cfg.dt = dt;
      cfg.duration = duration;
      cfg.p1_0 = p1_0;
      cfg.p2_0 = p2_0;
      traces.push_back(coopkin::run_point_example(cfg));
      const std::string name = "point_K" + trim_number(K) + ".csv";
      coopkin::write_csv(traces.back(), (dir / name).string());
      std::cout << "wrote " << (dir / name).string() << "\n";
    }
    coopkin::write_alpha_csv(traces, (dir / "point_alpha.csv").string());
    std::cout << "wrote " << (dir / "point_alpha.csv").string() << "\n";
  } catch (const coopkin::IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_align(const AlignArgs &args) {
  const auto method = parse_method(args.method);
  if (!method) {
    std::cerr << "error: unknown --method '" << args.method
              << "' (expected cts, ects, relative, asym_relative or per_arm)\n";
    return kExitUsage;
  }
  const coopkin::LoadedSystem robot = load_robot_or_exit(args.robot);
  try {
    const coopkin::SimConfig cfg = make_sim_config(args, robot, *method);
    const std::filesystem::path dir = ensure_out_dir(args.out);
    const coopkin::SimLog log = coopkin::run_alignment(robot.system, cfg);
    for (const std::string &w : log.warnings) std::cerr << "warning: " << w << "\n";

    std::string name = "align_" + args.method;
    if (args.primary_only) name += "_primary_only";
    name += ".csv";
    coopkin::write_csv(log, (dir / name).string());
    print_align_summary(coopkin::summarize(log, *method, cfg.alpha), log);
    std::cout << "wrote " << (dir / name).string() << "\n";
  } catch (const coopkin::SimulationAbort &e) {
    std::cerr << "error: numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const coopkin::IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_compare(const AlignArgs &args, const std::vector<std::string> &method_names) {
  std::vector<coopkin::Method> methods;
  for (const std::string &name : method_names) {
    const auto m = parse_method(name);
    if (!m) {
      std::cerr << "error: unknown method '" << name << "' in --methods\n";
      return kExitUsage;
    }
    methods.push_back(*m);
  }
  const coopkin::LoadedSystem robot = load_robot_or_exit(args.robot);
  try {
    const coopkin::SimConfig cfg =
        make_sim_config(args, robot, coopkin::Method::asym_relative);
    const std::filesystem::path dir = ensure_out_dir(args.out);
    const auto summaries = coopkin::compare_methods(robot.system, cfg, methods);
    coopkin::write_summary_csv(summaries, (dir / "compare_summary.csv").string());
    const std::string table = coopkin::format_summary_table(summaries);
    std::cout << table;
    std::ofstream txt((dir / "compare_summary.txt").string(), std::ios::binary);
    if (!txt) throw coopkin::IoError("cannot open compare_summary.txt for writing");
    txt << table;
    std::cout << "wrote " << (dir / "compare_summary.csv").string() << "\n";
  } catch (const coopkin::SimulationAbort &e) {
    std::cerr << "error: numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const coopkin::IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

void print_pose(const char *label, const coopkin::Pose &p) {
  const coopkin::Vec3 xyz = p.orientation.xyz();
  std::printf("  %-22s p = [% .6f, % .6f, % .6f]  q = [% .6f, % .6f, % .6f, % .6f]\n",
              label, p.position.x(), p.position.y(), p.position.z(),
              p.orientation.w(), xyz.x(), xyz.y(), xyz.z());
}

int cmd_frames(const std::string &robot_path, double alpha,
               const std::vector<double> &q_override) {
  const coopkin::LoadedSystem robot = load_robot_or_exit(robot_path);
  coopkin::JointVector q = robot.seed;
  if (!q_override.empty()) {
    if (static_cast<int>(q_override.size()) != robot.system.dof()) {
      std::cerr << "error: --q needs " << robot.system.dof() << " values\n";
      return kExitUsage;
    }
    q = Eigen::Map<const Eigen::VectorXd>(q_override.data(), q_override.size());
  }

  const auto [ee1, ee2] = coopkin::end_effector_poses(robot.system, q);
  const auto [o1, o2] = coopkin::object_poses(robot.system, q);
  const auto [r1, r2] = coopkin::virtual_sticks(robot.system, q);

  std::printf("configuration (%d joints)\n", robot.system.dof());
  print_pose("end-effector left", ee1);
  print_pose("end-effector right", ee2);
  print_pose("object left", o1);
  print_pose("object right", o2);
  std::printf("  virtual sticks        r1 = [% .6f, % .6f, % .6f]  r2 = [% .6f, % .6f, % .6f]\n",
              r1.x(), r1.y(), r1.z(), r2.x(), r2.y(), r2.z());

  using coopkin::FrameConvention;
  const coopkin::CoopParam a(alpha);
  const auto cts = coopkin::cooperative_frames(o1, o2, FrameConvention::cts);
  const auto ects = coopkin::cooperative_frames(o1, o2, FrameConvention::ects, a);
  const auto asym = coopkin::cooperative_frames(o1, o2, FrameConvention::asym_relative, a);

  std::printf("cooperative frames of the object poses (alpha = %s)\n",
              trim_number(alpha).c_str());
  print_pose("cts absolute", cts.absolute);
  print_pose("cts relative", cts.relative);
  print_pose("ects absolute", ects.absolute);
  print_pose("asym relative", asym.relative);
  return kExitOk;
}

int cmd_selfcheck(bool inject_fault) {
  const auto checks = coopkin::run_identity_suite(1000, 20240513u, inject_fault);
  bool all_ok = true;
  for (const auto &c : checks) {
    std::printf("[%s] %-26s max error %.3e (tolerance %.0e)\n",
                c.passed ? "PASS" : "FAIL", c.name.c_str(), c.max_error, c.tolerance);
    all_ok = all_ok && c.passed;
  }
  if (!all_ok) {
    std::cout << "selfcheck FAILED\n";
    return kExitSelfcheck;
  }
  std::cout << "selfcheck OK (" << checks.size() << " identities)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"cooperative dual-arm kinematics simulator"};
  app.require_subcommand(1);

  // point-example
  auto *point = app.add_subcommand(
      "point-example", "Integrate the 1-D two-point relative-task system");
  std::vector<double> gains{0.0, 1.0, 4.0, 8.0};
  double pe_dt = 1e-3, pe_duration = 10.0, pe_p1 = 0.0, pe_p2 = 1.0;
  std::string pe_out = default_out_dir();
  point->add_option("--K", gains, "secondary-task gains to sweep")->expected(-1);
  point->add_option("--dt", pe_dt, "integration step [s]")->check(CLI::PositiveNumber);
  point->add_option("--duration", pe_duration, "simulated time [s]")
      ->check(CLI::NonNegativeNumber);
  point->add_option("--p1", pe_p1, "initial p1");
  point->add_option("--p2", pe_p2, "initial p2");
  point->add_option("--out", pe_out, "output directory");

  // align
  auto *align = app.add_subcommand(
      "align", "Run a relative alignment task on a dual-arm model");
  AlignArgs aa;
  align->add_option("--robot", aa.robot, "robot description file")->required();
  align->add_option("--method", aa.method,
                    "cts | ects | relative | asym_relative | per_arm");
  auto *align_alpha = align->add_option("--alpha", aa.alpha, "cooperation parameter");
  align->add_option("--task", aa.task, "trans | rot")
      ->check(CLI::IsMember({"trans", "rot"}));
  align->add_option("--dt", aa.dt, "integration step [s]")->check(CLI::PositiveNumber);
  align->add_option("--duration", aa.duration, "simulated time [s]")
      ->check(CLI::NonNegativeNumber);
  align->add_option("--kp", aa.kp, "feedback gain (scalar, applied to all axes)")
      ->check(CLI::PositiveNumber);
  align->add_option("--rot-axis", aa.rot_axis, "rotational-task axis: x | y | z");
  align->add_option("--rot-angle", aa.rot_angle, "rotational-task displacement [rad]");
  align->add_flag("--primary-only", aa.primary_only,
                  "apply the asymmetric secondary as the primary task (ablation)");
  align->add_option("--out", aa.out, "output directory");

  // compare
  auto *compare = app.add_subcommand(
      "compare", "Run several methods on the same task and tabulate metrics");
  AlignArgs ca;
  std::vector<std::string> compare_methods_list{"cts", "ects", "relative",
                                                "asym_relative", "per_arm"};
  compare->add_option("--robot", ca.robot, "robot description file")->required();
  compare->add_option("--methods", compare_methods_list, "methods to compare")
      ->expected(-1);
  auto *compare_alpha = compare->add_option("--alpha", ca.alpha, "cooperation parameter");
  compare->add_option("--task", ca.task, "trans | rot")
      ->check(CLI::IsMember({"trans", "rot"}));
  compare->add_option("--dt", ca.dt, "integration step [s]")->check(CLI::PositiveNumber);
  compare->add_option("--duration", ca.duration, "simulated time [s]")
      ->check(CLI::NonNegativeNumber);
  compare->add_option("--kp", ca.kp, "feedback gain")->check(CLI::PositiveNumber);
  compare->add_option("--rot-axis", ca.rot_axis, "rotational-task axis: x | y | z");
  compare->add_option("--rot-angle", ca.rot_angle, "rotational-task displacement [rad]");
  compare->add_option("--out", ca.out, "output directory");

  // frames
  auto *frames = app.add_subcommand(
      "frames", "Print end-effector, object and cooperative frames");
  std::string fr_robot;
  double fr_alpha = 0.5;
  std::vector<double> fr_q;
  frames->add_option("--robot", fr_robot, "robot description file")->required();
  frames->add_option("--alpha", fr_alpha, "cooperation parameter");
  frames->add_option("--q", fr_q, "joint values overriding the stored seed")
      ->expected(-1);

  // selfcheck
  auto *selfcheck = app.add_subcommand(
      "selfcheck", "Verify the closed-form linking-map identities");
  bool inject_fault = false;
  selfcheck->add_flag("--inject-fault", inject_fault,
                      "flip a sign inside the invariance identity (failure-path test)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto check_alpha = [](double alpha) {
    if (alpha < 0.0 || alpha > 1.0) {
      std::cerr << "error: --alpha must lie in [0, 1]\n";
      return false;
    }
    return true;
  };

  if (point->parsed()) {
    if (gains.empty()) {
      std::cerr << "error: --K needs at least one value\n";
      return kExitUsage;
    }
    return cmd_point_example(gains, pe_dt, pe_duration, pe_p1, pe_p2, pe_out);
  }
  if (align->parsed()) {
    if (!check_alpha(aa.alpha)) return kExitUsage;
    const auto m = parse_method(aa.method);
    if (m && !alpha_matters(*m) && align_alpha->count() > 0)
      std::cerr << "warning: --alpha is ignored for method '" << aa.method << "'\n";
    return cmd_align(aa);
  }
  if (compare->parsed()) {
    if (!check_alpha(ca.alpha)) return kExitUsage;
    (void)compare_alpha;
    return cmd_compare(ca, compare_methods_list);
  }
  if (frames->parsed()) {
    if (!check_alpha(fr_alpha)) return kExitUsage;
    return cmd_frames(fr_robot, fr_alpha, fr_q);
  }
  if (selfcheck->parsed()) return cmd_selfcheck(inject_fault);

  return kExitUsage;
}
