#include <coopkin/sim.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace coopkin {

namespace {

// 17 significant digits: enough for any double to parse back bit-identically.
std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream &out, const std::string &path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

void append_vec(std::ostream &out, const Eigen::VectorXd &v) {
  for (int i = 0; i < v.size(); ++i) out << ',' << fmt(v[i]);
}

void append_vec3(std::ostream &out, const Vec3 &v) {
  out << ',' << fmt(v.x()) << ',' << fmt(v.y()) << ',' << fmt(v.z());
}

void append_twist(std::ostream &out, const Twist6 &v) {
  append_vec3(out, v.linear);
  append_vec3(out, v.angular);
}

}  // namespace

void write_csv(const SimLog &log, const std::string &path) {
  std::ofstream out = open_out(path);

  const int dof = log.records.empty() ? 0 : static_cast<int>(log.records.front().q.size());
  out << "step,t";
  for (int i = 0; i < dof; ++i) out << ",q" << (i + 1);
  for (int i = 0; i < dof; ++i) out << ",qd" << (i + 1);
  out << ",ptilde_x,ptilde_y,ptilde_z"
      << ",xitilde_x,xitilde_y,xitilde_z"
      << ",abs_x,abs_y,abs_z,abs_angle"
      << ",vo1_lx,vo1_ly,vo1_lz,vo1_ax,vo1_ay,vo1_az"
      << ",vo2_lx,vo2_ly,vo2_lz,vo2_ax,vo2_ay,vo2_az"
      << ",asym,asym_lin,asym_ang,qdot_path\n";

  const Mat3 R_abs0 =
      log.records.empty() ? Mat3::Identity() : log.records.front().absolute.rotation();
  for (size_t k = 0; k < log.records.size(); ++k) {
    const StepRecord &r = log.records[k];
    out << k << ',' << fmt(r.t);
    append_vec(out, r.q);
    append_vec(out, r.qdot);
    append_vec3(out, r.p_tilde);
    append_vec3(out, r.xi_tilde);
    append_vec3(out, r.absolute.position);
    out << ',' << fmt(angle_axis_of(R_abs0.transpose() * r.absolute.rotation()).angle);
    append_twist(out, r.v_o1);
    append_twist(out, r.v_o2);
    out << ',' << fmt(r.asym) << ',' << fmt(r.asym_linear) << ',' << fmt(r.asym_angular)
        << ',' << fmt(r.cumulative_qdot_norm) << '\n';
  }
  finish(out, path);
}

void write_csv(const PointTrace &trace, const std::string &path) {
  std::ofstream out = open_out(path);
  out << "t,p1,p2,dp1,dp2,alpha,pa_dot\n";
  for (const PointRecord &r : trace.records) {
    out << fmt(r.t) << ',' << fmt(r.p1) << ',' << fmt(r.p2) << ',' << fmt(r.dp1) << ','
        << fmt(r.dp2) << ',' << fmt(r.alpha) << ',' << fmt(r.pa_dot) << '\n';
  }
  finish(out, path);
}

void write_alpha_csv(const std::vector<PointTrace> &traces, const std::string &path) {
  std::ofstream out = open_out(path);
  out << 't';
  for (const PointTrace &tr : traces) out << ",alpha_K" << fmt(tr.K);
  out << '\n';

  size_t rows = 0;
  for (const PointTrace &tr : traces) rows = std::max(rows, tr.records.size());
  for (size_t k = 0; k < rows; ++k) {
    for (const PointTrace &tr : traces) {
      if (k < tr.records.size()) {
        out << fmt(tr.records[k].t);
        break;
      }
    }
    for (const PointTrace &tr : traces)
      out << ',' << (k < tr.records.size() ? fmt(tr.records[k].alpha) : "");
    out << '\n';
  }
  finish(out, path);
}

void write_summary_csv(const std::vector<MethodSummary> &rows, const std::string &path) {
  std::ofstream out = open_out(path);
  out << "method,alpha,converged,steps,final_pos_error,final_rot_error,"
         "joint_path_norm,mean_asymmetry,abs_displacement,abs_rotation_angle\n";
  for (const MethodSummary &s : rows) {
    out << s.name << ',' << fmt(s.alpha) << ',' << (s.converged ? 1 : 0) << ','
        << s.steps << ',' << fmt(s.final_pos_error) << ',' << fmt(s.final_rot_error)
        << ',' << fmt(s.joint_path_norm) << ',' << fmt(s.mean_asymmetry) << ','
        << fmt(s.absolute_displacement) << ',' << fmt(s.absolute_rotation_angle) << '\n';
  }
  finish(out, path);
}

std::string format_summary_table(const std::vector<MethodSummary> &rows) {
  std::ostringstream out;
  out << std::left << std::setw(15) << "method" << std::right << std::setw(7) << "alpha"
      << std::setw(11) << "converged" << std::setw(8) << "steps" << std::setw(14)
      << "pos_err" << std::setw(14) << "rot_err" << std::setw(12) << "path_norm"
      << std::setw(11) << "mean_asym" << std::setw(12) << "abs_disp" << std::setw(12)
      << "abs_angle" << '\n';
  for (const MethodSummary &s : rows) {
    out << std::left << std::setw(15) << s.name << std::right << std::fixed
        << std::setprecision(3) << std::setw(7) << s.alpha << std::setw(11)
        << (s.converged ? "yes" : "no") << std::setw(8) << s.steps
        << std::scientific << std::setprecision(3) << std::setw(14) << s.final_pos_error
        << std::setw(14) << s.final_rot_error << std::fixed << std::setprecision(4)
        << std::setw(12) << s.joint_path_norm << std::setw(11) << s.mean_asymmetry
        << std::setw(12) << s.absolute_displacement << std::setw(12)
        << s.absolute_rotation_angle << '\n';
  }
  return out.str();
}

}  // namespace coopkin
