#include <coopkin/coop.hpp>

#include <cmath>
#include <stdexcept>

namespace coopkin {

namespace {

const Mat6 kI6 = Mat6::Identity();

Eigen::MatrixXd two_block_row(double left, double right) {
  Mat6x12 m;
  m << left * kI6, right * kI6;
  return m;
}

}  // namespace

CoopParam::CoopParam(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw std::invalid_argument("cooperation parameter alpha must lie in [0, 1]");
}

LinkingMap linking(LinkKind kind, CoopParam alpha) {
  const double a = alpha.value();
  const double denom = (1.0 - a) * (1.0 - a) + a * a;
  LinkingMap map{kind, a, {}};
  switch (kind) {
    case LinkKind::cts: {
      Mat12 m;
      m << 0.5 * kI6, 0.5 * kI6, -kI6, kI6;
      map.matrix = m;
      map.alpha = 0.5;
      break;
    }
    case LinkKind::ects: {
      Mat12 m;
      m << a * kI6, (1.0 - a) * kI6, -kI6, kI6;
      map.matrix = m;
      break;
    }
    case LinkKind::relative:
      map.matrix = two_block_row(-1.0, 1.0);
      map.alpha = 0.5;
      break;
    case LinkKind::asym_relative:
      map.matrix = two_block_row(-(1.0 - a) / denom, a / denom);
      break;
    case LinkKind::abs_symmetric:
      map.matrix = two_block_row(0.5, 0.5);
      map.alpha = 0.5;
      break;
    case LinkKind::abs_asymmetric:
      map.matrix = two_block_row(a, 1.0 - a);
      break;
  }
  return map;
}

Mat12 invert_cts() {
  Mat12 m;
  m << kI6, -0.5 * kI6, kI6, 0.5 * kI6;
  return m;
}

Mat12 invert_ects(CoopParam alpha) {
  const double a = alpha.value();
  Mat12 m;
  m << kI6, -(1.0 - a) * kI6, kI6, a * kI6;
  return m;
}

Mat12x6 pinv_relative() {
  Mat12x6 m;
  m << -0.5 * kI6, 0.5 * kI6;
  return m;
}

Mat12x6 pinv_asym_relative(CoopParam alpha) {
  const double a = alpha.value();
  Mat12x6 m;
  m << -(1.0 - a) * kI6, a * kI6;
  return m;
}

double coupling_rel_from_abs(CoopParam alpha) {
  const double a = alpha.value();
  return (1.0 - 2.0 * a) / (a * a + (1.0 - a) * (1.0 - a));
}

double induced_abs_from_rel(CoopParam alpha) {
  return (2.0 * alpha.value() - 1.0) / 2.0;
}

CoopFrames cooperative_frames(const Pose &pose1, const Pose &pose2,
                              FrameConvention convention, CoopParam alpha) {
  const double a = alpha.value();
  const Mat3 R1 = pose1.rotation();
  const Mat3 R2 = pose2.rotation();
  const Mat3 R12 = R1.transpose() * R2;
  const AngleAxis aa12 = angle_axis_of(R12);

  CoopFrames out;
  out.convention = convention;
  out.alpha = a;

  switch (convention) {
    case FrameConvention::cts:
      out.absolute.position = 0.5 * (pose1.position + pose2.position);
      out.absolute.orientation =
          UnitQuat::from_rotation(R1 * rot_of(aa12.axis, 0.5 * aa12.angle));
      out.relative.position = pose2.position - pose1.position;
      out.relative.orientation = UnitQuat::from_rotation(R12);
      out.alpha = 0.5;
      break;
    case FrameConvention::ects:
      out.absolute.position = a * pose1.position + (1.0 - a) * pose2.position;
      out.absolute.orientation =
          UnitQuat::from_rotation(R1 * rot_of(aa12.axis, (1.0 - a) * aa12.angle));
      out.relative.position = pose2.position - pose1.position;
      out.relative.orientation = UnitQuat::from_rotation(R12);
      break;
    case FrameConvention::asym_relative: {
      const double denom = (1.0 - a) * (1.0 - a) + a * a;
      const AngleAxis aa1 = angle_axis_of(R1);
      const AngleAxis aa2 = angle_axis_of(R2);
      out.absolute.position = a * pose1.position + (1.0 - a) * pose2.position;
      out.absolute.orientation =
          UnitQuat::from_rotation(R1 * rot_of(aa12.axis, (1.0 - a) * aa12.angle));
      out.relative.position =
          (a * pose2.position - (1.0 - a) * pose1.position) / denom;
      out.relative.orientation = UnitQuat::from_rotation(
          rot_of(aa1.axis, (1.0 - a) * aa1.angle / denom).transpose() *
          rot_of(aa2.axis, a * aa2.angle / denom));
      break;
    }
  }
  return out;
}

namespace {

double ratio_measure(double n1, double n2) {
  const double total = n1 + n2;
  if (total == 0.0) return 0.5;
  return n2 / total;
}

}  // namespace

double asymmetry_measure(const Twist6 &v1, const Twist6 &v2) {
  return ratio_measure(v1.norm(), v2.norm());
}

double asymmetry_measure(double v1, double v2) {
  return ratio_measure(std::abs(v1), std::abs(v2));
}

double asymmetry_measure_linear(const Twist6 &v1, const Twist6 &v2) {
  return ratio_measure(v1.linear.norm(), v2.linear.norm());
}

double asymmetry_measure_angular(const Twist6 &v1, const Twist6 &v2) {
  return ratio_measure(v1.angular.norm(), v2.angular.norm());
}

}  // namespace coopkin
