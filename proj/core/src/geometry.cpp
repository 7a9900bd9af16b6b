#include <coopkin/geometry.hpp>

#include <cmath>
#include <stdexcept>

namespace coopkin {

namespace {

// Representative of {q, -q}: scalar part positive, lexicographic tie-break
// when the scalar part is exactly zero.
Eigen::Quaterniond canonical(Eigen::Quaterniond q) {
  q.normalize();
  bool flip = q.w() < 0.0;
  if (q.w() == 0.0) {
    if (q.x() != 0.0)
      flip = q.x() < 0.0;
    else if (q.y() != 0.0)
      flip = q.y() < 0.0;
    else
      flip = q.z() < 0.0;
  }
  if (flip) q.coeffs() = -q.coeffs();
  return q;
}

}  // namespace

UnitQuat::UnitQuat(double w, double x, double y, double z) : q_(w, x, y, z) {
  const double n = q_.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::invalid_argument("UnitQuat: components must be finite and not all zero");
  q_ = canonical(q_);
}

UnitQuat UnitQuat::from_rotation(const Mat3 &R) {
  UnitQuat out;
  out.q_ = canonical(Eigen::Quaterniond(R));
  return out;
}

UnitQuat UnitQuat::conjugate() const {
  UnitQuat out;
  out.q_ = q_.conjugate();  // already unit and canonical
  return out;
}

UnitQuat UnitQuat::operator*(const UnitQuat &rhs) const {
  UnitQuat out;
  out.q_ = canonical(q_ * rhs.q_);
  return out;
}

Pose Pose::operator*(const Pose &local) const {
  return Pose{position + orientation.rotate(local.position),
              orientation * local.orientation};
}

Pose Pose::inverse() const {
  const UnitQuat qc = orientation.conjugate();
  return Pose{-qc.rotate(position), qc};
}

Twist6 Twist6::from_vec(const Vec6 &v) {
  return Twist6{v.head<3>(), v.tail<3>()};
}

Vec6 Twist6::vec() const {
  Vec6 v;
  v << linear, angular;
  return v;
}

Mat3 skew(const Vec3 &a) {
  Mat3 S;
  S << 0.0, -a.z(), a.y(),
       a.z(), 0.0, -a.x(),
      -a.y(), a.x(), 0.0;
  return S;
}

AngleAxis angle_axis_of(const Mat3 &R) {
  const Eigen::AngleAxisd aa(R);
  double angle = aa.angle();
  Vec3 axis = aa.axis();
  if (angle < 0.0) {  // Eigen keeps angle in [0, pi]; guard anyway
    angle = -angle;
    axis = -axis;
  }
  if (angle < 1e-12) return AngleAxis{Vec3(1.0, 0.0, 0.0), 0.0};
  if (std::abs(angle - M_PI) < 1e-12) {
    // rot(k, pi) == rot(-k, pi): fix the sign via the largest component.
    int imax = 0;
    axis.cwiseAbs().maxCoeff(&imax);
    if (axis[imax] < 0.0) axis = -axis;
  }
  return AngleAxis{axis, angle};
}

Mat3 rot_of(const AngleAxis &aa) { return rot_of(aa.axis, aa.angle); }

Mat3 rot_of(const Vec3 &unit_axis, double angle) {
  return Eigen::AngleAxisd(angle, unit_axis).toRotationMatrix();
}

Mat6 screw_transform(const Vec3 &r) {
  Mat6 W = Mat6::Identity();
  W.block<3, 3>(0, 3) = -skew(r);
  return W;
}

UnitQuat quat_error(const UnitQuat &q1, const UnitQuat &q2) {
  return q1.conjugate() * q2;
}

Vec6 pose_difference(const Pose &to, const Pose &from) {
  Vec6 d;
  d.head<3>() = to.position - from.position;
  const Mat3 Rerr = to.rotation() * from.rotation().transpose();
  const AngleAxis aa = angle_axis_of(Rerr);
  d.tail<3>() = aa.axis * aa.angle;
  return d;
}

}  // namespace coopkin
