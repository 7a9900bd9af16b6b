#pragma once

#include <coopkin/types.hpp>

namespace coopkin {

/// Unit quaternion in canonical form: normalized on construction, with the
/// scalar part kept non-negative so that q and -q map to one representative.
class UnitQuat {
 public:
  UnitQuat() : q_(1.0, 0.0, 0.0, 0.0) {}
  UnitQuat(double w, double x, double y, double z);
  UnitQuat(double w, const Vec3 &xyz) : UnitQuat(w, xyz.x(), xyz.y(), xyz.z()) {}

  static UnitQuat identity() { return UnitQuat(); }
  static UnitQuat from_rotation(const Mat3 &R);

  double w() const { return q_.w(); }
  Vec3 xyz() const { return q_.vec(); }

  Mat3 rotation() const { return q_.toRotationMatrix(); }
  UnitQuat conjugate() const;
  Vec3 rotate(const Vec3 &v) const { return q_ * v; }

  UnitQuat operator*(const UnitQuat &rhs) const;

 private:
  Eigen::Quaterniond q_;
};

/// Axis-angle pair with unit axis and angle in [0, pi].
struct AngleAxis {
  Vec3 axis{1.0, 0.0, 0.0};
  double angle{0.0};
};

/// Position plus orientation of a frame, expressed in the common base frame.
struct Pose {
  Vec3 position{Vec3::Zero()};
  UnitQuat orientation;

  static Pose identity() { return Pose{}; }

  Mat3 rotation() const { return orientation.rotation(); }

  /// Frame composition: this * local, i.e. local expressed through this frame.
  Pose operator*(const Pose &local) const;
  Pose inverse() const;
};

/// Spatial velocity of one frame: linear (m/s) and angular (rad/s) parts,
/// both in the base frame.
struct Twist6 {
  Vec3 linear{Vec3::Zero()};
  Vec3 angular{Vec3::Zero()};

  static Twist6 from_vec(const Vec6 &v);
  Vec6 vec() const;
  double norm() const { return vec().norm(); }
};

/// Skew-symmetric matrix S(a) with S(a) b = a x b.
Mat3 skew(const Vec3 &a);

/// Axis-angle decomposition of a rotation matrix. Angle lies in [0, pi].
/// Conventions at the degenerate angles: angle 0 returns axis (1,0,0);
/// at angle pi the axis sign is fixed so its largest-magnitude component
/// is positive.
AngleAxis angle_axis_of(const Mat3 &R);

/// Rodrigues rotation about a unit axis.
Mat3 rot_of(const AngleAxis &aa);
Mat3 rot_of(const Vec3 &unit_axis, double angle);

/// 6x6 twist shift along a rigid body: maps the twist at a frame to the twist
/// of a point displaced by r, [[I, -S(r)], [0, I]].
Mat6 screw_transform(const Vec3 &r);

/// Orientation error quaternion of R1^T R2, reduced to the shortest rotation
/// (non-negative scalar part). The vector part is expressed in frame 1 and is
/// zero iff the frames are aligned.
UnitQuat quat_error(const UnitQuat &q1, const UnitQuat &q2);

/// 6-vector difference [p2 - p1; rotvec(R2 R1^T)] between two poses, with the
/// angular part as a base-frame rotation vector.
Vec6 pose_difference(const Pose &to, const Pose &from);

}  // namespace coopkin
