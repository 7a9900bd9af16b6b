#include <coopkin/geometry.hpp>

#include <doctest.h>

#include "test_support.hpp"

using namespace coopkin;
using namespace coopkin::testing;

TEST_SUITE("geom") {

TEST_CASE("skew of zero is the zero matrix") {
  CHECK(skew(Vec3::Zero()).isZero(0.0));
}

TEST_CASE("skew reproduces the canonical cross product") {
  const Vec3 out = skew(Vec3(1, 0, 0)) * Vec3(0, 1, 0);
  CHECK((out - Vec3(0, 0, 1)).norm() == doctest::Approx(0.0).epsilon(0.0));
}

TEST_CASE("skew agrees with the cross product on random inputs") {
  auto rng = make_rng(1);
  for (int i = 0; i < 200; ++i) {
    const Vec3 a = random_vec3(rng), b = random_vec3(rng);
    CHECK((skew(a) * b - a.cross(b)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(max_abs_diff(skew(a), -skew(a).transpose()) == 0.0);
    CHECK((skew(a) * a).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("angle_axis_of identity") {
  const AngleAxis aa = angle_axis_of(Mat3::Identity());
  CHECK(aa.angle == 0.0);
  CHECK((aa.axis - Vec3(1, 0, 0)).norm() == 0.0);
}

TEST_CASE("angle_axis_of a quarter turn about z") {
  const AngleAxis aa = angle_axis_of(rot_of(Vec3(0, 0, 1), M_PI / 2));
  CHECK(aa.angle == doctest::Approx(M_PI / 2).epsilon(1e-14));
  CHECK((aa.axis - Vec3(0, 0, 1)).norm() < 1e-14);
}

TEST_CASE("angle_axis_of at a half turn picks the positive-major-axis sign") {
  const AngleAxis aa = angle_axis_of(rot_of(Vec3(0, 0, -1), M_PI));
  CHECK(aa.angle == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(aa.axis.z() > 0.0);
}

TEST_CASE("angle_axis_of round-trips random rotations") {
  auto rng = make_rng(2);
  for (int i = 0; i < 300; ++i) {
    const Mat3 R = random_rotation(rng);
    const AngleAxis aa = angle_axis_of(R);
    CHECK(aa.angle >= 0.0);
    CHECK(aa.angle <= M_PI + 1e-15);
    CHECK(std::abs(aa.axis.norm() - 1.0) < 1e-12);
    CHECK(max_abs_diff(rot_of(aa), R) < 1e-9);
  }
}

TEST_CASE("rot_of basics") {
  CHECK(max_abs_diff(rot_of(Vec3(0.3, -0.8, 0.52).normalized(), 0.0),
                     Mat3::Identity()) == 0.0);
  CHECK(max_abs_diff(rot_of(Vec3(0, 0, 1), M_PI),
                     Eigen::Vector3d(-1, -1, 1).asDiagonal().toDenseMatrix()) < 1e-15);
}

TEST_CASE("same-axis rotations compose additively") {
  auto rng = make_rng(3);
  for (int i = 0; i < 100; ++i) {
    const Vec3 k = random_vec3(rng).normalized();
    std::uniform_real_distribution<double> u(0.0, M_PI);
    const double theta = u(rng);
    CHECK(max_abs_diff(rot_of(k, theta / 2) * rot_of(k, theta / 2), rot_of(k, theta)) <
          1e-12);
    std::uniform_real_distribution<double> ua(0.0, 1.0);
    const double a = ua(rng);
    CHECK(max_abs_diff(rot_of(k, a * theta) * rot_of(k, (1.0 - a) * theta),
                       rot_of(k, theta)) < 1e-12);
  }
}

TEST_CASE("rotations stay orthonormal with unit determinant") {
  auto rng = make_rng(4);
  for (int i = 0; i < 100; ++i) {
    const Mat3 R = rot_of(random_vec3(rng).normalized(),
                          std::uniform_real_distribution<double>(0, M_PI)(rng));
    CHECK(max_abs_diff(R.transpose() * R, Mat3::Identity()) < 1e-10);
    CHECK(std::abs(R.determinant() - 1.0) < 1e-10);
  }
}

TEST_CASE("screw_transform with zero arm is the identity") {
  CHECK(max_abs_diff(screw_transform(Vec3::Zero()), Mat6::Identity()) == 0.0);
}

TEST_CASE("screw_transform shifts the linear part by -r x w") {
  const Vec3 r(0, 0, 1);
  Vec6 twist;
  twist << 0, 0, 0, 1, 0, 0;
  const Vec6 shifted = screw_transform(r) * twist;
  const Vec3 expected = -r.cross(Vec3(1, 0, 0));
  CHECK((shifted.head<3>() - expected).norm() < 1e-15);
  CHECK((shifted.tail<3>() - twist.tail<3>()).norm() == 0.0);

  auto rng = make_rng(5);
  for (int i = 0; i < 100; ++i) {
    const Vec3 rr = random_vec3(rng);
    const Vec6 v = random_vec6(rng);
    const Vec6 out = screw_transform(rr) * v;
    CHECK((out.head<3>() - (v.head<3>() - rr.cross(v.tail<3>()))).norm() < 1e-14);
  }
}

TEST_CASE("screw_transform composes over concatenated arms") {
  auto rng = make_rng(6);
  for (int i = 0; i < 100; ++i) {
    const Vec3 r1 = random_vec3(rng), r2 = random_vec3(rng);
    CHECK(max_abs_diff(screw_transform(r1 + r2),
                       screw_transform(r1) * screw_transform(r2)) < 1e-12);
    CHECK(max_abs_diff(screw_transform(r1) * screw_transform(-r1), Mat6::Identity()) <
          1e-12);
  }
}

TEST_CASE("quat_error of identical orientations is the identity quaternion") {
  auto rng = make_rng(7);
  const UnitQuat q = random_quat(rng);
  const UnitQuat err = quat_error(q, q);
  CHECK(err.w() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(err.xyz().norm() < 1e-14);
}

TEST_CASE("quat_error of a quarter turn about the local z axis") {
  auto rng = make_rng(8);
  const UnitQuat q1 = random_quat(rng);
  const UnitQuat q2 = UnitQuat::from_rotation(q1.rotation() * rot_of(Vec3(0, 0, 1), M_PI / 2));
  const UnitQuat err = quat_error(q1, q2);
  CHECK((err.xyz() - Vec3(0, 0, std::sin(M_PI / 4))).norm() < 1e-13);
}

TEST_CASE("quat_error matches the rotation-matrix error oracle") {
  auto rng = make_rng(9);
  for (int i = 0; i < 200; ++i) {
    const UnitQuat q1 = random_quat(rng), q2 = random_quat(rng);
    const UnitQuat err = quat_error(q1, q2);
    CHECK(err.w() >= 0.0);
    const Mat3 oracle = q1.rotation().transpose() * q2.rotation();
    CHECK(max_abs_diff(err.rotation(), oracle) < 1e-10);
  }
}

TEST_CASE("quaternion / matrix / angle-axis round trips agree") {
  auto rng = make_rng(10);
  for (int i = 0; i < 300; ++i) {
    const UnitQuat q = random_quat(rng);
    const Mat3 R = q.rotation();
    CHECK(max_abs_diff(UnitQuat::from_rotation(R).rotation(), R) < 1e-12);
    CHECK(max_abs_diff(rot_of(angle_axis_of(R)), R) < 1e-9);
  }
}

TEST_CASE("unit quaternions are canonical") {
  const UnitQuat q(-0.5, 0.5, -0.5, 0.5);  // scalar part forced non-negative
  CHECK(q.w() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(UnitQuat(0, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("pose composition and inverse") {
  auto rng = make_rng(11);
  for (int i = 0; i < 100; ++i) {
    const Pose a = random_pose(rng), b = random_pose(rng);
    const Pose ab = a * b;
    CHECK(max_abs_diff(hom_of_pose(ab), hom_of_pose(a) * hom_of_pose(b)) < 1e-12);
    const Pose ia = a.inverse();
    CHECK(max_abs_diff(hom_of_pose(a * ia), Eigen::Matrix4d::Identity()) < 1e-12);
    CHECK(pose_difference(a, a).norm() < 1e-12);
  }
}

}  // TEST_SUITE
