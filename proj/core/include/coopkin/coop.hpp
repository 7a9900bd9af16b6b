#pragma once

#include <coopkin/geometry.hpp>

namespace coopkin {

/// Cooperation parameter alpha in [0, 1]. 0.5 splits a relative task evenly
/// between the arms; 0 and 1 are the master-slave modes.
class CoopParam {
 public:
  explicit CoopParam(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// The task-space linking maps between stacked per-arm twists [v1; v2] and
/// cooperative (absolute/relative) twists.
enum class LinkKind {
  cts,             // 12x12 [[I/2, I/2], [-I, I]]
  ects,            // 12x12 [[aI, (1-a)I], [-I, I]]
  relative,        // 6x12  [-I, I]
  asym_relative,   // 6x12  [-(1-a)I, aI] / ((1-a)^2 + a^2)
  abs_symmetric,   // 6x12  [I/2, I/2]
  abs_asymmetric,  // 6x12  [aI, (1-a)I]
};

struct LinkingMap {
  LinkKind kind;
  double alpha;  // ignored by the symmetric kinds
  Eigen::MatrixXd matrix;
};

/// Closed-form linking matrix for a map kind. alpha is ignored by the
/// symmetric kinds (cts, relative, abs_symmetric).
LinkingMap linking(LinkKind kind, CoopParam alpha = CoopParam(0.5));

/// Inverse of the CTS linking matrix, [[I, -I/2], [I, I/2]]: each arm executes
/// the absolute motion and half of the relative motion.
Mat12 invert_cts();

/// Inverse of the ECTS linking matrix, [[I, -(1-a)I], [I, aI]].
Mat12 invert_ects(CoopParam alpha);

/// Moore-Penrose pseudo-inverse of the relative map, [-I; I] / 2: the
/// symmetric split of a relative task.
Mat12x6 pinv_relative();

/// Pseudo-inverse of the asymmetric relative map, [-(1-a)I; aI]: distributes
/// a relative task with degree of asymmetry alpha.
Mat12x6 pinv_asym_relative(CoopParam alpha);

/// Relative motion induced per unit of commanded asymmetric absolute motion:
/// (1 - 2a) / (a^2 + (1-a)^2). Zero only at a = 0.5.
double coupling_rel_from_abs(CoopParam alpha);

/// Symmetric absolute motion induced per unit of relative motion distributed
/// through pinv_asym_relative: (2a - 1) / 2.
double induced_abs_from_rel(CoopParam alpha);

enum class FrameConvention { cts, ects, asym_relative };

/// Absolute and relative cooperative frames for a pair of poses.
struct CoopFrames {
  Pose absolute;
  Pose relative;
  FrameConvention convention;
  double alpha;
};

/// Builds the cooperative motion frames for the given convention.
///  - cts: absolute position at the midpoint, absolute orientation half-way
///    along the relative rotation; relative frame (p2 - p1, R1^T R2).
///  - ects: absolute position a*p1 + (1-a)*p2 and orientation
///    R1 * R_k12((1-a)*theta12); relative frame as in cts. Note the printed
///    convention weights arm 1 by alpha in position but arm 2 by alpha in the
///    velocity split; this asymmetry is kept as published.
///  - asym_relative: the asymmetric relative frame built from the global
///    axis-angle decompositions of R1 and R2; absolute frame as in ects.
CoopFrames cooperative_frames(const Pose &pose1, const Pose &pose2,
                              FrameConvention convention,
                              CoopParam alpha = CoopParam(0.5));

/// Degree of asymmetry of a pair of twists, |v2| / (|v1| + |v2|) on the full
/// 6-D norms. Returns 0.5 when both twists vanish. Per-block variants avoid
/// mixing linear and angular units.
double asymmetry_measure(const Twist6 &v1, const Twist6 &v2);
double asymmetry_measure(double v1, double v2);
double asymmetry_measure_linear(const Twist6 &v1, const Twist6 &v2);
double asymmetry_measure_angular(const Twist6 &v1, const Twist6 &v2);

}  // namespace coopkin
