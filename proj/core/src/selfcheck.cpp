#include <coopkin/selfcheck.hpp>

#include <cmath>
#include <random>

namespace coopkin {

namespace {

std::vector<double> alpha_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

}  // namespace

std::vector<IdentityCheck> run_identity_suite(int random_twists, unsigned rng_seed,
                                              bool inject_fault) {
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vec6> twists(static_cast<size_t>(random_twists));
  for (Vec6 &v : twists)
    for (int i = 0; i < 6; ++i) v[i] = gauss(rng);

  const std::vector<double> grid = alpha_grid();
  const Mat6x12 L_r = linking(LinkKind::relative).matrix;
  const Mat6x12 L_a = linking(LinkKind::abs_symmetric).matrix;
  const Mat12x6 L_r_pinv = pinv_relative();

  std::vector<IdentityCheck> checks;
  const auto add = [&checks](const std::string &name, double err, double tol) {
    checks.push_back(IdentityCheck{name, err, tol, err < tol});
  };

  // CTS linking inverse, including the closed-form entries.
  {
    Mat12 expected;
    const Mat6 I = Mat6::Identity();
    expected << I, -0.5 * I, I, 0.5 * I;
    const Mat12 inv = invert_cts();
    double err = (inv - expected).cwiseAbs().maxCoeff();
    err = std::max(err,
                   (linking(LinkKind::cts).matrix * inv - Mat12::Identity())
                       .cwiseAbs()
                       .maxCoeff());
    add("cts-inverse", err, 1e-13);
  }

  // ECTS linking inverse across the grid.
  {
    double err = 0.0;
    for (double a : grid) {
      const Mat12 prod = linking(LinkKind::ects, CoopParam(a)).matrix *
                         invert_ects(CoopParam(a));
      err = std::max(err, (prod - Mat12::Identity()).cwiseAbs().maxCoeff());
    }
    add("ects-inverse", err, 1e-13);
  }

  // Moore-Penrose conditions of the symmetric relative split.
  {
    const Eigen::MatrixXd M = L_r, X = L_r_pinv;
    double err = (M * X * M - M).cwiseAbs().maxCoeff();
    err = std::max(err, (X * M * X - X).cwiseAbs().maxCoeff());
    err = std::max(err, ((M * X).transpose() - M * X).cwiseAbs().maxCoeff());
    err = std::max(err, ((X * M).transpose() - X * M).cwiseAbs().maxCoeff());
    add("relative-pinv-penrose", err, 1e-13);
  }

  // The asymmetric split is a generalized inverse of the relative map.
  {
    double err = 0.0;
    for (double a : grid) {
      const Mat6 prod = L_r * pinv_asym_relative(CoopParam(a));
      err = std::max(err, (prod - Mat6::Identity()).cwiseAbs().maxCoeff());
    }
    add("asym-generalized-inverse", err, 1e-13);
  }

  // Asymmetric absolute motion is invariant to the asymmetric relative split.
  {
    double err = 0.0;
    for (double a : grid) {
      Mat12x6 split = pinv_asym_relative(CoopParam(a));
      if (inject_fault) split.topRows<6>() *= -1.0;
      const Mat6 prod = linking(LinkKind::abs_asymmetric, CoopParam(a)).matrix * split;
      err = std::max(err, prod.cwiseAbs().maxCoeff());
    }
    add("asym-absolute-invariance", err, 1e-13);
  }

  // Task-priority consistency: the asymmetric split equals the symmetric
  // particular solution plus its nullspace correction.
  {
    double err = 0.0;
    const Mat12 P = Mat12::Identity() - L_r_pinv * L_r;
    for (double a : grid) {
      const Mat12x6 split = pinv_asym_relative(CoopParam(a));
      for (const Vec6 &v : twists) {
        const Vec12 lhs = L_r_pinv * v + P * (split * v);
        err = std::max(err, (lhs - split * v).cwiseAbs().maxCoeff());
      }
    }
    add("priority-consistency", err, 1e-12);
  }

  // The symmetric absolute space is orthogonal to the relative space.
  {
    const Mat12x6 L_a_pinv = L_a.transpose() * (L_a * L_a.transpose()).inverse();
    add("symmetric-orthogonality", (L_r * L_a_pinv).cwiseAbs().maxCoeff(), 1e-14);
  }

  // Relative motion induced by a commanded asymmetric absolute motion.
  {
    double err = 0.0;
    for (double a : grid) {
      const Mat6x12 La = linking(LinkKind::abs_asymmetric, CoopParam(a)).matrix;
      const Mat12x6 La_pinv = La.transpose() * (La * La.transpose()).inverse();
      const Mat6 prod = L_r * La_pinv;
      const Mat6 expected =
          coupling_rel_from_abs(CoopParam(a)) * Mat6::Identity();
      err = std::max(err, (prod - expected).cwiseAbs().maxCoeff());
    }
    add("abs-to-rel-coupling", err, 1e-13);
  }

  // Symmetric absolute motion induced by the asymmetric relative split.
  {
    double err = 0.0;
    for (double a : grid) {
      const Mat6 prod = L_a * pinv_asym_relative(CoopParam(a));
      const Mat6 expected = induced_abs_from_rel(CoopParam(a)) * Mat6::Identity();
      err = std::max(err, (prod - expected).cwiseAbs().maxCoeff());
    }
    add("rel-to-abs-induction", err, 1e-13);
  }

  // The asymmetric split realizes exactly the requested degree of asymmetry.
  {
    double err = 0.0;
    for (double a : grid) {
      const Mat12x6 split = pinv_asym_relative(CoopParam(a));
      for (const Vec6 &v : twists) {
        if (v.norm() == 0.0) continue;
        const Vec12 pair = split * v;
        const double measure = asymmetry_measure(Twist6::from_vec(pair.head<6>()),
                                                 Twist6::from_vec(pair.tail<6>()));
        err = std::max(err, std::abs(measure - a));
      }
    }
    add("asymmetry-split", err, 1e-12);
  }

  return checks;
}

}  // namespace coopkin
