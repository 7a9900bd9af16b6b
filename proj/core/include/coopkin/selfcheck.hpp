#pragma once

#include <coopkin/coop.hpp>

#include <string>
#include <vector>

namespace coopkin {

struct IdentityCheck {
  std::string name;
  double max_error{0.0};
  double tolerance{0.0};
  bool passed{false};
};

/// Evaluates the closed-form linking-map identities over the alpha grid
/// {0, 0.1, ..., 1} and the given number of random task twists:
/// the CTS/ECTS inverses, the Penrose conditions of the relative split, the
/// generalized-inverse and invariance properties of the asymmetric relative
/// map, the task-priority consistency identity, the absolute/relative
/// orthogonality and the two coupling coefficients.
///
/// inject_fault flips a sign inside the invariance check; it exists so that a
/// failure path can be exercised end to end.
std::vector<IdentityCheck> run_identity_suite(int random_twists = 1000,
                                              unsigned rng_seed = 20240513u,
                                              bool inject_fault = false);

}  // namespace coopkin
