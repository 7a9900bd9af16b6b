#pragma once

#include <coopkin/chain.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coopkin {

/// Parse or validation failure while loading a robot description. The message
/// carries the line and field where the problem was found.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedSystem {
  DualArmSystem system;
  JointVector seed;                    // initial joint vector [q1; q2]
  std::vector<std::string> warnings;   // non-fatal issues (defaults applied, ...)
};

/// Parses a dual-arm robot description.
///
/// The format is line-oriented key = value text with [section] headers and
/// '#' comments. Required sections are [arm.left] and [arm.right]; each
/// defines
///   base_pose     = [x, y, z, qw, qx, qy, qz]
///   dh            = [[a, alpha, d, theta_offset, kind], ...]   kind: revolute|prismatic
///   limits        = [[lo, hi], ...]
///   tool_offset   = [x, y, z, qw, qx, qy, qz]      (optional, identity)
///   object_offset = [x, y, z, qw, qx, qy, qz]      (optional, identity + warning)
/// and a top-level [seed] section with
///   joints        = [q1, ..., q_{2n}]              (optional, zeros + warning)
///
/// Arrays may span multiple lines. Each arm needs at least 6 joints.
LoadedSystem load_system(std::string_view config_text);

/// load_system on the contents of a file.
LoadedSystem load_system_file(const std::string &path);

/// Writes a system back to the config format accepted by load_system, with
/// full round-trip precision.
std::string serialize_system(const DualArmSystem &sys, const JointVector &seed);

}  // namespace coopkin
