#pragma once

#include <vector>

#include "smcsim/dynamics.hpp"
#include "smcsim/types.hpp"

namespace smcsim {

// Desired joint position, velocity and acceleration at one instant.
struct Reference {
  Vec2 q = Vec2::Zero();
  Vec2 qd = Vec2::Zero();
  Vec2 qdd = Vec2::Zero();
};

enum class TrajectoryKind { joint_sinusoid, cartesian_path };

// `up` puts the elbow on the positive-y side of the base-to-tip line for a
// tip on the positive x axis (theta2 <= 0); `down` mirrors it (theta2 >= 0).
enum class ElbowBranch { up, down };

struct TrajectorySpec {
  TrajectoryKind kind = TrajectoryKind::joint_sinusoid;

  // joint_sinusoid: q_i(t) = offset_i + amplitude_i * sin(frequency_i * t + phase_i)
  Vec2 amplitude{0.5, 0.5};  // rad
  Vec2 frequency{1.0, 1.0};  // rad/s
  Vec2 phase{0.0, 0.0};      // rad
  Vec2 offset{0.0, 0.0};     // rad

  // cartesian_path: straight segments between waypoints, quintic time scaling
  // over `segment_time` seconds each, so the reference is C2 and comes to
  // rest at every waypoint. With `loop` the path returns to the first
  // waypoint and repeats; otherwise it holds the last waypoint.
  std::vector<Vec2> waypoints;  // m
  double segment_time = 1.0;    // s
  ElbowBranch elbow = ElbowBranch::up;
  bool loop = false;

  static constexpr double kReachMargin = 1e-6;  // m

  // Throws ConfigError; unreachable waypoints or segments are named by index.
  void validate(const RobotParams& robot) const;
};

Reference reference_at(const TrajectorySpec& spec, const RobotParams& robot, double t);

Vec2 forward_kinematics(const RobotParams& p, const Vec2& q);

// d(x, y)/dq.
Mat2 kinematic_jacobian(const RobotParams& p, const Vec2& q);

// Requires |l1 - l2| < |target| < l1 + l2; throws ReachabilityError otherwise.
Vec2 inverse_kinematics(const RobotParams& p, const Vec2& target, ElbowBranch elbow);

}  // namespace smcsim
