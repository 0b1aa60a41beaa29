#pragma once

#include <array>
#include <vector>

#include "smcsim/types.hpp"

namespace smcsim {

// Two-link planar arm with point-like links, SI units throughout.
struct RobotParams {
  double l1 = 0.320;  // m
  double l2 = 0.360;  // m
  double m1 = 0.386;  // kg
  double m2 = 0.722;  // kg
  double g = 9.81;    // m/s^2

  // Throws ConfigError naming the first invalid field. g = 0 switches gravity off.
  void validate() const;
};

// M(q). Symmetric by construction.
Mat2 inertia_matrix(const RobotParams& p, const Vec2& q);

// Coriolis/centrifugal torque vector. This is the full velocity-dependent
// term: the dynamics read M(q) q'' + N(q, q') + G(q) = tau.
Vec2 coriolis_vector(const RobotParams& p, const JointState& s);

// Gravity torque, with the sign convention of the model's reference
// (G = 0 at q = 0; both components negative for small positive angles).
Vec2 gravity_vector(const RobotParams& p, const Vec2& q);

// q'' = M^-1 (tau - N - G) + d, with d the lumped disturbance expressed as a
// joint acceleration. Throws SingularMatrixError if M cannot be solved.
Vec2 forward_dynamics(const RobotParams& p, const JointState& s, const Vec2& tau, const Vec2& d);

// tau = M q'' + N + G, the algebraic inverse of forward_dynamics with d = 0.
Vec2 inverse_dynamics(const RobotParams& p, const JointState& s, const Vec2& qdd);

// 0.5 q'^T M(q) q'.
double kinetic_energy(const RobotParams& p, const JointState& s);

enum class DisturbanceKind { none, constant, sinusoid, custom_table };

// The lumped disturbance d(t), in joint-acceleration units (rad/s^2).
struct Disturbance {
  struct Sample {
    double t;
    Vec2 value;
  };

  DisturbanceKind kind = DisturbanceKind::none;
  Vec2 amplitude = Vec2::Zero();
  double frequency = 0.0;  // rad/s, sinusoid only
  double phase = 0.0;      // rad, sinusoid only
  std::vector<Sample> table;  // custom_table only, strictly increasing t

  void validate() const;
};

// Deterministic d(t). custom_table interpolates linearly and throws
// OutOfRangeError outside [table.front().t, table.back().t].
Vec2 disturbance_at(const Disturbance& dist, double t);

}  // namespace smcsim
