#pragma once

#include <string>
#include <string_view>

#include "smcsim/dynamics.hpp"
#include "smcsim/trajectory.hpp"
#include "smcsim/types.hpp"

namespace smcsim {

// Diagonal gains, stored as their diagonals.
struct GainSet {
  Vec2 k1{580.0, 580.0};
  Vec2 k2{50.0, 50.0};
  Vec2 kr{30.0, 30.0};
  Vec2 mu1{40.0, 40.0};
  Vec2 mu2{40.0, 40.0};
  double alpha = 1.0;  // sig() exponent

  // All gains > 0, 0 < alpha <= 1. Pass allow_zero_compound to admit
  // mu1 = mu2 = 0 (used to reduce the compound law to the plain one).
  void validate(bool allow_zero_compound = false) const;
};

// Running value of the surface integral  int_0^t (k1 sig(e) + k2 sig(e')) dt.
struct ControllerState {
  Vec2 surface_integral = Vec2::Zero();
  double t_prev = 0.0;
  Vec2 last_integrand = Vec2::Zero();

  // Empty integral at t0; the integrand sample at t0 opens the first
  // trapezoid interval.
  static ControllerState start(const Vec2& e, const Vec2& edot, const GainSet& gains, double t0 = 0.0);
};

// All components are joint torques (N m). tau is the applied torque after
// saturation; the pre-saturation command is u_eq + u_r + u_n.
struct ControlOutput {
  Vec2 tau = Vec2::Zero();
  Vec2 surface = Vec2::Zero();
  Vec2 u_eq = Vec2::Zero();
  Vec2 u_r = Vec2::Zero();
  Vec2 u_n = Vec2::Zero();
  bool saturated = false;

  Vec2 commanded() const { return u_eq + u_r + u_n; }
};

enum class ControllerKind { smc, nsmc, ncsmc };
enum class ReachingSignal { error, surface };

std::string_view to_string(ControllerKind kind);
// Throws ConfigError for anything other than smc | nsmc | ncsmc.
ControllerKind parse_controller_kind(std::string_view name);

// Everything needed to evaluate any of the three laws.
struct ControllerConfig {
  ControllerKind kind = ControllerKind::ncsmc;
  GainSet gains;
  ReachingSignal reaching_on = ReachingSignal::error;
  Vec2 lambda{10.0, 10.0};  // conventional SMC surface slope
  Vec2 eta{30.0, 30.0};     // conventional SMC switching gain
  double torque_limit = 100.0;

  void validate() const;
};

// sign with sign(0) = 0.
Vec2 sign(const Vec2& x);
// |x|^alpha sign(x), componentwise. alpha = 1 returns x.
Vec2 sig(const Vec2& x, double alpha);

Vec2 surface_integrand(const Vec2& e, const Vec2& edot, const GainSet& gains);

// f = e' + surface_integral. Does not touch the state.
Vec2 sliding_surface(const ControllerState& state, const Vec2& e, const Vec2& edot, const GainSet& gains);

// Closes the trapezoid over [t_prev, t_prev + dt] with the stored integrand
// sample and the one at (e, edot). Throws ClockError unless dt > 0.
ControllerState update_surface_integral(const ControllerState& state, const Vec2& e, const Vec2& edot,
                                        const GainSet& gains, double dt);

Vec2 saturate(const Vec2& tau, double limit);

// New-surface SMC:
//   tau_eq = M (qdd_d + k1 sig(e) + k2 sig(e')) + N + G
//   tau_r  = M Kr sign(e)        (or sign(f) with ReachingSignal::surface)
ControlOutput nsmc_control(const RobotParams& model, const JointState& state, const Reference& ref,
                           const ControllerState& cstate, const GainSet& gains,
                           ReachingSignal reaching_on = ReachingSignal::error);

// Compound law: nsmc_control plus tau_n = M (-mu1 e - mu2 e').
ControlOutput ncsmc_control(const RobotParams& model, const JointState& state, const Reference& ref,
                            const ControllerState& cstate, const GainSet& gains,
                            ReachingSignal reaching_on = ReachingSignal::error);

// Classical first-order SMC baseline with s = e' + lambda e:
//   tau_eq = M (qdd_d + lambda e') + N + G,  tau_r = M eta sign(s).
// The logged surface is s.
ControlOutput conventional_smc_control(const RobotParams& model, const JointState& state, const Reference& ref,
                                       const ControllerState& cstate, const GainSet& gains, const Vec2& lambda,
                                       const Vec2& eta);

// Dispatches on cfg.kind and applies the torque limit.
ControlOutput compute_control(const ControllerConfig& cfg, const RobotParams& model, const JointState& state,
                              const Reference& ref, const ControllerState& cstate);

}  // namespace smcsim
