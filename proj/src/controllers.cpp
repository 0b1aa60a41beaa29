#include "smcsim/controllers.hpp"

#include <cmath>

#include "smcsim/errors.hpp"

namespace smcsim {

namespace {

void require_positive(const Vec2& v, const char* key) {
  if (!v.allFinite() || (v.array() <= 0.0).any()) throw ConfigError(key, "all entries must be > 0");
}

void require_non_negative(const Vec2& v, const char* key) {
  if (!v.allFinite() || (v.array() < 0.0).any()) throw ConfigError(key, "all entries must be >= 0");
}

struct Errors {
  Vec2 e;
  Vec2 edot;
};

Errors tracking_errors(const JointState& s, const Reference& ref) { return {ref.q - s.q, ref.qd - s.qd}; }

}  // namespace

void GainSet::validate(bool allow_zero_compound) const {
  require_positive(k1, "k1");
  require_positive(k2, "k2");
  require_positive(kr, "kr");
  if (allow_zero_compound) {
    require_non_negative(mu1, "mu1");
    require_non_negative(mu2, "mu2");
  } else {
    require_positive(mu1, "mu1");
    require_positive(mu2, "mu2");
  }
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) throw ConfigError("alpha", "must lie in (0, 1]");
}

ControllerState ControllerState::start(const Vec2& e, const Vec2& edot, const GainSet& gains, double t0) {
  ControllerState s;
  s.t_prev = t0;
  s.last_integrand = surface_integrand(e, edot, gains);
  return s;
}

std::string_view to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::smc: return "smc";
    case ControllerKind::nsmc: return "nsmc";
    case ControllerKind::ncsmc: return "ncsmc";
  }
  return "?";
}

ControllerKind parse_controller_kind(std::string_view name) {
  if (name == "smc") return ControllerKind::smc;
  if (name == "nsmc") return ControllerKind::nsmc;
  if (name == "ncsmc") return ControllerKind::ncsmc;
  throw ConfigError("controller", "unknown controller '" + std::string(name) + "' (expected smc, nsmc or ncsmc)");
}

void ControllerConfig::validate() const {
  // mu = 0 is admitted: it reduces the compound law to nsmc.
  gains.validate(true);
  if (kind == ControllerKind::smc) {
    require_positive(lambda, "lambda");
    require_positive(eta, "eta");
  }
  if (!(torque_limit > 0.0)) throw ConfigError("torque_limit", "must be > 0");
}

Vec2 sign(const Vec2& x) {
  return x.unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
}

Vec2 sig(const Vec2& x, double alpha) {
  if (alpha == 1.0) return x;
  return x.unaryExpr([alpha](double v) {
    const double mag = std::pow(std::abs(v), alpha);
    return v > 0.0 ? mag : (v < 0.0 ? -mag : 0.0);
  });
}

Vec2 surface_integrand(const Vec2& e, const Vec2& edot, const GainSet& gains) {
  return gains.k1.cwiseProduct(sig(e, gains.alpha)) + gains.k2.cwiseProduct(sig(edot, gains.alpha));
}

Vec2 sliding_surface(const ControllerState& state, const Vec2& /*e*/, const Vec2& edot, const GainSet& /*gains*/) {
  return edot + state.surface_integral;
}

ControllerState update_surface_integral(const ControllerState& state, const Vec2& e, const Vec2& edot,
                                        const GainSet& gains, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ClockError("surface integral: time must advance (dt = " + std::to_string(dt) + ")");
  }
  ControllerState next = state;
  const Vec2 g = surface_integrand(e, edot, gains);
  next.surface_integral += 0.5 * dt * (state.last_integrand + g);
  next.last_integrand = g;
  next.t_prev = state.t_prev + dt;
  return next;
}

Vec2 saturate(const Vec2& tau, double limit) { return tau.cwiseMax(-limit).cwiseMin(limit); }

ControlOutput nsmc_control(const RobotParams& model, const JointState& state, const Reference& ref,
                           const ControllerState& cstate, const GainSet& gains, ReachingSignal reaching_on) {
  const auto [e, edot] = tracking_errors(state, ref);
  const Mat2 m = inertia_matrix(model, state.q);

  ControlOutput out;
  out.surface = sliding_surface(cstate, e, edot, gains);

  const Vec2 accel_eq = ref.qdd + surface_integrand(e, edot, gains);
  out.u_eq = m * accel_eq + coriolis_vector(model, state) + gravity_vector(model, state.q);

  const Vec2 switching = reaching_on == ReachingSignal::error ? sign(e) : sign(out.surface);
  out.u_r = m * gains.kr.cwiseProduct(switching);
  out.tau = out.commanded();
  return out;
}

ControlOutput ncsmc_control(const RobotParams& model, const JointState& state, const Reference& ref,
                            const ControllerState& cstate, const GainSet& gains, ReachingSignal reaching_on) {
  ControlOutput out = nsmc_control(model, state, ref, cstate, gains, reaching_on);
  const auto [e, edot] = tracking_errors(state, ref);
  const Vec2 accel_n = -gains.mu1.cwiseProduct(e) - gains.mu2.cwiseProduct(edot);
  // + 0.0 folds -0 into +0 so mu = 0 reproduces nsmc_control bit for bit.
  out.u_n = (inertia_matrix(model, state.q) * accel_n).array() + 0.0;
  out.tau = out.commanded();
  return out;
}

ControlOutput conventional_smc_control(const RobotParams& model, const JointState& state, const Reference& ref,
                                       const ControllerState& /*cstate*/, const GainSet& /*gains*/,
                                       const Vec2& lambda, const Vec2& eta) {
  const auto [e, edot] = tracking_errors(state, ref);
  const Mat2 m = inertia_matrix(model, state.q);

  ControlOutput out;
  out.surface = edot + lambda.cwiseProduct(e);
  out.u_eq = m * (ref.qdd + lambda.cwiseProduct(edot)) + coriolis_vector(model, state) +
             gravity_vector(model, state.q);
  out.u_r = m * eta.cwiseProduct(sign(out.surface));
  out.tau = out.commanded();
  return out;
}

ControlOutput compute_control(const ControllerConfig& cfg, const RobotParams& model, const JointState& state,
                              const Reference& ref, const ControllerState& cstate) {
  ControlOutput out;
  switch (cfg.kind) {
    case ControllerKind::smc:
      out = conventional_smc_control(model, state, ref, cstate, cfg.gains, cfg.lambda, cfg.eta);
      break;
    case ControllerKind::nsmc:
      out = nsmc_control(model, state, ref, cstate, cfg.gains, cfg.reaching_on);
      break;
    case ControllerKind::ncsmc:
      out = ncsmc_control(model, state, ref, cstate, cfg.gains, cfg.reaching_on);
      break;
  }
  const Vec2 limited = saturate(out.tau, cfg.torque_limit);
  out.saturated = limited != out.tau;
  out.tau = limited;
  return out;
}

}  // namespace smcsim
