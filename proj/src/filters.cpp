#include "smcsim/filters.hpp"

#include <cmath>

#include "smcsim/errors.hpp"

namespace smcsim {

void FilterParams::validate() const {
  if (!std::isfinite(zeta) || zeta <= 0.0) throw ConfigError("zeta", "must be > 0");
  if (!std::isfinite(omega0) || omega0 <= 0.0) throw ConfigError("omega0", "must be > 0");
  if (!std::isfinite(dt) || dt <= 0.0) throw ConfigError("dt", "must be > 0");
  if (!(omega0 * dt < 2.0)) {
    throw ConfigError("omega0", "omega0 * dt must be < 2 (got " + std::to_string(omega0 * dt) + ")");
  }
}

BiquadCoefficients BiquadCoefficients::lowpass(const FilterParams& p) {
  // s -> k (z - 1) / (z + 1), k = 2 / dt.
  const double k = 2.0 / p.dt;
  const double k2 = k * k;
  const double w2 = p.omega0 * p.omega0;
  const double cross = 2.0 * p.zeta * p.omega0 * k;
  const double a0 = k2 + cross + w2;
  BiquadCoefficients c{};
  c.a1 = 2.0 * (w2 - k2) / a0;
  c.a2 = (k2 - cross + w2) / a0;
  // b0 = w2 / a0 analytically; taking it from the denominator keeps the
  // stored coefficients at unit DC gain despite the cancellation in 1 + a1 + a2.
  c.b0 = ((1.0 + c.a1) + c.a2) / 4.0;
  c.b1 = 2.0 * c.b0;
  c.b2 = c.b0;
  return c;
}

FilterState FilterState::settled_at(const FilterParams& p, const Vec2& first) {
  const auto c = BiquadCoefficients::lowpass(p);
  FilterState s;
  s.z[0] = (1.0 - c.b0) * first;
  s.z[1] = (c.b2 - c.a2) * first;
  return s;
}

std::pair<FilterState, Vec2> filter_step(const FilterState& state, const FilterParams& params, const Vec2& input) {
  const auto c = BiquadCoefficients::lowpass(params);
  const Vec2 y = c.b0 * input + state.z[0];
  FilterState next;
  next.z[0] = c.b1 * input - c.a1 * y + state.z[1];
  next.z[1] = c.b2 * input - c.a2 * y;
  return {next, y};
}

}  // namespace smcsim
