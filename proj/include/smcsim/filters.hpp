#pragma once

#include <array>
#include <utility>

#include "smcsim/types.hpp"

namespace smcsim {

// Continuous prototype w0^2 / (s^2 + 2 zeta w0 s + w0^2), sampled every dt.
struct FilterParams {
  double zeta = 0.9;
  double omega0 = 30.0;  // rad/s
  double dt = 0.00125;   // s

  // zeta, omega0, dt > 0 and omega0 * dt < 2.
  void validate() const;

  static FilterParams sensing(double dt) { return {0.9, 30.0, dt}; }
  static FilterParams current_feedback(double dt) { return {0.9, 3000.0, dt}; }
};

// Bilinear-transform coefficients, normalised so a0 = 1.
struct BiquadCoefficients {
  double b0, b1, b2, a1, a2;

  static BiquadCoefficients lowpass(const FilterParams& p);
  double dc_gain() const { return ((b0 + b1) + b2) / ((1.0 + a1) + a2); }
};

// Transposed direct-form II state, one pair per channel.
struct FilterState {
  std::array<Vec2, 2> z{Vec2::Zero(), Vec2::Zero()};

  // Steady state for a constant input equal to `first`.
  static FilterState settled_at(const FilterParams& p, const Vec2& first);
};

std::pair<FilterState, Vec2> filter_step(const FilterState& state, const FilterParams& params, const Vec2& input);

}  // namespace smcsim
