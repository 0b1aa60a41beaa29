#include "smcsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smcsim/errors.hpp"
#include "smcsim/numerics.hpp"

namespace smcsim {

namespace {

void require_positive(double v, const char* key) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw ConfigError(key, "must be a finite value > 0 (got " + std::to_string(v) + ")");
  }
}

}  // namespace

void RobotParams::validate() const {
  require_positive(l1, "l1");
  require_positive(l2, "l2");
  require_positive(m1, "m1");
  require_positive(m2, "m2");
  if (!std::isfinite(g) || g < 0.0) throw ConfigError("g", "must be a finite value >= 0 (got " + std::to_string(g) + ")");
}

Mat2 inertia_matrix(const RobotParams& p, const Vec2& q) {
  const double c2 = std::cos(q[1]);
  const double l2sq = p.l2 * p.l2;
  const double off = p.m2 * l2sq + p.m2 * p.l1 * p.l2 * c2;
  Mat2 m;
  m(0, 0) = (p.m1 + p.m2) * p.l1 * p.l1 + p.m2 * l2sq + 2.0 * p.m2 * p.l1 * p.l2 * c2;
  m(0, 1) = off;
  m(1, 0) = off;
  m(1, 1) = p.m2 * l2sq;
  return m;
}

Vec2 coriolis_vector(const RobotParams& p, const JointState& s) {
  const double h = p.m2 * p.l1 * p.l2 * std::sin(s.q[1]);
  const double w1 = s.qd[0];
  const double w2 = s.qd[1];
  return {-h * (2.0 * w1 * w2 + w2 * w2), -h * w1 * w2};
}

Vec2 gravity_vector(const RobotParams& p, const Vec2& q) {
  const double s1 = std::sin(q[0]);
  const double s12 = std::sin(q[0] + q[1]);
  return {-(p.m1 + p.m2) * p.g * p.l1 * s1 - p.m2 * p.g * p.l2 * s12,
          -p.m2 * p.g * p.l2 * s12};
}

Vec2 forward_dynamics(const RobotParams& p, const JointState& s, const Vec2& tau, const Vec2& d) {
  const Vec2 rhs = tau - coriolis_vector(p, s) - gravity_vector(p, s.q);
  return solve2x2(inertia_matrix(p, s.q), rhs) + d;
}

Vec2 inverse_dynamics(const RobotParams& p, const JointState& s, const Vec2& qdd) {
  return inertia_matrix(p, s.q) * qdd + coriolis_vector(p, s) + gravity_vector(p, s.q);
}

double kinetic_energy(const RobotParams& p, const JointState& s) {
  return 0.5 * s.qd.dot(inertia_matrix(p, s.q) * s.qd);
}

void Disturbance::validate() const {
  if (!amplitude.allFinite()) throw ConfigError("amplitude", "must be finite");
  if (!std::isfinite(frequency) || frequency < 0.0) {
    throw ConfigError("frequency", "must be finite and >= 0");
  }
  if (!std::isfinite(phase)) throw ConfigError("phase", "must be finite");
  if (kind == DisturbanceKind::custom_table) {
    if (table.size() < 2) throw ConfigError("table", "needs at least two rows");
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (!std::isfinite(table[i].t) || !table[i].value.allFinite()) {
        throw ConfigError("table", "row " + std::to_string(i) + " is not finite");
      }
      if (i > 0 && table[i].t <= table[i - 1].t) {
        throw ConfigError("table", "times must be strictly increasing (row " + std::to_string(i) + ")");
      }
    }
  }
}

Vec2 disturbance_at(const Disturbance& dist, double t) {
  switch (dist.kind) {
    case DisturbanceKind::none:
      return Vec2::Zero();
    case DisturbanceKind::constant:
      return dist.amplitude;
    case DisturbanceKind::sinusoid:
      return dist.amplitude * std::sin(dist.frequency * t + dist.phase);
    case DisturbanceKind::custom_table: {
      const auto& tab = dist.table;
      if (tab.empty() || t < tab.front().t || t > tab.back().t) {
        throw OutOfRangeError("disturbance table does not cover t = " + std::to_string(t));
      }
      auto hi = std::upper_bound(tab.begin(), tab.end(), t,
                                 [](double v, const Disturbance::Sample& s) { return v < s.t; });
      if (hi == tab.end()) return tab.back().value;
      auto lo = std::prev(hi);
      const double w = (t - lo->t) / (hi->t - lo->t);
      return (1.0 - w) * lo->value + w * hi->value;
    }
  }
  return Vec2::Zero();
}

}  // namespace smcsim
