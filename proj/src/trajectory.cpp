#include "smcsim/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smcsim/errors.hpp"
#include "smcsim/numerics.hpp"

namespace smcsim {

namespace {

std::string describe_point(std::size_t i, const Vec2& p) {
  std::ostringstream os;
  os << "waypoint " << i << " (" << p.x() << ", " << p.y() << ")";
  return os.str();
}

double distance_to_segment(const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a.norm();
  const double s = std::clamp(-a.dot(ab) / len2, 0.0, 1.0);
  return (a + s * ab).norm();
}

// Quintic rest-to-rest blend 10s^3 - 15s^4 + 6s^5 and its first two derivatives.
struct Blend {
  double s, ds, dds;
};

Blend quintic(double u) {
  const double u2 = u * u;
  const double u3 = u2 * u;
  return {u3 * (10.0 - 15.0 * u + 6.0 * u2), 30.0 * u2 * (1.0 - 2.0 * u + u2), 60.0 * u * (1.0 - 3.0 * u + 2.0 * u2)};
}

Reference sinusoid_reference(const TrajectorySpec& spec, double t) {
  Reference r;
  for (int i = 0; i < 2; ++i) {
    const double w = spec.frequency[i];
    const double arg = w * t + spec.phase[i];
    const double a = spec.amplitude[i];
    r.q[i] = spec.offset[i] + a * std::sin(arg);
    r.qd[i] = a * w * std::cos(arg);
    r.qdd[i] = -a * w * w * std::sin(arg);
  }
  return r;
}

Reference cartesian_reference(const TrajectorySpec& spec, const RobotParams& robot, double t) {
  const auto& wp = spec.waypoints;
  const std::size_t n = wp.size();
  const std::size_t segments = spec.loop ? n : n - 1;

  Vec2 a = wp.back();
  Vec2 b = wp.back();
  std::size_t ia = n - 1;
  std::size_t ib = n - 1;
  Blend blend{0.0, 0.0, 0.0};
  if (segments > 0) {
    const double seg = spec.segment_time;
    double k = std::floor(t / seg);
    if (!spec.loop && k >= static_cast<double>(segments)) {
      // hold final waypoint
    } else {
      const auto idx = static_cast<std::size_t>(std::fmod(k, static_cast<double>(segments)));
      ia = idx;
      ib = (idx + 1) % n;
      a = wp[ia];
      b = wp[ib];
      blend = quintic((t - k * seg) / seg);
    }
  }

  const double seg = spec.segment_time;
  const Vec2 delta = b - a;
  const Vec2 p = a + blend.s * delta;
  const Vec2 v = (blend.ds / seg) * delta;
  const Vec2 acc = (blend.dds / (seg * seg)) * delta;

  Reference r;
  try {
    r.q = inverse_kinematics(robot, p, spec.elbow);
  } catch (const ReachabilityError&) {
    throw ReachabilityError("cartesian path between " + describe_point(ia, a) + " and " +
                            describe_point(ib, b) + " leaves the reachable annulus");
  }
  const Mat2 jac = kinematic_jacobian(robot, r.q);
  r.qd = solve2x2(jac, v);

  const double c1 = std::cos(r.q[0]);
  const double s1 = std::sin(r.q[0]);
  const double c12 = std::cos(r.q[0] + r.q[1]);
  const double s12 = std::sin(r.q[0] + r.q[1]);
  const double w1 = r.qd[0];
  const double w12 = r.qd[0] + r.qd[1];
  const Vec2 jdot_qd{-robot.l1 * c1 * w1 * w1 - robot.l2 * c12 * w12 * w12,
                     -robot.l1 * s1 * w1 * w1 - robot.l2 * s12 * w12 * w12};
  r.qdd = solve2x2(jac, acc - jdot_qd);
  return r;
}

}  // namespace

void TrajectorySpec::validate(const RobotParams& robot) const {
  if (kind == TrajectoryKind::joint_sinusoid) {
    if (!amplitude.allFinite()) throw ConfigError("amplitude", "must be finite");
    if (!frequency.allFinite() || (frequency.array() < 0.0).any()) {
      throw ConfigError("frequency", "must be finite and >= 0");
    }
    if (!phase.allFinite()) throw ConfigError("phase", "must be finite");
    if (!offset.allFinite()) throw ConfigError("offset", "must be finite");
    return;
  }

  if (waypoints.empty()) throw ConfigError("waypoints", "cartesian path needs at least one waypoint");
  if (!std::isfinite(segment_time) || segment_time <= 0.0) {
    throw ConfigError("segment_time", "must be > 0");
  }
  const double inner = std::abs(robot.l1 - robot.l2) + kReachMargin;
  const double outer = robot.l1 + robot.l2 - kReachMargin;
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    const Vec2& w = waypoints[i];
    if (!w.allFinite()) throw ConfigError("waypoints", describe_point(i, w) + " is not finite");
    const double r = w.norm();
    if (!(r > inner && r < outer)) {
      throw ConfigError("waypoints", describe_point(i, w) + " is outside the reachable annulus (" +
                                         std::to_string(inner) + ", " + std::to_string(outer) + ") m");
    }
  }
  const std::size_t n = waypoints.size();
  const std::size_t segments = loop ? n : n - 1;
  for (std::size_t i = 0; i < segments && n > 1; ++i) {
    const std::size_t j = (i + 1) % n;
    if (!(distance_to_segment(waypoints[i], waypoints[j]) > inner)) {
      throw ConfigError("waypoints", "segment from " + describe_point(i, waypoints[i]) + " to " +
                                         describe_point(j, waypoints[j]) + " passes through the unreachable core");
    }
  }
}

Reference reference_at(const TrajectorySpec& spec, const RobotParams& robot, double t) {
  if (spec.kind == TrajectoryKind::joint_sinusoid) return sinusoid_reference(spec, t);
  return cartesian_reference(spec, robot, t);
}

Vec2 forward_kinematics(const RobotParams& p, const Vec2& q) {
  const double a12 = q[0] + q[1];
  return {p.l1 * std::cos(q[0]) + p.l2 * std::cos(a12), p.l1 * std::sin(q[0]) + p.l2 * std::sin(a12)};
}

Mat2 kinematic_jacobian(const RobotParams& p, const Vec2& q) {
  const double a12 = q[0] + q[1];
  const double s1 = std::sin(q[0]);
  const double c1 = std::cos(q[0]);
  const double s12 = std::sin(a12);
  const double c12 = std::cos(a12);
  Mat2 j;
  j << -p.l1 * s1 - p.l2 * s12, -p.l2 * s12,
        p.l1 * c1 + p.l2 * c12,  p.l2 * c12;
  return j;
}

Vec2 inverse_kinematics(const RobotParams& p, const Vec2& target, ElbowBranch elbow) {
  const double r = target.norm();
  const double reach = p.l1 + p.l2;
  const double core = std::abs(p.l1 - p.l2);
  if (!std::isfinite(r) || !(r < reach && r > core)) {
    std::ostringstream os;
    os << "target (" << target.x() << ", " << target.y() << ") is outside the reachable annulus";
    throw ReachabilityError(os.str());
  }
  // 1 - c2 and 1 + c2 factored to keep precision near the workspace boundary.
  const double denom = 2.0 * p.l1 * p.l2;
  const double one_minus_c2 = (reach - r) * (reach + r) / denom;
  const double one_plus_c2 = (r - core) * (r + core) / denom;
  const double c2 = 0.5 * (one_plus_c2 - one_minus_c2);
  double s2 = std::sqrt(std::max(0.0, one_minus_c2 * one_plus_c2));
  if (elbow == ElbowBranch::up) s2 = -s2;

  const double q2 = std::atan2(s2, c2);
  const double q1 = std::atan2(target.y(), target.x()) - std::atan2(p.l2 * s2, p.l1 + p.l2 * c2);
  return {q1, q2};
}

}  // namespace smcsim
