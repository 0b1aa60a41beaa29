#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "smcsim/errors.hpp"
#include "smcsim/trajectory.hpp"

using namespace smcsim;

namespace {

constexpr double pi = std::numbers::pi;
const RobotParams arm;

TrajectorySpec circle() {
  TrajectorySpec s;
  s.kind = TrajectoryKind::cartesian_path;
  for (int i = 0; i < 8; ++i) {
    const double a = 2 * pi * i / 8;
    s.waypoints.push_back({0.40 + 0.1 * std::cos(a), 0.20 + 0.1 * std::sin(a)});
  }
  s.segment_time = 0.75;
  s.loop = true;
  return s;
}

Vec2 random_reachable(std::mt19937_64& rng) {
  const double inner = std::abs(arm.l1 - arm.l2);
  const double outer = arm.l1 + arm.l2;
  std::uniform_real_distribution<double> radius(inner + 1e-6, outer - 1e-6), angle(-pi, pi);
  const double r = radius(rng);
  const double a = angle(rng);
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace

TEST(ForwardKinematics, CardinalPoses) {
  EXPECT_LE((forward_kinematics(arm, {0, 0}) - Vec2(arm.l1 + arm.l2, 0)).norm(), 1e-15);
  EXPECT_LE((forward_kinematics(arm, {pi / 2, 0}) - Vec2(0, arm.l1 + arm.l2)).norm(), 1e-15);
  EXPECT_LE((forward_kinematics(arm, {0, pi / 2}) - Vec2(arm.l1, arm.l2)).norm(), 1e-15);
}

TEST(InverseKinematics, NearFullReach) {
  const Vec2 q = inverse_kinematics(arm, {arm.l1 + arm.l2 - 1e-9, 0.0}, ElbowBranch::up);
  EXPECT_NEAR(q[1], 0.0, 1e-3);
  EXPECT_LE((forward_kinematics(arm, q) - Vec2(arm.l1 + arm.l2 - 1e-9, 0.0)).norm(), 1e-9);
}

TEST(InverseKinematics, RightAngleElbow) {
  const Vec2 target{arm.l1, arm.l2};  // |target| = sqrt(l1^2 + l2^2)
  const Vec2 down = inverse_kinematics(arm, target, ElbowBranch::down);
  const Vec2 up = inverse_kinematics(arm, target, ElbowBranch::up);
  EXPECT_NEAR(down[0], 0.0, 1e-12);
  EXPECT_NEAR(down[1], pi / 2, 1e-12);
  EXPECT_NEAR(up[1], -pi / 2, 1e-12);
  EXPECT_LE((forward_kinematics(arm, up) - target).norm(), 1e-12);
}

TEST(InverseKinematics, BranchesDifferButReachSamePoint) {
  const Vec2 target{0.35, 0.3};
  const Vec2 up = inverse_kinematics(arm, target, ElbowBranch::up);
  const Vec2 down = inverse_kinematics(arm, target, ElbowBranch::down);
  EXPECT_GT((up - down).norm(), 0.1);
  EXPECT_LE(up[1], 0.0);
  EXPECT_GE(down[1], 0.0);
  EXPECT_LE((forward_kinematics(arm, up) - forward_kinematics(arm, down)).norm(), 1e-12);
}

TEST(InverseKinematics, RoundTripBothBranches) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 target = random_reachable(rng);
    for (auto branch : {ElbowBranch::up, ElbowBranch::down}) {
      EXPECT_LE((forward_kinematics(arm, inverse_kinematics(arm, target, branch)) - target).norm(), 1e-9);
    }
  }
}

TEST(InverseKinematics, UnreachableThrows) {
  EXPECT_THROW(inverse_kinematics(arm, {arm.l1 + arm.l2 + 1e-6, 0}, ElbowBranch::up), ReachabilityError);
  EXPECT_THROW(inverse_kinematics(arm, {arm.l1 + arm.l2, 0}, ElbowBranch::up), ReachabilityError);
  EXPECT_THROW(inverse_kinematics(arm, {0.01, 0.0}, ElbowBranch::up), ReachabilityError);
  EXPECT_THROW(inverse_kinematics(arm, {std::nan(""), 0.3}, ElbowBranch::up), ReachabilityError);
}

TEST(Jacobian, MatchesFiniteDifference) {
  const Vec2 q{0.4, 1.1};
  const Mat2 j = kinematic_jacobian(arm, q);
  const double h = 1e-6;
  for (int c = 0; c < 2; ++c) {
    Vec2 dq = Vec2::Zero();
    dq[c] = h;
    const Vec2 fd = (forward_kinematics(arm, q + dq) - forward_kinematics(arm, q - dq)) / (2 * h);
    EXPECT_LE((fd - j.col(c)).norm(), 1e-8);
  }
}

TEST(Reference, ZeroAmplitudeSinusoidIsConstant) {
  TrajectorySpec s;
  s.amplitude = Vec2::Zero();
  s.offset = {0.3, -0.2};
  for (double t : {0.0, 1.3, 7.9}) {
    const Reference r = reference_at(s, arm, t);
    EXPECT_EQ(r.q, s.offset);
    EXPECT_EQ(r.qd, Vec2::Zero());
    EXPECT_EQ(r.qdd, Vec2::Zero());
  }
}

TEST(Reference, SinusoidValues) {
  const TrajectorySpec s;  // amplitude 0.5, frequency 1
  const Reference r = reference_at(s, arm, pi / 2);
  EXPECT_NEAR(r.q[0], 0.5, 1e-15);
  EXPECT_NEAR(r.qd[1], 0.0, 1e-15);
  EXPECT_NEAR(r.qdd[0], -0.5, 1e-15);
}

TEST(Reference, CartesianPointNearFullReach) {
  TrajectorySpec s;
  s.kind = TrajectoryKind::cartesian_path;
  s.waypoints = {{arm.l1 + arm.l2 - 1e-5, 0.0}};
  s.validate(arm);
  const Reference r = reference_at(s, arm, 0.4);
  EXPECT_LT(std::abs(r.q[1]), 0.05);
  EXPECT_LE((forward_kinematics(arm, r.q) - s.waypoints[0]).norm(), 1e-9);
  EXPECT_EQ(r.qd, Vec2::Zero());
}

TEST(Reference, CartesianPathFollowsWaypoints) {
  const TrajectorySpec s = circle();
  for (std::size_t i = 0; i < s.waypoints.size(); ++i) {
    const Reference r = reference_at(s, arm, i * s.segment_time);
    EXPECT_LE((forward_kinematics(arm, r.q) - s.waypoints[i]).norm(), 1e-12);
    EXPECT_LE(r.qd.norm(), 1e-12);
  }
  // loops back to the start
  const Reference again = reference_at(s, arm, s.waypoints.size() * s.segment_time);
  EXPECT_LE((forward_kinematics(arm, again.q) - s.waypoints[0]).norm(), 1e-12);
}

TEST(Reference, CartesianPathHoldsLastPointWithoutLoop) {
  TrajectorySpec s = circle();
  s.loop = false;
  const Reference r = reference_at(s, arm, 100.0);
  EXPECT_LE((forward_kinematics(arm, r.q) - s.waypoints.back()).norm(), 1e-12);
  EXPECT_EQ(r.qd, Vec2::Zero());
}

TEST(Reference, DerivativesAreSelfConsistent) {
  const double h = 1e-6;
  for (const TrajectorySpec& s : {TrajectorySpec{}, circle()}) {
    for (double t = 0.05; t < 6.0; t += 0.137) {
      const Reference lo = reference_at(s, arm, t - h);
      const Reference mid = reference_at(s, arm, t);
      const Reference hi = reference_at(s, arm, t + h);
      EXPECT_LE(((hi.q - lo.q) / (2 * h) - mid.qd).cwiseAbs().maxCoeff(), 1e-5) << "t = " << t;
      EXPECT_LE(((hi.qd - lo.qd) / (2 * h) - mid.qdd).cwiseAbs().maxCoeff(), 1e-5) << "t = " << t;
    }
  }
}

TEST(TrajectorySpec, WaypointOutsideAnnulusIsNamed) {
  TrajectorySpec s = circle();
  s.waypoints[3] = {0.9, 0.0};
  try {
    s.validate(arm);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "waypoints");
    EXPECT_NE(std::string(e.what()).find("waypoint 3"), std::string::npos) << e.what();
  }
}

TEST(TrajectorySpec, SegmentThroughCoreRejected) {
  TrajectorySpec s;
  s.kind = TrajectoryKind::cartesian_path;
  s.waypoints = {{0.3, 0.0}, {-0.3, 0.0}};
  EXPECT_THROW(s.validate(arm), ConfigError);
}

TEST(TrajectorySpec, SinusoidNeedsFiniteValues) {
  TrajectorySpec s;
  s.frequency = {-1.0, 1.0};
  EXPECT_THROW(s.validate(arm), ConfigError);
  s = TrajectorySpec{};
  s.amplitude[1] = std::nan("");
  EXPECT_THROW(s.validate(arm), ConfigError);
}
