#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "smcsim/dynamics.hpp"
#include "smcsim/errors.hpp"

using namespace smcsim;

namespace {

constexpr double pi = std::numbers::pi;

JointState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-pi, pi), vel(-5.0, 5.0);
  return {{ang(rng), ang(rng)}, {vel(rng), vel(rng)}};
}

}  // namespace

TEST(Inertia, OffDiagonalAtRightAngleElbow) {
  RobotParams p{0.5, 0.7, 1.3, 2.1, 9.81};
  const Mat2 m = inertia_matrix(p, {0.4, pi / 2});
  EXPECT_NEAR(m(0, 1), p.m2 * p.l2 * p.l2, 1e-15);
  EXPECT_NEAR(m(1, 0), p.m2 * p.l2 * p.l2, 1e-15);
}

TEST(Inertia, StretchedArmValues) {
  const Mat2 m = inertia_matrix(RobotParams{}, {0.0, 0.0});
  EXPECT_NEAR(m(0, 0), 0.3733792, 1e-15);
  EXPECT_NEAR(m(0, 1), 0.1767456, 1e-15);
  EXPECT_NEAR(m(1, 1), 0.0935712, 1e-15);
}

TEST(Inertia, SymmetricEverywhere) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Mat2 m = inertia_matrix(RobotParams{}, random_state(rng).q);
    EXPECT_EQ((m - m.transpose()).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Inertia, PositiveDefiniteOverElbowGrid) {
  for (int i = 0; i <= 720; ++i) {
    const double th2 = -pi + 2 * pi * i / 720.0;
    Eigen::SelfAdjointEigenSolver<Mat2> es(inertia_matrix(RobotParams{}, {0.0, th2}));
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0) << "theta2 = " << th2;
  }
}

TEST(Inertia, MatchesScalarOracle) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const Vec2 q = random_state(rng).q;
    const auto o = oracle::inertia({}, q[1]);
    const Mat2 m = inertia_matrix(RobotParams{}, q);
    EXPECT_DOUBLE_EQ(m(0, 0), o[0]);
    EXPECT_DOUBLE_EQ(m(0, 1), o[1]);
    EXPECT_DOUBLE_EQ(m(1, 1), o[3]);
  }
}

TEST(Coriolis, ZeroAtRest) {
  EXPECT_EQ(coriolis_vector(RobotParams{}, {{0.3, -1.2}, {0.0, 0.0}}), Vec2::Zero());
}

TEST(Coriolis, ZeroWithStraightOrFoldedElbow) {
  EXPECT_NEAR(coriolis_vector(RobotParams{}, {{0.3, 0.0}, {1.0, 2.0}}).norm(), 0.0, 1e-15);
  EXPECT_NEAR(coriolis_vector(RobotParams{}, {{0.3, pi}, {1.0, 2.0}}).norm(), 0.0, 1e-15);
}

TEST(Coriolis, QuarterTurnElbowValue) {
  const Vec2 n = coriolis_vector(RobotParams{}, {{0.0, pi / 4}, {1.0, 2.0}});
  EXPECT_NEAR(n[0], -0.47050545808897898, 1e-14);
  EXPECT_NEAR(n[1], -0.11762636452224474, 1e-14);
}

TEST(Coriolis, QuadraticInVelocity) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> scale(-4.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    JointState s = random_state(rng);
    const double c = scale(rng);
    const Vec2 base = coriolis_vector(RobotParams{}, s);
    s.qd *= c;
    const Vec2 scaled = coriolis_vector(RobotParams{}, s);
    EXPECT_LE((scaled - c * c * base).cwiseAbs().maxCoeff(), 1e-12 * (1.0 + base.norm() * c * c));
  }
}

TEST(Gravity, ZeroAtOrigin) { EXPECT_EQ(gravity_vector(RobotParams{}, {0.0, 0.0}), Vec2::Zero()); }

TEST(Gravity, SecondComponentVanishesWhenLinksCancel) {
  EXPECT_NEAR(gravity_vector(RobotParams{}, {pi, -pi})[1], 0.0, 1e-15);
}

TEST(Gravity, ThirtyDegreeValues) {
  const Vec2 g = gravity_vector(RobotParams{}, {pi / 6, pi / 6});
  EXPECT_NEAR(g[0], -3.9473215381556992, 1e-14);
  EXPECT_NEAR(g[1], -2.2082047381556991, 1e-14);
}

TEST(Gravity, PeriodicInEachAngle) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 100; ++i) {
    const Vec2 q = random_state(rng).q;
    const Vec2 g = gravity_vector(RobotParams{}, q);
    EXPECT_LE((gravity_vector(RobotParams{}, q + Vec2(2 * pi, 0)) - g).norm(), 1e-12);
    EXPECT_LE((gravity_vector(RobotParams{}, q + Vec2(0, 2 * pi)) - g).norm(), 1e-12);
  }
}

TEST(ForwardDynamics, CompensatedTorqueGivesZeroAcceleration) {
  const RobotParams p;
  const JointState s{{0.7, -0.4}, {1.5, -2.0}};
  const Vec2 tau = coriolis_vector(p, s) + gravity_vector(p, s.q);
  EXPECT_LE(forward_dynamics(p, s, tau, Vec2::Zero()).norm(), 1e-12);
}

TEST(ForwardDynamics, RestStateFallsUnderGravity) {
  const Vec2 qdd = forward_dynamics(RobotParams{}, {{pi / 6, pi / 6}, {0, 0}}, Vec2::Zero(), Vec2::Zero());
  EXPECT_NEAR(qdd[0], 0.67643976169461895, 1e-11);
  EXPECT_NEAR(qdd[1], 22.402028920091396, 1e-11);
}

TEST(ForwardDynamics, DisturbanceAddsAcceleration) {
  const RobotParams p;
  const JointState s{{0.2, 0.9}, {0.3, 0.1}};
  const Vec2 tau{0.5, -0.2};
  const Vec2 d{1.0, -2.0};
  EXPECT_LE((forward_dynamics(p, s, tau, d) - forward_dynamics(p, s, tau, Vec2::Zero()) - d).norm(), 1e-12);
}

TEST(ForwardDynamics, InverseRoundTrip) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> acc(-50.0, 50.0);
  const RobotParams p;
  for (int i = 0; i < 1000; ++i) {
    const JointState s = random_state(rng);
    const Vec2 qdd{acc(rng), acc(rng)};
    const Vec2 back = forward_dynamics(p, s, inverse_dynamics(p, s, qdd), Vec2::Zero());
    EXPECT_LE((back - qdd).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(ForwardDynamics, CorruptedParamsAreSingular) {
  RobotParams p;
  p.m2 = 0.0;
  p.m1 = 0.0;
  EXPECT_THROW(forward_dynamics(p, {{0, 0}, {0, 0}}, Vec2::Zero(), Vec2::Zero()), SingularMatrixError);
}

TEST(KineticEnergy, MatchesQuadraticForm) {
  const RobotParams p;
  const JointState s{{0.1, 0.8}, {1.2, -0.7}};
  const Mat2 m = inertia_matrix(p, s.q);
  EXPECT_NEAR(kinetic_energy(p, s), 0.5 * s.qd.dot(m * s.qd), 1e-15);
}

TEST(RobotParams, RejectsNonPositiveMass) {
  RobotParams p;
  p.m1 = -0.1;
  try {
    p.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "m1");
  }
}

TEST(Disturbance, NoneIsZero) {
  Disturbance d;
  EXPECT_EQ(disturbance_at(d, 3.7), Vec2::Zero());
}

TEST(Disturbance, ConstantIsAmplitude) {
  Disturbance d;
  d.kind = DisturbanceKind::constant;
  d.amplitude = {1.0, -1.0};
  EXPECT_EQ(disturbance_at(d, 0.0), Vec2(1.0, -1.0));
  EXPECT_EQ(disturbance_at(d, 12.5), Vec2(1.0, -1.0));
}

TEST(Disturbance, SinusoidPeak) {
  Disturbance d;
  d.kind = DisturbanceKind::sinusoid;
  d.amplitude = {2.0, 2.0};
  d.frequency = pi;
  const Vec2 v = disturbance_at(d, 0.5);
  EXPECT_NEAR(v[0], 2.0, 1e-15);
  EXPECT_NEAR(v[1], 2.0, 1e-15);
}

TEST(Disturbance, TableInterpolatesAndRejectsOutside) {
  Disturbance d;
  d.kind = DisturbanceKind::custom_table;
  d.table = {{0.0, {0.0, 1.0}}, {1.0, {2.0, 1.0}}, {3.0, {2.0, -3.0}}};
  d.validate();
  EXPECT_LE((disturbance_at(d, 0.5) - Vec2(1.0, 1.0)).norm(), 1e-15);
  EXPECT_LE((disturbance_at(d, 2.0) - Vec2(2.0, -1.0)).norm(), 1e-15);
  EXPECT_EQ(disturbance_at(d, 3.0), Vec2(2.0, -3.0));
  EXPECT_THROW(disturbance_at(d, 3.5), OutOfRangeError);
  EXPECT_THROW(disturbance_at(d, -0.1), OutOfRangeError);
}

TEST(Disturbance, TableMustIncrease) {
  Disturbance d;
  d.kind = DisturbanceKind::custom_table;
  d.table = {{0.0, {0.0, 0.0}}, {0.0, {1.0, 1.0}}};
  EXPECT_THROW(d.validate(), ConfigError);
}
