// Copyright 2026 The fmasim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "fmasim/fixtures.hpp"
#include "fmasim/fma.hpp"
#include "fmasim/integrator.hpp"

namespace fmasim {
namespace {

DualActuatorModel Frictionless() {
  DualActuatorModel m = fixtures::fma_paper();
  m.friction = FrictionModel::kNone;
  return m;
}

Matrix2 RandomSpd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix2 a;
  a << u(rng), u(rng), u(rng), u(rng);
  return a * a.transpose() + 0.05 * Matrix2::Identity();
}

TEST(GearTrain, StandardGeometry) {
  const GearRatios g = gear_ratios(StarCompoundGeometry{});
  const double star = 1.0 / (2.3 * 4.3);
  EXPECT_NEAR(g.motion, (1.0 + star) / 150.0, 1e-15);
  EXPECT_NEAR(g.force, -star, 1e-15);
  EXPECT_NEAR(g.motion, 0.007341, 1e-6);
  EXPECT_NEAR(g.force, -0.10111, 1e-5);
}

TEST(GearTrain, UnitRatioCase) {
  // r9 r11 / (r10 r12) = 1 needs r12 = r10, which the meshing rule forbids,
  // so check the formula with a hand-built ratio pair instead.
  EXPECT_DOUBLE_EQ(scale_ratio(2.0, -1.0), 0.5);
  EXPECT_DOUBLE_EQ(scale_ratio(0.3, 0.3), 1.0);
  EXPECT_DOUBLE_EQ(scale_ratio(0.01, -0.15), 15.0);
  EXPECT_THROW(scale_ratio(0.0, 1.0), std::invalid_argument);
}

TEST(GearTrain, RejectsGeometryThatCannotMesh) {
  StarCompoundGeometry geo;
  geo.r12 = 5.0;
  EXPECT_THROW(gear_ratios(geo), std::invalid_argument);
  geo = {};
  geo.hypocyclic_ratio = 0.0;
  EXPECT_THROW(gear_ratios(geo), std::invalid_argument);
}

TEST(GearTrain, OutputVelocityIsDotProduct) {
  const RowVector2 g = gear_ratios({}).row();
  EXPECT_DOUBLE_EQ(output_velocity(g, Vector2::Zero()), 0.0);
  EXPECT_NEAR(output_velocity(g, Vector2(1.0 / g[0], 0.0)), 1.0, 1e-14);
  EXPECT_NEAR(output_velocity(g, Vector2(100.0, 10.0)), 100 * g[0] + 10 * g[1], 1e-14);
  EXPECT_NEAR(output_velocity(g, Vector2(100.0, 10.0)), -0.2770, 1e-4);
}

TEST(PseudoInverse, HandValues) {
  const Vector2 unit = weighted_pseudo_inverse(RowVector2(1.0, 0.0), Matrix2::Identity());
  EXPECT_TRUE(unit.isApprox(Vector2(1.0, 0.0)));
  const RowVector2 g(0.007341, -0.10111);
  const Vector2 p = weighted_pseudo_inverse(g, Matrix2::Identity());
  EXPECT_TRUE(p.isApprox(g.transpose() / g.squaredNorm(), 1e-14));
  EXPECT_NEAR(p[0], 0.71432, 2e-5);
  EXPECT_NEAR(p[1], -9.83836, 1e-5);
  EXPECT_NEAR(g * p, 1.0, 1e-14);
}

// Minimiser of ½ xᵀ W x subject to g x = 1 from the KKT system.
TEST(PseudoInverse, MatchesKktSolution) {
  const RowVector2 g = gear_ratios({}).row();
  const Matrix2 w = Vector2(1.0, 164.5).asDiagonal();
  Eigen::Matrix3d kkt = Eigen::Matrix3d::Zero();
  kkt.topLeftCorner<2, 2>() = w;
  kkt.block<2, 1>(0, 2) = g.transpose();
  kkt.block<1, 2>(2, 0) = g;
  const Eigen::Vector3d sol = kkt.fullPivLu().solve(Eigen::Vector3d(0, 0, 1));
  const Vector2 p = weighted_pseudo_inverse(g, w);
  EXPECT_TRUE(p.isApprox(sol.head<2>(), 1e-10));
  const Vector2 unweighted = weighted_pseudo_inverse(g, Matrix2::Identity());
  EXPECT_LT(std::abs(p[1]), std::abs(unweighted[1]));
}

TEST(PseudoInverse, RejectsBadWeights) {
  const RowVector2 g(1.0, 2.0);
  Matrix2 w;
  w << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(weighted_pseudo_inverse(g, w), DegenerateConfiguration);
  EXPECT_THROW(weighted_pseudo_inverse(g, Matrix2(-Matrix2::Identity())),
               DegenerateConfiguration);
  EXPECT_THROW(weighted_pseudo_inverse(RowVector2(0.0, 0.0), Matrix2::Identity()),
               DegenerateConfiguration);
}

TEST(Projector, AlgebraOverRandomInputs) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    RowVector2 g(u(rng), u(rng));
    if (g.norm() < 0.05) continue;
    const Matrix2 w = RandomSpd(rng);
    const Vector2 pinv = weighted_pseudo_inverse(g, w);
    const Matrix2 p = null_space_projector(g, w);
    EXPECT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((g * p).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(p.trace(), 1.0, 1e-12);
    EXPECT_NEAR(g * pinv, 1.0, 1e-12);
  }
  const Matrix2 p = null_space_projector(RowVector2(1.0, 0.0), Matrix2::Identity());
  EXPECT_TRUE(p.isApprox(Vector2(0.0, 1.0).asDiagonal().toDenseMatrix()));
}

TEST(Allocation, MinimisesWeightedNorm) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    RowVector2 g(u(rng), u(rng));
    if (g.norm() < 0.05) continue;
    const Matrix2 w = RandomSpd(rng);
    const double out = u(rng);
    const Vector2 best = allocate_velocities(g, w, out);
    EXPECT_NEAR(g * best, out, 1e-10);
    const Vector2 null_dir(-g[1], g[0]);
    const double cost = best.dot(w * best);
    for (int k = 0; k < 50; ++k) {
      const Vector2 alt = best + u(rng) * null_dir;
      EXPECT_LE(cost, alt.dot(w * alt) + 1e-12);
    }
  }
}

TEST(Allocation, SeedOnlyMovesInTheNullSpace) {
  const RowVector2 g = gear_ratios({}).row();
  const Vector2 plain = allocate_velocities(g, Matrix2::Identity(), 0.6283);
  EXPECT_TRUE(plain.isApprox(0.6283 * weighted_pseudo_inverse(g, Matrix2::Identity())));
  EXPECT_TRUE(allocate_velocities(g, Matrix2::Identity(), 0.0).isZero());
  const Vector2 seeded =
      allocate_velocities(g, Matrix2::Identity(), 0.6283, Vector2(3.0, -1.0));
  EXPECT_NEAR(g * seeded, 0.6283, 1e-12);
  EXPECT_FALSE(seeded.isApprox(plain));
}

TEST(Friction, StribeckValues) {
  EXPECT_DOUBLE_EQ(stribeck_friction(0.0), 0.0);
  EXPECT_NEAR(stribeck_friction(1e-12), 0.20, 1e-9);
  EXPECT_NEAR(stribeck_friction(-1e-12), -0.20, 1e-9);
  const double at_one = 0.20 + 1.506 - 0.9602 * (1.0 - std::exp(-0.0047));
  EXPECT_NEAR(stribeck_friction(1.0), at_one, 1e-15);
  EXPECT_NEAR(stribeck_friction(1.0), 1.7015, 1e-4);
  EXPECT_DOUBLE_EQ(stribeck_friction(-1.0), -stribeck_friction(1.0));
}

TEST(PrimeMovers, MatricesFromDatasheet) {
  const MotorMatrices mm = motor_dynamics_matrices(fixtures::fma_paper());
  EXPECT_DOUBLE_EQ(mm.inertia(0, 0), 5.4e-6);
  EXPECT_DOUBLE_EQ(mm.inertia(1, 1), 8.9e-5);
  EXPECT_DOUBLE_EQ(mm.torque_constants(0, 0), 0.039);
  EXPECT_DOUBLE_EQ(mm.torque_constants(1, 1), 0.36);
  const double force_b = 3.1e-5 * 30.0 / std::numbers::pi + 0.36 * 0.36 / 2.23;
  EXPECT_NEAR(mm.damping(1, 1), force_b, 1e-15);
  EXPECT_NEAR(mm.damping(1, 1), 5.841e-2, 1e-5);
  EXPECT_DOUBLE_EQ(mm.inertia(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(mm.damping(1, 0), 0.0);
}

TEST(Weighting, SwitchesOnStrictThreshold) {
  const WeightingPolicy policy;
  EXPECT_DOUBLE_EQ(weighting(policy, 0.0)(1, 1), 164.5);
  EXPECT_DOUBLE_EQ(weighting(policy, 3.999)(1, 1), 164.5);
  EXPECT_DOUBLE_EQ(weighting(policy, 4.0)(1, 1), 16.45);
  EXPECT_DOUBLE_EQ(weighting(policy, 10.0)(1, 1), 16.45);
  EXPECT_DOUBLE_EQ(weighting(policy, 10.0)(0, 0), 1.0);
}

TEST(ReducedModel, OutputLinkValues) {
  const OutputLink link = fixtures::fma_paper().as_built;
  EXPECT_NEAR(link.inertia(), 13 * 0.2 * 0.2 + 4.9 * 0.4 * 0.4, 1e-12);
  EXPECT_NEAR(link.inertia(), 1.304, 1e-12);
  EXPECT_NEAR(link.gravity_torque(0.0, 9.81), (13 * 0.2 + 4.9 * 0.4) * 9.81, 1e-12);
  EXPECT_NEAR(link.gravity_torque(0.0, 9.81), 44.7336, 1e-4);
  EXPECT_NEAR(link.gravity_torque(std::numbers::pi / 2, 9.81), 0.0, 1e-12);
}

TEST(ReducedModel, ReflectedInertia) {
  const DualActuatorModel m = Frictionless();
  const RowVector2 g = m.ratios().row();
  const Vector2 p = g.transpose() / g.squaredNorm();
  const double reflected = 5.4e-6 * p[0] * p[0] + 8.9e-5 * p[1] * p[1];
  const ReducedTerms r = reduced_terms(m, m.as_built, Matrix2::Identity(), 0.0, 0.0);
  EXPECT_NEAR(r.inertia - 1.304, reflected, 1e-12);
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const ReducedTerms ri = reduced_terms(m, m.as_built, RandomSpd(rng), 0.0, 0.0);
    EXPECT_GT(ri.inertia - 1.304, 0.0);
  }
}

TEST(ReducedModel, VerticalEquilibriumIsAtRest) {
  const DualActuatorModel m = Frictionless();
  EXPECT_NEAR(reduced_dynamics(m, std::numbers::pi / 2, 0.0, Vector2::Zero(), 0.0,
                               Matrix2::Identity()),
              0.0, 1e-12);
}

TEST(ComputedTorque, StaticHoldSuppliesGravity) {
  const DualActuatorModel m = Frictionless();
  const Vector2 v = computed_torque_voltage(m, Matrix2::Identity(), 0.0, 0.0, {}, {});
  const double hold = (10.0 / 2 + 5.0) * 0.4 * m.gravity;
  const RowVector2 g = m.ratios().row();
  EXPECT_NEAR(v[0], g[0] * hold / 0.039, 1e-12);
  EXPECT_NEAR(v[1], g[1] * hold / 0.36, 1e-12);
}

TEST(ComputedTorque, PerfectModelGivesLinearErrorDynamics) {
  DualActuatorModel m = fixtures::fma_paper();
  m.as_built = m.as_designed;
  const ServoGains gains{100.0, 20.0};
  const Matrix2 w = Vector2(1.0, 164.5).asDiagonal();
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double q = u(rng) * 3, qd = u(rng);
    const OutputReference ref{u(rng), u(rng), u(rng)};
    const Vector2 v = computed_torque_voltage(m, w, q, qd, ref, gains);
    const double qdd = reduced_dynamics(m, q, qd, v, 0.0, w);
    const double expected = ref.acceleration + gains.kv * (ref.velocity - qd) +
                            gains.kp * (ref.position - q);
    EXPECT_NEAR(qdd, expected, 1e-9);
  }
}

// With kp = 100, kv = 20 the error obeys e'' + 20 e' + 100 e = 0, whose
// solution from e(0) = 0.1, e'(0) = 0 is 0.1 (1 + 10 t) exp(-10 t).
TEST(ComputedTorque, ErrorDecaysAtDesignedPoles) {
  DualActuatorModel m = fixtures::fma_paper();
  m.as_built = m.as_designed;
  const Matrix2 w = Matrix2::Identity();
  const ServoGains gains{100.0, 20.0};
  const double target = 0.5;
  Eigen::Vector2d x(target - 0.1, 0.0);
  const double dt = 1e-3;
  for (int i = 0; i < 300; ++i) {
    const Vector2 v = computed_torque_voltage(m, w, x[0], x[1], {target, 0, 0}, gains);
    const auto f = [&](double, const Eigen::Vector2d& s) {
      return Eigen::Vector2d(s[1], reduced_dynamics(m, s[0], s[1], v, 0.0, w));
    };
    x = rk4_step(f, x, i * dt, dt);
  }
  const double t = 0.3;
  EXPECT_NEAR(target - x[0], 0.1 * (1 + 10 * t) * std::exp(-10 * t), 2e-3);
}

}  // namespace
}  // namespace fmasim
