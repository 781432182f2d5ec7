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

#include <random>

#include "fmasim/dynamics.hpp"
#include "fmasim/fixtures.hpp"
#include "fmasim/integrator.hpp"
#include "oracles.hpp"

namespace fmasim {
namespace {

const Vector3 kGravityDownY(0.0, -9.81, 0.0);
const Vector3 kGravityDownZ(0.0, 0.0, -9.81);

class DynamicsChainTest : public ::testing::TestWithParam<std::string> {
 protected:
  SerialChainModel model() const { return *fixtures::chain_by_name(GetParam()); }
};

TEST_P(DynamicsChainTest, EffectiveInertiaReproducesKineticEnergy) {
  const auto m = model();
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorX q = oracle::RandomVector(rng, m.dof(), -3.0, 3.0);
    const VectorX qd = oracle::RandomVector(rng, m.dof(), -2.0, 2.0);
    const double ke = 0.5 * qd.dot(effective_inertia(m, q) * qd);
    EXPECT_NEAR(ke, oracle::KineticEnergy(m, q, qd), 1e-6 * (1.0 + ke));
  }
}

TEST_P(DynamicsChainTest, EffectiveInertiaIsSymmetricPositiveDefinite) {
  const auto m = model();
  std::mt19937_64 rng(22);
  const VectorX q = oracle::RandomVector(rng, m.dof(), -3.0, 3.0);
  const MatrixX i = effective_inertia(m, q);
  EXPECT_LT((i - i.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_GT(Eigen::SelfAdjointEigenSolver<MatrixX>(i).eigenvalues().minCoeff(), 0.0);
}

// Coriolis torques from the Lagrangian: sum_jk (dI_ij/dq_k - dI_jk/dq_i / 2) qd_j qd_k.
TEST_P(DynamicsChainTest, InertiaPowerMatchesLagrangianCoriolis) {
  const auto m = model();
  std::mt19937_64 rng(23);
  const double h = 1e-6;
  const auto n = static_cast<Eigen::Index>(m.dof());
  for (int trial = 0; trial < 10; ++trial) {
    const VectorX q = oracle::RandomVector(rng, n, -3.0, 3.0);
    const VectorX qd = oracle::RandomVector(rng, n, -2.0, 2.0);
    std::vector<MatrixX> di;
    for (Eigen::Index k = 0; k < n; ++k) {
      VectorX qp = q, qm = q;
      qp[k] += h;
      qm[k] -= h;
      di.push_back((effective_inertia(m, qp) - effective_inertia(m, qm)) / (2 * h));
    }
    VectorX expected = VectorX::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
          expected[i] += (di[k](i, j) - 0.5 * di[i](j, k)) * qd[j] * qd[k];
        }
      }
    }
    const VectorX got = inertia_power_matrix(m, q).coriolis(qd);
    EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST_P(DynamicsChainTest, GravityTorqueIsPotentialGradient) {
  const auto m = model();
  std::mt19937_64 rng(24);
  const double h = 1e-6;
  const VectorX q = oracle::RandomVector(rng, m.dof(), -3.0, 3.0);
  const VectorX tau = gravity_torque(m, q, kGravityDownZ);
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    VectorX qp = q, qm = q;
    qp[k] += h;
    qm[k] -= h;
    const double grad = (oracle::PotentialEnergy(m, qp, kGravityDownZ) -
                         oracle::PotentialEnergy(m, qm, kGravityDownZ)) /
                        (2 * h);
    EXPECT_NEAR(tau[k], grad, 1e-6);
  }
}

TEST_P(DynamicsChainTest, ForwardInvertsInverseDynamics) {
  const auto m = model();
  std::mt19937_64 rng(25);
  const JointState s{oracle::RandomVector(rng, m.dof(), -2.0, 2.0),
                     oracle::RandomVector(rng, m.dof(), -1.0, 1.0),
                     oracle::RandomVector(rng, m.dof(), -1.0, 1.0)};
  const std::vector<ExternalLoad> loads = {
      {Wrench{{1.0, -2.0, 0.5}, {0.1, 0.0, -0.2}}, Target::end_effector()}};
  const VectorX tau = inverse_dynamics(m, s, kGravityDownZ, loads);
  const VectorX qdd = forward_dynamics(m, s.position, s.velocity, tau, kGravityDownZ, loads);
  EXPECT_LT((qdd - s.acceleration).cwiseAbs().maxCoeff(), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, DynamicsChainTest,
                         ::testing::Values("powercube6", "planar1", "planar2", "planar3"));

TEST(Dynamics, TwoLinkMatchesHandDerivedLagrangian) {
  const double l1 = 1.0, l2 = 0.8, m1 = 3.0, m2 = 2.0;
  const auto m = fixtures::planar_chain({l1, l2}, {m1, m2});
  const oracle::TwoLinkArm arm{l1, m1, m2, 0.5 * l1, 0.5 * l2,
                               m1 * l1 * l1 / 12, m2 * l2 * l2 / 12, 9.81};
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const JointState s{oracle::RandomVector(rng, 2, -3.0, 3.0),
                       oracle::RandomVector(rng, 2, -3.0, 3.0),
                       oracle::RandomVector(rng, 2, -3.0, 3.0)};
    const VectorX tau = inverse_dynamics(m, s, kGravityDownY);
    const VectorX expected = arm.Torque(s.position, s.velocity, s.acceleration);
    EXPECT_LT((tau - expected).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Dynamics, PendulumEnergyDriftIsSmall) {
  const auto m = fixtures::planar_chain({1.0, 0.7}, {1.0, 0.5});
  VectorX x(4);
  x << 0.8, -0.4, 0.0, 0.0;
  const auto energy = [&](const VectorX& s) {
    const VectorX q = s.head(2), qd = s.tail(2);
    return 0.5 * qd.dot(effective_inertia(m, q) * qd) +
           oracle::PotentialEnergy(m, q, kGravityDownY);
  };
  const auto f = [&](double, const VectorX& s) {
    VectorX d(4);
    d << s.tail(2),
        forward_dynamics(m, s.head(2), s.tail(2), VectorX::Zero(2), kGravityDownY);
    return d;
  };
  const double e0 = energy(x);
  const double dt = 1e-3;
  for (int i = 0; i < 10000; ++i) x = rk4_step(f, x, i * dt, dt);
  EXPECT_LT(std::abs(energy(x) - e0) / std::abs(e0), 1e-4);
}

TEST(Dynamics, PointMassPendulumClosedForm) {
  const auto m = fixtures::point_mass_pendulum({{2.0, 0.5}});
  VectorX q(1);
  q << 0.3;
  EXPECT_NEAR(effective_inertia(m, q)(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(gravity_torque(m, q, kGravityDownY)[0], 2.0 * 9.81 * 0.5 * std::cos(0.3), 1e-12);
}

TEST(Dynamics, DampingAddsViscousTorque) {
  auto m = fixtures::planar_chain({1.0});
  m.joint_damping = VectorX::Constant(1, 0.7);
  const JointState s{VectorX::Zero(1), VectorX::Constant(1, 2.0), VectorX::Zero(1)};
  const VectorX tau = inverse_dynamics(m, s, Vector3::Zero());
  EXPECT_NEAR(tau[0], 1.4, 1e-12);
}

TEST(Dynamics, DegenerateInertiaThrows) {
  auto m = fixtures::point_mass_pendulum({{1.0, 0.0}});
  m.links[0].inertia_about_com.setZero();
  EXPECT_THROW(forward_dynamics(m, VectorX::Zero(1), VectorX::Zero(1),
                                VectorX::Zero(1), kGravityDownY),
               DegenerateConfiguration);
}

TEST(Dynamics, MissingMassPropertiesThrow) {
  auto m = fixtures::planar_chain({1.0, 1.0});
  m.links.pop_back();
  EXPECT_THROW(effective_inertia(m, VectorX::Zero(2)), DimensionError);
}

TEST(Integrator, FourthOrderConvergence) {
  const auto f = [](double t, const Eigen::Vector2d& x) {
    return Eigen::Vector2d(x[1], -x[0] + std::sin(t));
  };
  const auto error = [&](double dt) {
    Eigen::Vector2d x(1.0, 0.0);
    const int steps = static_cast<int>(std::lround(2.0 / dt));
    for (int i = 0; i < steps; ++i) x = rk4_step(f, x, i * dt, dt);
    // x'' + x = sin t, x(0) = 1, x'(0) = 0.
    const double t = 2.0;
    const double exact = std::cos(t) + 0.5 * (std::sin(t) - t * std::cos(t));
    return std::abs(x[0] - exact);
  };
  const double order = std::log2(error(0.02) / error(0.01));
  EXPECT_GE(order, 3.9);
}

TEST(Integrator, RejectsBadStepAndNonFiniteState) {
  const auto f = [](double, const Eigen::Vector2d& x) { return Eigen::Vector2d(x); };
  EXPECT_THROW(rk4_step(f, Eigen::Vector2d(1, 1), 0.0, 0.0), std::invalid_argument);
  const auto blow = [](double, const Eigen::Vector2d& x) {
    return Eigen::Vector2d(x / 0.0);
  };
  EXPECT_THROW(rk4_step(blow, Eigen::Vector2d(1, 1), 0.0, 1e-3), IntegrationError);
}

}  // namespace
}  // namespace fmasim
