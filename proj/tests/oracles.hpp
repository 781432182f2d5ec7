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


// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the library's kinematics or dynamics; the oracles work
// from raw D-H parameters with plain 4x4 homogeneous matrices.

#ifndef FMASIM_TESTS_ORACLES_HPP_
#define FMASIM_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "fmasim/kinematics.hpp"

namespace oracle {

using Eigen::Matrix3d;
using Eigen::Matrix4d;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXd;

inline Matrix4d RotX(double a) {
  Matrix4d t = Matrix4d::Identity();
  t(1, 1) = std::cos(a), t(1, 2) = -std::sin(a);
  t(2, 1) = std::sin(a), t(2, 2) = std::cos(a);
  return t;
}

inline Matrix4d RotZ(double a) {
  Matrix4d t = Matrix4d::Identity();
  t(0, 0) = std::cos(a), t(0, 1) = -std::sin(a);
  t(1, 0) = std::sin(a), t(1, 1) = std::cos(a);
  return t;
}

inline Matrix4d Trans(double x, double y, double z) {
  Matrix4d t = Matrix4d::Identity();
  t(0, 3) = x, t(1, 3) = y, t(2, 3) = z;
  return t;
}

// Homogeneous transforms of every link frame, then the tool frame last.
inline std::vector<Matrix4d> Frames(const fmasim::SerialChainModel& m,
                                    const VectorXd& q) {
  std::vector<Matrix4d> out;
  Matrix4d t = Matrix4d::Identity();
  for (std::size_t i = 0; i < m.dh.size(); ++i) {
    const auto& r = m.dh[i];
    t = t * RotX(r.alpha_prev) * Trans(r.a_prev, 0, 0) *
        RotZ(q[static_cast<Eigen::Index>(i)] + r.theta_offset) * Trans(0, 0, r.d);
    out.push_back(t);
  }
  out.push_back(t * m.tool.matrix());
  return out;
}

inline Vector3d ToolPosition(const fmasim::SerialChainModel& m,
                             const VectorXd& q) {
  return Frames(m, q).back().block<3, 1>(0, 3);
}

inline Vector3d LinkPoint(const fmasim::SerialChainModel& m, const VectorXd& q,
                          std::size_t link, const Vector3d& local) {
  const Matrix4d t = Frames(m, q)[link];
  return t.block<3, 3>(0, 0) * local + t.block<3, 1>(0, 3);
}

inline Matrix3d LinkRotation(const fmasim::SerialChainModel& m,
                             const VectorXd& q, std::size_t link) {
  return Frames(m, q)[link].block<3, 3>(0, 0);
}

inline Vector3d Vee(const Matrix3d& s) {
  return {0.5 * (s(2, 1) - s(1, 2)), 0.5 * (s(0, 2) - s(2, 0)),
          0.5 * (s(1, 0) - s(0, 1))};
}

// Central-difference Jacobian of a point fixed to `link` (the tool when link
// equals dof): position rows from the point, angular rows from dR Rᵀ.
inline MatrixXd FiniteDifferenceJacobian(const fmasim::SerialChainModel& m,
                                         const VectorXd& q, double h = 1e-6) {
  const auto n = q.size();
  MatrixXd g(6, n);
  const Matrix3d r0 = Frames(m, q).back().block<3, 3>(0, 0);
  for (Eigen::Index k = 0; k < n; ++k) {
    VectorXd qp = q, qm = q;
    qp[k] += h;
    qm[k] -= h;
    const auto fp = Frames(m, qp).back();
    const auto fm = Frames(m, qm).back();
    g.block<3, 1>(0, k) = (fp.block<3, 1>(0, 3) - fm.block<3, 1>(0, 3)) / (2 * h);
    const Matrix3d dr = (fp.block<3, 3>(0, 0) - fm.block<3, 3>(0, 0)) / (2 * h);
    g.block<3, 1>(3, k) = Vee(dr * r0.transpose());
  }
  return g;
}

// Kinetic energy of every link at (q, qd) from finite differences of the
// COM path and link orientation.
inline double KineticEnergy(const fmasim::SerialChainModel& m, const VectorXd& q,
                            const VectorXd& qd, double h = 1e-6) {
  double ke = 0.0;
  const VectorXd qp = q + h * qd, qm = q - h * qd;
  for (std::size_t j = 0; j < m.dh.size(); ++j) {
    const auto& link = m.links[j];
    const Vector3d v =
        (LinkPoint(m, qp, j, link.com) - LinkPoint(m, qm, j, link.com)) / (2 * h);
    const Matrix3d r = LinkRotation(m, q, j);
    const Matrix3d dr = (LinkRotation(m, qp, j) - LinkRotation(m, qm, j)) / (2 * h);
    const Vector3d w = Vee(dr * r.transpose());
    const Matrix3d inertia = r * link.inertia_about_com * r.transpose();
    ke += 0.5 * link.mass * v.squaredNorm() + 0.5 * w.dot(inertia * w);
  }
  return ke;
}

inline double PotentialEnergy(const fmasim::SerialChainModel& m,
                              const VectorXd& q, const Vector3d& gravity) {
  double pe = 0.0;
  for (std::size_t j = 0; j < m.dh.size(); ++j) {
    pe -= m.links[j].mass * gravity.dot(LinkPoint(m, q, j, m.links[j].com));
  }
  return pe;
}

// Two-link planar arm (joint axes along z, gravity along -y) written out by
// hand from its Lagrangian.
struct TwoLinkArm {
  double l1, m1, m2, lc1, lc2, izz1, izz2, g;

  VectorXd Torque(const VectorXd& q, const VectorXd& qd,
                  const VectorXd& qdd) const {
    const double c2 = std::cos(q[1]), s2 = std::sin(q[1]);
    const double c1 = std::cos(q[0]), c12 = std::cos(q[0] + q[1]);
    const double m11 = izz1 + izz2 + m1 * lc1 * lc1 +
                       m2 * (l1 * l1 + lc2 * lc2 + 2 * l1 * lc2 * c2);
    const double m12 = izz2 + m2 * (lc2 * lc2 + l1 * lc2 * c2);
    const double m22 = izz2 + m2 * lc2 * lc2;
    const double h = -m2 * l1 * lc2 * s2;
    const double g1 = (m1 * lc1 + m2 * l1) * g * c1 + m2 * lc2 * g * c12;
    const double g2 = m2 * lc2 * g * c12;
    VectorXd tau(2);
    tau[0] = m11 * qdd[0] + m12 * qdd[1] + h * qd[1] * qd[1] +
             2 * h * qd[0] * qd[1] + g1;
    tau[1] = m12 * qdd[0] + m22 * qdd[1] - h * qd[0] * qd[0] + g2;
    return tau;
  }
};

inline VectorXd RandomVector(std::mt19937_64& rng, Eigen::Index n, double lo,
                             double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

}  // namespace oracle

#endif  // FMASIM_TESTS_ORACLES_HPP_
