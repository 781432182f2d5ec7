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

// Rigid-body dynamics of a serial chain written in influence-coefficient
// form:
//
//   tau = I*(theta) theta_ddot + theta_dotᵀ P*(theta) theta_dot
//         + gravity(theta) + sum_e G_eᵀ L_e + D theta_dot
//
// I* is the effective inertia, P* the inertia power array (Coriolis and
// centripetal coupling) and D an optional diagonal viscous joint damping.
// Link inertias are stored about the COM in link coordinates and rotated to
// the base frame at each configuration.

#ifndef FMASIM_DYNAMICS_HPP_
#define FMASIM_DYNAMICS_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "fmasim/errors.hpp"
#include "fmasim/kinematics.hpp"
#include "fmasim/spatial.hpp"

namespace fmasim {

// n matrices of size n x n; slice(i)(a, b) multiplies theta_dot_a * theta_dot_b
// in the torque of joint i.
class InertiaPowerArray {
 public:
  InertiaPowerArray() = default;
  explicit InertiaPowerArray(std::vector<MatrixX> slices)
      : slices_(std::move(slices)) {}

  std::size_t dof() const { return slices_.size(); }
  const MatrixX& slice(std::size_t i) const { return slices_[i]; }

  VectorX coriolis(const VectorX& qd) const {
    detail::RequireSize(qd.size(), static_cast<Eigen::Index>(dof()),
                        "joint rate vector");
    VectorX tau(static_cast<Eigen::Index>(dof()));
    for (std::size_t i = 0; i < dof(); ++i) {
      tau[static_cast<Eigen::Index>(i)] = qd.dot(slices_[i] * qd);
    }
    return tau;
  }

 private:
  std::vector<MatrixX> slices_;
};

struct DynamicsQuantities {
  MatrixX effective_inertia;
  InertiaPowerArray inertia_power;
  VectorX gravity_torque;
};

// A wrench the chain must react at a point of the chain.
struct ExternalLoad {
  Wrench wrench;
  Target target = Target::end_effector();
};

namespace detail {

inline void RequireInertia(const SerialChainModel& model) {
  if (model.links.size() != model.dof()) {
    throw DimensionError("chain '" + model.name +
                         "' has no mass properties for every link");
  }
}

inline Matrix3 WorldInertia(const ChainFrames& f, const SerialChainModel& m,
                            std::size_t j) {
  const Matrix3 r = f.link[j].linear();
  return r * m.links[j].inertia_about_com * r.transpose();
}

inline Vector3 WorldCom(const ChainFrames& f, const SerialChainModel& m,
                        std::size_t j) {
  return f.link[j] * m.links[j].com;
}

}  // namespace detail

inline MatrixX effective_inertia(const SerialChainModel& model,
                                 const VectorX& theta) {
  detail::RequireInertia(model);
  const ChainFrames f = compute_frames(model, theta);
  const auto n = static_cast<Eigen::Index>(model.dof());
  MatrixX inertia = MatrixX::Zero(n, n);
  for (std::size_t j = 0; j < model.dof(); ++j) {
    const MatrixX g = point_g_function(f, j, detail::WorldCom(f, model, j));
    const auto gv = g.topRows<3>();
    const auto gw = g.bottomRows<3>();
    inertia += model.links[j].mass * gv.transpose() * gv;
    inertia += gw.transpose() * detail::WorldInertia(f, model, j) * gw;
  }
  return 0.5 * (inertia + inertia.transpose());
}

inline InertiaPowerArray inertia_power_matrix(const SerialChainModel& model,
                                              const VectorX& theta) {
  detail::RequireInertia(model);
  const ChainFrames f = compute_frames(model, theta);
  const std::size_t n = model.dof();
  const auto ni = static_cast<Eigen::Index>(n);
  std::vector<MatrixX> p(n, MatrixX::Zero(ni, ni));
  for (std::size_t j = 0; j < n; ++j) {
    const Vector3 com = detail::WorldCom(f, model, j);
    const MatrixX g = point_g_function(f, j, com);
    const HFunction h = point_h_function(f, j, com);
    const Matrix3 pi = detail::WorldInertia(f, model, j);
    const double mass = model.links[j].mass;
    for (std::size_t a = 0; a <= j; ++a) {
      const auto ai = static_cast<Eigen::Index>(a);
      const MatrixX& ha = h.slice(a);
      const Vector3 wa = g.block<3, 1>(3, ai);
      for (std::size_t b = 0; b <= j; ++b) {
        const auto bi = static_cast<Eigen::Index>(b);
        const Vector3 acc_v = ha.block<3, 1>(0, bi);
        const Vector3 acc_w = ha.block<3, 1>(3, bi);
        const Vector3 gyro = wa.cross(pi * g.block<3, 1>(3, bi));
        const Vector3 ang = pi * acc_w + gyro;
        for (std::size_t i = 0; i <= j; ++i) {
          const auto ii = static_cast<Eigen::Index>(i);
          p[i](ai, bi) += mass * g.block<3, 1>(0, ii).dot(acc_v) +
                          g.block<3, 1>(3, ii).dot(ang);
        }
      }
    }
  }
  return InertiaPowerArray(std::move(p));
}

// Joint torques that hold the links against gravity; g is the gravitational
// acceleration vector in base coordinates.
inline VectorX gravity_torque(const SerialChainModel& model,
                              const VectorX& theta, const Vector3& g) {
  detail::RequireInertia(model);
  const ChainFrames f = compute_frames(model, theta);
  VectorX tau = VectorX::Zero(static_cast<Eigen::Index>(model.dof()));
  for (std::size_t j = 0; j < model.dof(); ++j) {
    const MatrixX jac = point_g_function(f, j, detail::WorldCom(f, model, j));
    tau -= jac.topRows<3>().transpose() * (model.links[j].mass * g);
  }
  return tau;
}

inline DynamicsQuantities dynamics_quantities(const SerialChainModel& model,
                                              const VectorX& theta,
                                              const Vector3& g) {
  return {effective_inertia(model, theta), inertia_power_matrix(model, theta),
          gravity_torque(model, theta, g)};
}

inline VectorX load_torque(const SerialChainModel& model, const VectorX& theta,
                           const std::vector<ExternalLoad>& loads) {
  VectorX tau = VectorX::Zero(static_cast<Eigen::Index>(model.dof()));
  if (loads.empty()) return tau;
  const ChainFrames f = compute_frames(model, theta);
  for (const auto& load : loads) {
    const auto [link, point] = detail::ResolveTarget(model, f, load.target);
    tau += point_g_function(f, link, point).transpose() * load.wrench.as_vector();
  }
  return tau;
}

inline VectorX damping_torque(const SerialChainModel& model,
                              const VectorX& qd) {
  if (model.joint_damping.size() == 0) return VectorX::Zero(qd.size());
  detail::RequireSize(model.joint_damping.size(), qd.size(), "joint damping");
  return model.joint_damping.cwiseProduct(qd);
}

inline VectorX inverse_dynamics(const SerialChainModel& model,
                                const JointState& state, const Vector3& g,
                                const std::vector<ExternalLoad>& loads = {}) {
  const auto n = static_cast<Eigen::Index>(model.dof());
  detail::RequireSize(state.position.size(), n, "joint position");
  detail::RequireSize(state.velocity.size(), n, "joint velocity");
  detail::RequireSize(state.acceleration.size(), n, "joint acceleration");
  const DynamicsQuantities d = dynamics_quantities(model, state.position, g);
  return d.effective_inertia * state.acceleration +
         d.inertia_power.coriolis(state.velocity) + d.gravity_torque +
         load_torque(model, state.position, loads) +
         damping_torque(model, state.velocity);
}

inline constexpr double kMaxInertiaCondition = 1e12;

inline VectorX forward_dynamics(const SerialChainModel& model,
                                const VectorX& theta, const VectorX& qd,
                                const VectorX& tau, const Vector3& g,
                                const std::vector<ExternalLoad>& loads = {}) {
  const auto n = static_cast<Eigen::Index>(model.dof());
  detail::RequireSize(theta.size(), n, "joint position");
  detail::RequireSize(qd.size(), n, "joint velocity");
  detail::RequireSize(tau.size(), n, "joint torque");
  const DynamicsQuantities d = dynamics_quantities(model, theta, g);
  Eigen::SelfAdjointEigenSolver<MatrixX> es(d.effective_inertia,
                                            Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxInertiaCondition) {
    throw DegenerateConfiguration("effective inertia is singular or badly "
                                  "conditioned");
  }
  const VectorX rhs = tau - d.inertia_power.coriolis(qd) - d.gravity_torque -
                      load_torque(model, theta, loads) -
                      damping_torque(model, qd);
  return d.effective_inertia.ldlt().solve(rhs);
}

}  // namespace fmasim

#endif  // FMASIM_DYNAMICS_HPP_
