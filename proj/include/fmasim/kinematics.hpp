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

// Serial-chain kinematics with first- and second-order kinematic influence
// coefficients.
//
// Chains are described with the modified (proximal) Denavit-Hartenberg
// convention, so the transform from frame i-1 to frame i is
//
//   T = RotX(alpha_{i-1}) * TransX(a_{i-1}) * RotZ(theta_i + offset_i) * TransZ(d_i)
//
// and joint i turns about z_i through the origin of frame i. Link i carries
// frame i. All joints are revolute.
//
// The first-order coefficients G (a 6 x n matrix) relate joint rates to the
// twist of a point on the chain: rows 0-2 are d(position)/d(theta), rows 3-5
// are the angular velocity contributed by each joint (joint axis columns).
// The second-order coefficients H are the partial derivatives of G with
// respect to each joint, stored as n matrices of size 6 x n, so that
//
//   u_ddot = G * theta_ddot + sum_k theta_dot_k * H[k] * theta_dot.
//
// The translational rows of H are symmetric in the two joint indices; the
// angular rows are not, because angular velocity is not the time derivative
// of any set of orientation coordinates.

#ifndef FMASIM_KINEMATICS_HPP_
#define FMASIM_KINEMATICS_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fmasim/errors.hpp"
#include "fmasim/spatial.hpp"

namespace fmasim {

using VectorX = Eigen::VectorXd;
using MatrixX = Eigen::MatrixXd;
using Isometry3 = Eigen::Isometry3d;

struct DHRow {
  double alpha_prev = 0.0;    // rad
  double a_prev = 0.0;        // m
  double d = 0.0;             // m
  double theta_offset = 0.0;  // rad

  Isometry3 transform(double theta) const {
    Isometry3 t = Isometry3::Identity();
    t.rotate(Eigen::AngleAxisd(alpha_prev, Vector3::UnitX()));
    t.translate(Vector3(a_prev, 0.0, 0.0));
    t.rotate(Eigen::AngleAxisd(theta + theta_offset, Vector3::UnitZ()));
    t.translate(Vector3(0.0, 0.0, d));
    return t;
  }
};

// Mass properties of one link, expressed in that link's frame.
struct LinkInertia {
  double mass = 0.0;                          // kg
  Vector3 com = Vector3::Zero();              // m
  Matrix3 inertia_about_com = Matrix3::Zero();  // kg·m²
};

struct SerialChainModel {
  std::string name;
  std::vector<DHRow> dh;
  std::vector<LinkInertia> links;
  // Tool (end-effector) frame relative to the last link frame.
  Isometry3 tool = Isometry3::Identity();
  // Optional viscous joint damping, N·m/(rad/s). Empty means none.
  VectorX joint_damping;

  std::size_t dof() const { return dh.size(); }

  // Throws std::invalid_argument when the model breaks its invariants.
  void validate() const {
    if (dh.empty()) throw std::invalid_argument("chain has no joints");
    if (!links.empty() && links.size() != dh.size()) {
      throw std::invalid_argument("one inertia block per link is required");
    }
    for (const auto& l : links) {
      if (!(l.mass > 0.0)) throw std::invalid_argument("link mass must be > 0");
      const Matrix3& j = l.inertia_about_com;
      if ((j - j.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("link inertia must be symmetric");
      }
      Eigen::SelfAdjointEigenSolver<Matrix3> es(j);
      if (es.eigenvalues().minCoeff() < -1e-12) {
        throw std::invalid_argument("link inertia must be positive semi-definite");
      }
    }
    if (joint_damping.size() != 0 &&
        joint_damping.size() != static_cast<Eigen::Index>(dh.size())) {
      throw std::invalid_argument("joint damping needs one entry per joint");
    }
  }
};

struct JointState {
  VectorX position;
  VectorX velocity;
  VectorX acceleration;
};

// World poses of every link frame for one configuration.
struct ChainFrames {
  std::vector<Isometry3> link;  // link[i] is frame i+1 in base coordinates
  Isometry3 tool = Isometry3::Identity();

  Vector3 origin(std::size_t i) const { return link[i].translation(); }
  Vector3 axis(std::size_t i) const { return link[i].linear().col(2); }
};

inline ChainFrames compute_frames(const SerialChainModel& model,
                                  const VectorX& theta) {
  detail::RequireSize(theta.size(), static_cast<Eigen::Index>(model.dof()),
                      "joint vector");
  ChainFrames f;
  f.link.reserve(model.dof());
  Isometry3 t = Isometry3::Identity();
  for (std::size_t i = 0; i < model.dof(); ++i) {
    t = t * model.dh[i].transform(theta[static_cast<Eigen::Index>(i)]);
    f.link.push_back(t);
  }
  f.tool = t * model.tool;
  return f;
}

inline Pose forward_kinematics(const SerialChainModel& model,
                               const VectorX& theta) {
  const ChainFrames f = compute_frames(model, theta);
  return Pose::from(Rotation(f.tool.linear()), f.tool.translation());
}

// Which point of the chain a set of influence coefficients refers to.
struct Target {
  enum class Kind { kEndEffector, kLinkFrame, kLinkCom, kLinkPoint };

  Kind kind = Kind::kEndEffector;
  std::size_t link = 0;               // 0-based link index
  Vector3 offset = Vector3::Zero();   // link-frame point for kLinkPoint

  static Target end_effector() { return {}; }
  static Target link_frame(std::size_t j) { return {Kind::kLinkFrame, j, {}}; }
  static Target link_com(std::size_t j) { return {Kind::kLinkCom, j, {}}; }
  static Target link_point(std::size_t j, const Vector3& offset) {
    return {Kind::kLinkPoint, j, offset};
  }
};

namespace detail {

// Link index and world position of a target.
inline std::pair<std::size_t, Vector3> ResolveTarget(
    const SerialChainModel& model, const ChainFrames& f, const Target& t) {
  const std::size_t n = model.dof();
  switch (t.kind) {
    case Target::Kind::kEndEffector:
      return {n - 1, f.tool.translation()};
    case Target::Kind::kLinkFrame:
      if (t.link >= n) throw DimensionError("target link out of range");
      return {t.link, f.origin(t.link)};
    case Target::Kind::kLinkCom:
      if (t.link >= n || t.link >= model.links.size()) {
        throw DimensionError("target link out of range");
      }
      return {t.link, f.link[t.link] * model.links[t.link].com};
    case Target::Kind::kLinkPoint:
      if (t.link >= n) throw DimensionError("target link out of range");
      return {t.link, f.link[t.link] * t.offset};
  }
  throw DimensionError("unknown target");
}

}  // namespace detail

// G for a point rigidly attached to link `link` at world position `point`.
inline MatrixX point_g_function(const ChainFrames& f, std::size_t link,
                                const Vector3& point) {
  const std::size_t n = f.link.size();
  MatrixX g = MatrixX::Zero(6, static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i <= link; ++i) {
    const Vector3 z = f.axis(i);
    const auto c = static_cast<Eigen::Index>(i);
    g.block<3, 1>(0, c) = z.cross(point - f.origin(i));
    g.block<3, 1>(3, c) = z;
  }
  return g;
}

inline MatrixX g_function(const SerialChainModel& model, const VectorX& theta,
                          const Target& target = Target::end_effector()) {
  const ChainFrames f = compute_frames(model, theta);
  const auto [link, point] = detail::ResolveTarget(model, f, target);
  return point_g_function(f, link, point);
}

// Second-order influence coefficients; see the header comment for layout.
class HFunction {
 public:
  HFunction() = default;
  explicit HFunction(std::vector<MatrixX> slices) : slices_(std::move(slices)) {}

  std::size_t dof() const { return slices_.size(); }
  // d G(:, i) / d theta_k.
  const MatrixX& slice(std::size_t k) const { return slices_[k]; }
  double at(std::size_t i, Eigen::Index row, std::size_t k) const {
    return slices_[k](row, static_cast<Eigen::Index>(i));
  }

  // theta_dotᵀ H theta_dot, one entry per output row.
  Vector6 quadratic(const VectorX& qd) const {
    detail::RequireSize(qd.size(), static_cast<Eigen::Index>(dof()),
                        "joint rate vector");
    Vector6 out = Vector6::Zero();
    for (std::size_t k = 0; k < dof(); ++k) {
      out += qd[static_cast<Eigen::Index>(k)] * (slices_[k] * qd);
    }
    return out;
  }

 private:
  std::vector<MatrixX> slices_;
};

inline HFunction point_h_function(const ChainFrames& f, std::size_t link,
                                  const Vector3& point) {
  const std::size_t n = f.link.size();
  std::vector<MatrixX> slices(n, MatrixX::Zero(6, static_cast<Eigen::Index>(n)));
  for (std::size_t k = 0; k <= link; ++k) {
    const Vector3 zk = f.axis(k);
    for (std::size_t i = 0; i <= link; ++i) {
      const Vector3 zi = f.axis(i);
      const auto c = static_cast<Eigen::Index>(i);
      if (k < i) {
        const Vector3 r = point - f.origin(i);
        const Vector3 dz = zk.cross(zi);
        slices[k].block<3, 1>(0, c) = dz.cross(r) + zi.cross(zk.cross(r));
        slices[k].block<3, 1>(3, c) = dz;
      } else {
        slices[k].block<3, 1>(0, c) = zi.cross(zk.cross(point - f.origin(k)));
      }
    }
  }
  return HFunction(std::move(slices));
}

inline HFunction h_function(const SerialChainModel& model, const VectorX& theta,
                            const Target& target = Target::end_effector()) {
  const ChainFrames f = compute_frames(model, theta);
  const auto [link, point] = detail::ResolveTarget(model, f, target);
  return point_h_function(f, link, point);
}

inline Twist ee_velocity(const MatrixX& g, const VectorX& qd) {
  detail::RequireSize(g.rows(), 6, "influence coefficient rows");
  detail::RequireSize(qd.size(), g.cols(), "joint rate vector");
  return Twist::from_vector(g * qd);
}

inline Vector6 ee_acceleration(const MatrixX& g, const HFunction& h,
                               const VectorX& qd, const VectorX& qdd) {
  detail::RequireSize(g.rows(), 6, "influence coefficient rows");
  detail::RequireSize(qdd.size(), g.cols(), "joint acceleration vector");
  detail::RequireSize(static_cast<Eigen::Index>(h.dof()), g.cols(),
                      "second-order coefficients");
  return g * qdd + h.quadratic(qd);
}

// Equivalent joint torques for a wrench applied at the target point.
inline VectorX static_joint_torques(const MatrixX& g, const Wrench& w) {
  detail::RequireSize(g.rows(), 6, "influence coefficient rows");
  return g.transpose() * w.as_vector();
}

}  // namespace fmasim

#endif  // FMASIM_KINEMATICS_HPP_
