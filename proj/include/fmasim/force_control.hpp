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


// Position-based force control: accommodation laws, virtual fixtures, the
// contact environment, sensor signal conditioning and the contact-task
// state machine.
//
// Wrenches fed to the control laws are expressed in a frame parallel to the
// robot base. Force errors follow e = W_ref - W, where W is the reaction
// measured by the wrist sensor (negative along the surface normal while
// pressing down on a horizontal surface).

#ifndef FMASIM_FORCE_CONTROL_HPP_
#define FMASIM_FORCE_CONTROL_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string_view>

#include "fmasim/errors.hpp"
#include "fmasim/kinematics.hpp"
#include "fmasim/spatial.hpp"
#include "fmasim/units.hpp"

namespace fmasim {

inline constexpr double kInfiniteStiffness =
    std::numeric_limits<double>::infinity();

// Diagonal gain matrices of the force-control laws, SI.
struct GainSet {
  Matrix6 kp = Matrix6::Zero();
  Matrix6 kv = Matrix6::Zero();
  Matrix6 ki = Matrix6::Zero();

  // The same gains on the three force axes, none on the moments.
  static GainSet translational(double kp, double kv = 0.0, double ki = 0.0) {
    GainSet g;
    for (int i = 0; i < 3; ++i) {
      g.kp(i, i) = kp;
      g.kv(i, i) = kv;
      g.ki(i, i) = ki;
    }
    return g;
  }

  void validate() const {
    for (const Matrix6* m : {&kp, &kv, &ki}) {
      const Matrix6 off = *m - Matrix6(m->diagonal().asDiagonal());
      if (off.cwiseAbs().maxCoeff() != 0.0 || m->diagonal().minCoeff() < 0.0) {
        throw std::invalid_argument("gain matrices must be diagonal and >= 0");
      }
    }
  }
};

// Series combination of sensor, tool and environment stiffness.
inline double effective_stiffness(double sensor, double tool,
                                  double environment) {
  double compliance = 0.0;
  for (double k : {sensor, tool, environment}) {
    if (!(k > 0.0)) throw std::invalid_argument("stiffness must be > 0");
    if (!std::isinf(k)) compliance += 1.0 / k;
  }
  if (compliance == 0.0) return kInfiniteStiffness;
  return 1.0 / compliance;
}

// Frictionless planar surface.
struct ContactSurface {
  double environment_stiffness = 0.0;  // N/m
  double sensor_stiffness = kInfiniteStiffness;
  double tool_stiffness = kInfiniteStiffness;
  double damping = 0.0;  // N/(m/s)
  Vector3 point = Vector3::Zero();
  Vector3 normal = Vector3::UnitZ();

  double stiffness() const {
    return effective_stiffness(sensor_stiffness, tool_stiffness,
                               environment_stiffness);
  }

  void validate() const {
    stiffness();
    if (std::abs(normal.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("surface normal must be a unit vector");
    }
    if (damping < 0.0) throw std::invalid_argument("damping must be >= 0");
  }

  double penetration(const Vector3& p) const { return (point - p).dot(normal); }
};

// Force exerted by the surface on the tool tip; never pulls.
inline Wrench contact_wrench(const ContactSurface& s, const Vector3& position,
                             const Vector3& velocity) {
  const double depth = s.penetration(position);
  if (depth <= 0.0) return {};
  const double push =
      s.stiffness() * depth - s.damping * velocity.dot(s.normal);
  return {s.normal * std::max(push, 0.0), Vector3::Zero()};
}

inline double natural_frequency(double stiffness, double mass) {
  if (!(stiffness > 0.0) || !(mass > 0.0)) {
    throw std::invalid_argument("stiffness and mass must be > 0");
  }
  return std::sqrt(stiffness / mass) / (2.0 * std::numbers::pi);
}

// Reference-signal frequency as a fraction of the contact natural frequency.
inline double frequency_ratio(double signal_hz, double natural_hz) {
  if (!(signal_hz >= 0.0) || !(natural_hz > 0.0)) {
    throw std::invalid_argument("frequencies must be >= 0 and natural > 0");
  }
  return signal_hz / natural_hz;
}

// Bias removal, moving average and per-axis force deadband.
class SignalConditioner {
 public:
  explicit SignalConditioner(Wrench bias = {}, std::size_t window = 16,
                             double deadband = 0.0)
      : bias_(bias), window_(window), deadband_(deadband) {
    if (window_ < 1) throw std::invalid_argument("filter window must be >= 1");
    if (deadband_ < 0.0) throw std::invalid_argument("deadband must be >= 0");
  }

  // The average runs over a full window that starts out filled with zeros.
  Wrench operator()(const Wrench& raw) {
    const Vector6 sample = (raw - bias_).as_vector();
    history_.push_back(sample);
    sum_ += sample;
    if (history_.size() > window_) {
      sum_ -= history_.front();
      history_.pop_front();
    }
    Wrench out = Wrench::from_vector(sum_ / static_cast<double>(window_));
    for (int i = 0; i < 3; ++i) {
      if (std::abs(out.force[i]) < deadband_) out.force[i] = 0.0;
    }
    return out;
  }

  void reset() {
    history_.clear();
    sum_.setZero();
  }

  const Wrench& bias() const { return bias_; }
  std::size_t window() const { return window_; }
  double deadband() const { return deadband_; }

 private:
  Wrench bias_;
  std::size_t window_;
  double deadband_;
  std::deque<Vector6> history_;
  Vector6 sum_ = Vector6::Zero();
};

inline Wrench condition_signal(SignalConditioner& conditioner,
                               const Wrench& raw) {
  return conditioner(raw);
}

// Displacement per control period proportional to the applied wrench.
inline Vector6 virtual_inertia_damper_step(const Matrix6& gain,
                                           const Wrench& applied) {
  return gain * applied.as_vector();
}

// Displacement from the registered equilibrium proportional to the wrench
// change since registration.
inline Vector6 virtual_spring_step(const Matrix6& compliance,
                                   const Wrench& change) {
  return compliance * change.as_vector();
}

class VirtualSpring {
 public:
  VirtualSpring(const Vector6& equilibrium_pose, const Wrench& equilibrium_wrench,
                const Matrix6& compliance)
      : pose_(equilibrium_pose),
        wrench_(equilibrium_wrench),
        compliance_(compliance) {}

  Vector6 commanded_pose(const Wrench& measured) const {
    return pose_ + virtual_spring_step(compliance_, measured - wrench_);
  }

  const Vector6& equilibrium() const { return pose_; }

 private:
  Vector6 pose_;
  Wrench wrench_;
  Matrix6 compliance_;
};

struct VirtualFixture {
  Eigen::Matrix<double, 3, 2> basis;
  Matrix3 projector;
};

// Plane through three points.
inline VirtualFixture fixture_projector(const Vector3& p1, const Vector3& p2,
                                        const Vector3& p3) {
  const Vector3 d1 = p2 - p1;
  const Vector3 d2 = p3 - p1;
  if (d1.norm() == 0.0 || d2.norm() == 0.0) {
    throw DegenerateConfiguration("fixture points coincide");
  }
  VirtualFixture f;
  f.basis.col(0) = d1.normalized();
  f.basis.col(1) = d2.normalized();
  const Eigen::Matrix2d gram = f.basis.transpose() * f.basis;
  if (gram.determinant() < 1e-12) {
    throw DegenerateConfiguration("fixture points are collinear");
  }
  f.projector = f.basis * gram.ldlt().solve(f.basis.transpose());
  return f;
}

inline Vector3 project_force(const VirtualFixture& f, const Vector3& force) {
  return f.projector * force;
}

namespace detail {

inline constexpr double kMinJacobianConditioning = 1e-9;

inline VectorX SolveJacobian(const MatrixX& g, const Vector6& rhs) {
  if (g.rows() != 6 || g.cols() != 6) {
    throw DimensionError("force control needs a square 6 x 6 Jacobian");
  }
  const Eigen::JacobiSVD<MatrixX> svd(g);
  const auto& s = svd.singularValues();
  if (!(s(s.size() - 1) > kMinJacobianConditioning * s(0))) {
    throw DegenerateConfiguration("Jacobian is singular");
  }
  return g.partialPivLu().solve(rhs);
}

}  // namespace detail

// Joint rates from a PID law on the force error.
inline VectorX pure_force_control_step(const MatrixX& jacobian,
                                       const GainSet& gains,
                                       const Wrench& error,
                                       const Wrench& error_rate,
                                       const Wrench& error_integral) {
  const Vector6 rate = gains.kp * error.as_vector() +
                       gains.kv * error_rate.as_vector() +
                       gains.ki * error_integral.as_vector();
  return detail::SolveJacobian(jacobian, rate);
}

// Joint displacement for one control period.
inline VectorX compliant_control_step(const MatrixX& jacobian,
                                      const Matrix6& gain,
                                      const Wrench& error) {
  return detail::SolveJacobian(jacobian, gain * error.as_vector());
}

enum class ContactPhase { kApproach, kTransition, kConstrainedContact, kDeparture };

inline std::string_view phase_name(ContactPhase p) {
  switch (p) {
    case ContactPhase::kApproach:
      return "approach";
    case ContactPhase::kTransition:
      return "transition";
    case ContactPhase::kConstrainedContact:
      return "constrained";
    case ContactPhase::kDeparture:
      return "departure";
  }
  return "unknown";
}

struct ContactGuards {
  double contact_threshold = units::lbf_to_newton(0.45);  // N
  double settle_rate = units::lbf_to_newton(0.5);         // N/s
  double release_threshold = units::lbf_to_newton(0.45);  // N
};

struct ContactObservation {
  double normal_force = 0.0;  // N
  double force_rate = 0.0;    // N/s
};

inline ContactPhase contact_state_step(ContactPhase phase,
                                       const ContactObservation& obs,
                                       bool task_complete,
                                       const ContactGuards& guards = {}) {
  const double magnitude = std::abs(obs.normal_force);
  switch (phase) {
    case ContactPhase::kApproach:
      return magnitude > guards.contact_threshold ? ContactPhase::kTransition
                                                  : phase;
    case ContactPhase::kTransition:
      return std::abs(obs.force_rate) < guards.settle_rate
                 ? ContactPhase::kConstrainedContact
                 : phase;
    case ContactPhase::kConstrainedContact:
      return task_complete ? ContactPhase::kDeparture : phase;
    case ContactPhase::kDeparture:
      return magnitude < guards.release_threshold ? ContactPhase::kApproach
                                                  : phase;
  }
  return phase;
}

}  // namespace fmasim

#endif  // FMASIM_FORCE_CONTROL_HPP_
