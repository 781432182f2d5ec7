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

// Dual-input force/motion actuator.
//
// Two prime movers drive one output through a star-compound gear train:
//
//   q_dot = g1 * qM1_dot + g2 * qM2_dot = G qM_dot
//
// where prime mover 1 is the fast "motion" motor and prime mover 2 the
// high-torque "force" motor. Because G is 1 x 2 the motor velocities are
// resolved with a weighted right pseudo-inverse
//
//   G+ = W⁻¹ Gᵀ (G W⁻¹ Gᵀ)⁻¹,   qM_dot = G+ q_dot + (I - G+ G) qM0_dot,
//
// which minimises ½ qM_dotᵀ W qM_dot for the particular solution. The motor
// equations reflected through G+ give a single-DOF output model
//
//   I'(q) q_ddot + V'(q, q_dot) + F'(q_dot) + G(q) = K'_M v - tau_ext
//
// with I' = I + G+ᵀ I_M G+, V' = V + G+ᵀ B_M G+ q_dot, F' = F + G+ᵀ F_M and
// K'_M = G+ᵀ K_M. The output angle q is measured from the horizontal.

#ifndef FMASIM_FMA_HPP_
#define FMASIM_FMA_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "fmasim/errors.hpp"
#include "fmasim/units.hpp"

namespace fmasim {

using Vector2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;
using RowVector2 = Eigen::RowVector2d;

struct StarCompoundGeometry {
  double r9 = 1.0;
  double r10 = 2.3;
  double r11 = 1.0;
  double r12 = 4.3;
  double hypocyclic_ratio = 1.0 / 150.0;

  void validate() const {
    if (!(r9 > 0 && r10 > 0 && r11 > 0 && r12 > 0)) {
      throw std::invalid_argument("gear radii must be positive");
    }
    if (std::abs(r12 - (r9 + r10 + r11)) > 1e-9 * r12) {
      throw std::invalid_argument("ring radius must equal r9 + r10 + r11");
    }
    if (!(hypocyclic_ratio > 0.0 && hypocyclic_ratio <= 1.0)) {
      throw std::invalid_argument("hypocyclic ratio must lie in (0, 1]");
    }
  }
};

struct GearRatios {
  double motion = 0.0;  // g1
  double force = 0.0;   // g2

  RowVector2 row() const { return RowVector2(motion, force); }
};

inline GearRatios gear_ratios(const StarCompoundGeometry& geo) {
  geo.validate();
  const double star = geo.r9 * geo.r11 / (geo.r10 * geo.r12);
  return {geo.hypocyclic_ratio * (1.0 + star), -star};
}

inline double scale_ratio(double g1, double g2) {
  if (g1 == 0.0) throw std::invalid_argument("motion gear ratio is zero");
  return std::abs(g2 / g1);
}

inline double output_velocity(const RowVector2& g, const Vector2& motor_rates) {
  return g.dot(motor_rates.transpose());
}

// W⁻¹ Gᵀ (G W⁻¹ Gᵀ)⁻¹ for a full-row-rank G (m x n, m <= n) and an SPD W.
template <typename GDerived, typename WDerived>
auto weighted_pseudo_inverse(const Eigen::MatrixBase<GDerived>& g,
                             const Eigen::MatrixBase<WDerived>& w) {
  using Scalar = typename GDerived::Scalar;
  constexpr int kRows = GDerived::RowsAtCompileTime;
  constexpr int kCols = GDerived::ColsAtCompileTime;
  using Result = Eigen::Matrix<Scalar, kCols, kRows>;
  detail::RequireSize(w.rows(), g.cols(), "weighting matrix rows");
  detail::RequireSize(w.cols(), g.cols(), "weighting matrix columns");
  if ((w - w.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * (1.0 + w.cwiseAbs().maxCoeff())) {
    throw DegenerateConfiguration("weighting matrix is not symmetric");
  }
  const Eigen::LLT<Eigen::Matrix<Scalar, kCols, kCols>> w_llt(w);
  if (w_llt.info() != Eigen::Success) {
    throw DegenerateConfiguration("weighting matrix is not positive definite");
  }
  const Result winv_gt = w_llt.solve(g.transpose());
  const Eigen::Matrix<Scalar, kRows, kRows> gram = g * winv_gt;
  const Eigen::LLT<Eigen::Matrix<Scalar, kRows, kRows>> gram_llt(gram);
  if (gram_llt.info() != Eigen::Success ||
      !(gram.diagonal().minCoeff() > 0.0)) {
    throw DegenerateConfiguration("influence coefficients are rank deficient");
  }
  return Result(gram_llt.solve(winv_gt.transpose()).transpose());
}

template <typename GDerived, typename WDerived>
auto null_space_projector(const Eigen::MatrixBase<GDerived>& g,
                          const Eigen::MatrixBase<WDerived>& w) {
  using Scalar = typename GDerived::Scalar;
  constexpr int kCols = GDerived::ColsAtCompileTime;
  using Square = Eigen::Matrix<Scalar, kCols, kCols>;
  const auto pinv = weighted_pseudo_inverse(g, w);
  return Square(Square::Identity(g.cols(), g.cols()) - pinv * g);
}

inline Vector2 allocate_velocities(const RowVector2& g, const Matrix2& w,
                                   double output_rate,
                                   const std::optional<Vector2>& seed = {}) {
  const Vector2 pinv = weighted_pseudo_inverse(g, w);
  Vector2 rates = pinv * output_rate;
  if (seed) rates += null_space_projector(g, w) * *seed;
  return rates;
}

// Transmission friction, N·m, odd in the output rate and zero at rest.
inline double stribeck_friction(double rate) {
  if (rate == 0.0) return 0.0;
  const double speed = std::abs(rate);
  const double f =
      0.20 + 1.506 * speed - 0.9602 * (1.0 - std::exp(-0.0047 * speed));
  return rate < 0.0 ? -f : f;
}

struct PrimeMoverParams {
  double rotor_inertia = 0.0;    // kg·m²
  double damping = 0.0;          // N·m/(rad/s)
  double torque_constant = 0.0;  // N·m/A
  double back_emf_constant = 0.0;  // V/(rad/s)
  double armature_resistance = 0.0;  // ohm

  // Datasheet damping comes in N·m/RPM.
  static PrimeMoverParams from_datasheet(double inertia, double damping_per_rpm,
                                         double km, double kb, double ra) {
    return {inertia, units::per_rpm_to_per_rad_s(damping_per_rpm), km, kb, ra};
  }

  void validate() const {
    if (!(rotor_inertia > 0 && damping > 0 && torque_constant > 0 &&
          back_emf_constant > 0 && armature_resistance > 0)) {
      throw std::invalid_argument("prime mover parameters must be positive");
    }
  }

  // Mechanical damping plus the electrical damping of the back EMF.
  double effective_damping() const {
    return damping + back_emf_constant * torque_constant / armature_resistance;
  }
};

// Rigid output link with a point mass at half length and a tool mass at the
// tip.
struct OutputLink {
  double link_mass = 0.0;  // kg
  double length = 0.0;     // m
  double tool_mass = 0.0;  // kg

  void validate() const {
    if (!(link_mass > 0.0)) throw std::invalid_argument("link mass must be > 0");
    if (!(length > 0.0)) throw std::invalid_argument("link length must be > 0");
    if (tool_mass < 0.0) throw std::invalid_argument("tool mass must be >= 0");
  }

  double inertia() const {
    const double half = 0.5 * length;
    return link_mass * half * half + tool_mass * length * length;
  }

  // Torque needed to hold the link at angle q from the horizontal.
  double gravity_torque(double q, double gravity) const {
    return (0.5 * link_mass + tool_mass) * length * gravity * std::cos(q);
  }
};

enum class FrictionModel { kNone, kStribeck };

struct DualActuatorModel {
  StarCompoundGeometry geometry;
  PrimeMoverParams motion;
  PrimeMoverParams force;
  OutputLink as_built;
  OutputLink as_designed;
  FrictionModel friction = FrictionModel::kStribeck;
  double gravity = units::kStandardGravity;

  GearRatios ratios() const { return gear_ratios(geometry); }

  // Scale ratios between 10 and 15 are the intended design band.
  bool scale_ratio_in_design_band() const {
    const GearRatios g = ratios();
    const double rho = scale_ratio(g.motion, g.force);
    return rho >= 10.0 && rho <= 15.0;
  }

  void validate() const {
    geometry.validate();
    motion.validate();
    force.validate();
    as_built.validate();
    as_designed.validate();
  }

  double friction_torque(double rate) const {
    return friction == FrictionModel::kStribeck ? stribeck_friction(rate) : 0.0;
  }
};

struct MotorMatrices {
  Matrix2 inertia;
  Matrix2 damping;
  Matrix2 torque_constants;
};

inline MotorMatrices motor_dynamics_matrices(const DualActuatorModel& m) {
  MotorMatrices out;
  out.inertia = Vector2(m.motion.rotor_inertia, m.force.rotor_inertia).asDiagonal();
  out.damping = Vector2(m.motion.effective_damping(), m.force.effective_damping())
                    .asDiagonal();
  out.torque_constants =
      Vector2(m.motion.torque_constant, m.force.torque_constant).asDiagonal();
  return out;
}

// Switches between a light and a heavy force-channel weight on the measured
// external torque.
struct WeightingPolicy {
  Matrix2 quiet = Vector2(1.0, 164.5).asDiagonal();
  Matrix2 disturbed = Vector2(1.0, 16.45).asDiagonal();
  double threshold = 4.0;  // N·m

  void validate() const {
    for (const Matrix2* w : {&quiet, &disturbed}) {
      if ((*w - w->transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
          Eigen::LLT<Matrix2>(*w).info() != Eigen::Success) {
        throw std::invalid_argument("weighting matrices must be SPD");
      }
    }
    if (!(threshold >= 0.0)) {
      throw std::invalid_argument("weighting threshold must be >= 0");
    }
  }
};

inline Matrix2 weighting(const WeightingPolicy& policy, double measured_torque) {
  return measured_torque < policy.threshold ? policy.quiet : policy.disturbed;
}

// Output-side coefficients of the reduced model for one link description.
struct ReducedTerms {
  double inertia = 0.0;       // I'
  double damping_torque = 0.0;  // V'
  double friction = 0.0;      // F'
  double gravity = 0.0;       // G(q)
  RowVector2 input_gain;      // K'_M
  Vector2 pseudo_inverse;     // G+
};

inline ReducedTerms reduced_terms(const DualActuatorModel& m,
                                  const OutputLink& link, const Matrix2& w,
                                  double q, double qd) {
  const MotorMatrices mm = motor_dynamics_matrices(m);
  const Vector2 pinv = weighted_pseudo_inverse(m.ratios().row(), w);
  ReducedTerms r;
  r.pseudo_inverse = pinv;
  r.inertia = link.inertia() + pinv.dot(mm.inertia * pinv);
  r.damping_torque = pinv.dot(mm.damping * pinv) * qd;
  r.friction = m.friction_torque(qd);
  r.gravity = link.gravity_torque(q, m.gravity);
  r.input_gain = pinv.transpose() * mm.torque_constants;
  return r;
}

// Output acceleration of the as-built plant.
inline double reduced_dynamics(const DualActuatorModel& m, double q, double qd,
                               const Vector2& voltage, double external_torque,
                               const Matrix2& w) {
  const ReducedTerms r = reduced_terms(m, m.as_built, w, q, qd);
  if (!(r.inertia > 0.0)) {
    throw DegenerateConfiguration("reflected output inertia is not positive");
  }
  return (r.input_gain.dot(voltage.transpose()) - external_torque -
          r.damping_torque - r.friction - r.gravity) /
         r.inertia;
}

struct ServoGains {
  double kp = 100.0;  // 1/s²
  double kv = 20.0;   // 1/s
};

struct OutputReference {
  double position = 0.0;
  double velocity = 0.0;
  double acceleration = 0.0;
};

// Computed-torque voltages from the as-designed model with a PD servo on the
// tracking error.
inline Vector2 computed_torque_voltage(const DualActuatorModel& m,
                                       const Matrix2& w, double q, double qd,
                                       const OutputReference& ref,
                                       const ServoGains& gains) {
  const ReducedTerms r = reduced_terms(m, m.as_designed, w, q, qd);
  const double accel = ref.acceleration + gains.kv * (ref.velocity - qd) +
                       gains.kp * (ref.position - q);
  const double torque =
      r.inertia * accel + r.damping_torque + r.friction + r.gravity;
  const MotorMatrices mm = motor_dynamics_matrices(m);
  return mm.torque_constants.diagonal().cwiseInverse().cwiseProduct(
      m.ratios().row().transpose() * torque);
}

}  // namespace fmasim

#endif  // FMASIM_FMA_HPP_
