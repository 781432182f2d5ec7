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


// Scenario runners for the dual actuator and for contact tasks on a serial
// arm. Both are deterministic for a given scenario and seed.

#ifndef FMASIM_SIMULATION_HPP_
#define FMASIM_SIMULATION_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fmasim/errors.hpp"
#include "fmasim/fixtures.hpp"
#include "fmasim/fma.hpp"
#include "fmasim/force_control.hpp"
#include "fmasim/integrator.hpp"
#include "fmasim/kinematics.hpp"
#include "fmasim/random.hpp"
#include "fmasim/references.hpp"
#include "fmasim/spatial.hpp"
#include "fmasim/units.hpp"

namespace fmasim {

namespace detail {

inline std::size_t TickCount(double span, double step, const char* what) {
  if (!(step > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
  const double n = std::round(span / step);
  if (!(n >= 1.0)) {
    throw std::invalid_argument(std::string(what) + " exceeds the run length");
  }
  return static_cast<std::size_t>(n);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dual actuator

struct FmaScenario {
  std::string name = "fma";
  DualActuatorModel model = fixtures::fma_paper();
  WeightingPolicy weighting;
  ServoGains gains;
  TrapezoidalProfile reference;
  BurrDisturbance disturbance = BurrDisturbance::standard(1.0);
  bool noise = true;
  double control_period = 1e-3;  // s; voltage and W are held over a tick
  int substeps = 1;              // integration steps per tick
  double duration = 10.0;        // s
  double initial_position = 0.0;
  double initial_velocity = 0.0;
  std::uint64_t seed = 1;

  void validate() const {
    model.validate();
    weighting.validate();
    if (!(duration > 0.0)) throw std::invalid_argument("duration must be > 0");
    if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
    if (!(disturbance.noise_stddev >= 0.0)) {
      throw std::invalid_argument("noise deviation must be >= 0");
    }
    detail::TickCount(duration, control_period, "control period");
  }
};

struct FmaSample {
  double t = 0.0;
  double q = 0.0;
  double q_ref = 0.0;
  double qd = 0.0;
  double qd_ref = 0.0;
  double qdd = 0.0;
  Vector2 motor_position = Vector2::Zero();
  Vector2 motor_velocity = Vector2::Zero();
  Vector2 voltage = Vector2::Zero();
  Vector2 motor_torque = Vector2::Zero();  // K_m v per prime mover
  double tau_ext = 0.0;         // measured, noise included
  double output_torque = 0.0;   // torque delivered to the link
  double force_weight = 0.0;    // active W(1, 1)
  bool in_burr = false;
};

struct FmaTrace {
  std::string tag;
  double sample_interval = 0.0;
  Vector2 rotor_inertia = Vector2::Zero();
  double burr_settle_margin = 0.5;  // s
  std::vector<FmaSample> samples;
};

inline FmaTrace run_fma_scenario(const FmaScenario& sc) {
  sc.validate();
  const DualActuatorModel& m = sc.model;
  const std::size_t ticks =
      detail::TickCount(sc.duration, sc.control_period, "control period");
  const double h = sc.control_period / sc.substeps;
  GaussianNoise noise(sc.seed, 0.0, sc.disturbance.noise_stddev);

  FmaTrace trace;
  trace.tag = sc.name;
  trace.sample_interval = sc.control_period;
  trace.rotor_inertia = Vector2(m.motion.rotor_inertia, m.force.rotor_inertia);
  trace.samples.reserve(ticks + 1);

  // State: q, q_dot, qM1, qM2.
  using State = Eigen::Vector4d;
  State x(sc.initial_position, sc.initial_velocity, 0.0, 0.0);

  for (std::size_t k = 0; k <= ticks; ++k) {
    const double t = static_cast<double>(k) * sc.control_period;
    const double eta = sc.noise ? noise() : 0.0;
    const double q = x[0];
    const double qd = x[1];
    const double measured = sc.disturbance.viscous_torque(q, qd) + eta;
    const Matrix2 w = weighting(sc.weighting, measured);
    const OutputReference ref{sc.reference.position(t),
                              sc.reference.velocity(t),
                              sc.reference.acceleration(t)};
    const Vector2 v = computed_torque_voltage(m, w, q, qd, ref, sc.gains);

    const auto deriv = [&](double, const State& s) {
      const double tau = sc.disturbance.viscous_torque(s[0], s[1]) + eta;
      const double acc = reduced_dynamics(m, s[0], s[1], v, tau, w);
      const Vector2 motor = weighted_pseudo_inverse(m.ratios().row(), w) * s[1];
      return State(s[1], acc, motor[0], motor[1]);
    };

    FmaSample smp;
    smp.t = t;
    smp.q = q;
    smp.qd = qd;
    smp.q_ref = ref.position;
    smp.qd_ref = ref.velocity;
    smp.qdd = reduced_dynamics(m, q, qd, v, measured, w);
    smp.motor_position = x.tail<2>();
    smp.motor_velocity = weighted_pseudo_inverse(m.ratios().row(), w) * qd;
    smp.voltage = v;
    smp.motor_torque = Vector2(m.motion.torque_constant * v[0],
                               m.force.torque_constant * v[1]);
    smp.tau_ext = measured;
    smp.output_torque = m.as_built.inertia() * smp.qdd + m.friction_torque(qd) +
                        m.as_built.gravity_torque(q, m.gravity);
    smp.force_weight = w(1, 1);
    smp.in_burr = sc.disturbance.coefficient(q) != 0.0;
    trace.samples.push_back(smp);

    if (k == ticks) break;
    for (int s = 0; s < sc.substeps; ++s) {
      x = rk4_step(deriv, x, t + s * h, h);
    }
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Contact tasks on a serial arm

enum class ForceLaw { kPid, kCompliant };

struct ForceReference {
  enum class Kind { kConstant, kSinusoid };
  Kind kind = Kind::kConstant;
  double force = units::lbf_to_newton(-5.0);  // N, constant target
  double amplitude = units::lbf_to_newton(-3.0);  // N, sinusoid peak
  double period = 50.0;                           // s

  double at(double time_in_contact) const {
    return kind == Kind::kConstant
               ? force
               : sinusoidal_force_reference(time_in_contact, amplitude, period);
  }
};

struct ForceControlScenario {
  std::string name = "force";
  SerialChainModel chain = fixtures::powercube6();
  VectorX initial_joints = (VectorX(6) << 0.0, units::deg_to_rad(30.0),
                            units::deg_to_rad(60.0), 0.0,
                            units::deg_to_rad(-90.0), 0.0)
                               .finished();
  ContactSurface surface = fixtures::compliant_scale();
  double initial_gap = 9e-3;           // m, tool tip above the surface
  double servo_time_constant = 1.0;    // s, joint velocity lag
  double sensor_period = 2e-3;         // s
  std::size_t filter_window = 16;
  Wrench sensor_bias;                  // sensor frame
  double sensor_noise = 0.0;           // N, per force axis
  ForceLaw law = ForceLaw::kPid;
  double kp = 0.0;  // PID: (m/s)/N; compliant: m/N per period
  double kv = 0.0;  // m/N
  double ki = 0.0;  // (m/s)/(N·s)
  double bandwidth = 15.0;  // Hz
  double approach_speed = 2.25e-3;  // m/s
  double deadband = units::lbf_to_newton(0.45);
  ContactGuards guards;
  ForceReference reference;
  double duration = 150.0;  // s
  double dt = 1e-3;         // s, integration step
  std::optional<double> task_complete;  // s, start of departure
  std::uint64_t seed = 1;

  double control_period() const { return 1.0 / bandwidth; }

  void validate() const {
    chain.validate();
    surface.validate();
    detail::RequireSize(initial_joints.size(),
                        static_cast<Eigen::Index>(chain.dof()), "initial joints");
    if (chain.dof() != 6) throw DimensionError("contact tasks need a 6-joint arm");
    if (!(duration > 0.0)) throw std::invalid_argument("duration must be > 0");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
    if (!(servo_time_constant >= 0.0)) {
      throw std::invalid_argument("servo time constant must be >= 0");
    }
    if (kp < 0.0 || kv < 0.0 || ki < 0.0) {
      throw std::invalid_argument("gains must be >= 0");
    }
    if (filter_window < 1) throw std::invalid_argument("filter window must be >= 1");
    detail::TickCount(duration, dt, "time step");
    detail::TickCount(control_period(), dt, "time step");
    detail::TickCount(sensor_period, dt, "time step");
  }
};

struct ForceSample {
  double t = 0.0;
  double tip_height = 0.0;     // m, above the surface
  double contact_force = 0.0;  // N, compressive normal force (true)
  double measured_force = 0.0;  // N, conditioned, base-parallel z
  double reference = 0.0;      // N, 0 outside contact
  ContactPhase phase = ContactPhase::kApproach;
};

struct ForceTrace {
  std::string tag;
  double sample_interval = 0.0;
  double deadband = 0.0;
  std::optional<double> target;  // N, constant references only
  double reference_period = 0.0;  // s, sinusoidal references only
  std::vector<ForceSample> samples;
};

inline ForceTrace run_force_control_scenario(const ForceControlScenario& sc) {
  sc.validate();
  const std::size_t n = sc.chain.dof();
  const auto ni = static_cast<Eigen::Index>(n);
  const std::size_t steps = detail::TickCount(sc.duration, sc.dt, "time step");
  const std::size_t control_every =
      detail::TickCount(sc.control_period(), sc.dt, "time step");
  const std::size_t sensor_every =
      detail::TickCount(sc.sensor_period, sc.dt, "time step");
  const double period = static_cast<double>(control_every) * sc.dt;

  ContactSurface surface = sc.surface;
  {
    const Vector3 tip = forward_kinematics(sc.chain, sc.initial_joints).position;
    surface.point = tip - sc.initial_gap * surface.normal;
  }

  const SpatialTransform sensor_in_tool = sensor_to_tool_transform();
  const GainSet gains =
      sc.law == ForceLaw::kPid ? GainSet::translational(sc.kp, sc.kv, sc.ki)
                               : GainSet::translational(sc.kp);
  SignalConditioner conditioner(sc.sensor_bias, sc.filter_window, sc.deadband);
  GaussianNoise noise(sc.seed, 0.0, sc.sensor_noise);

  ForceTrace trace;
  trace.tag = sc.name;
  trace.sample_interval = period;
  trace.deadband = sc.deadband;
  if (sc.reference.kind == ForceReference::Kind::kConstant) {
    trace.target = sc.reference.force;
  } else {
    trace.reference_period = sc.reference.period;
  }

  // State: joint angles followed by joint rates.
  VectorX x(2 * ni);
  x << sc.initial_joints, VectorX::Zero(ni);
  VectorX rate_cmd = VectorX::Zero(ni);

  ContactPhase phase = ContactPhase::kApproach;
  Wrench filtered;
  Wrench error_prev;
  Wrench error_sum;
  bool have_prev = false;
  double contact_time = 0.0;
  double force_prev = 0.0;
  bool finished = false;

  const auto base_parallel = [&](const ChainFrames& f) {
    return compose(SpatialTransform(Rotation(f.tool.linear()), Vector3::Zero()),
                   sensor_in_tool);
  };

  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * sc.dt;
    const VectorX theta = x.head(ni);
    const ChainFrames frames = compute_frames(sc.chain, theta);
    const Vector3 tip = frames.tool.translation();

    if (i % sensor_every == 0) {
      const MatrixX g = point_g_function(frames, n - 1, tip);
      const Vector3 tip_velocity = g.topRows<3>() * x.tail(ni);
      const Wrench on_tool = contact_wrench(surface, tip, tip_velocity);
      // The sensor reports the reaction the tool applies to the surface.
      const SpatialTransform to_base = base_parallel(frames);
      Wrench raw = transform_wrench(to_base.inverse(), on_tool * -1.0);
      raw = raw + sc.sensor_bias;
      if (sc.sensor_noise > 0.0) {
        for (int a = 0; a < 3; ++a) raw.force[a] += noise();
      }
      filtered = transform_wrench(to_base, conditioner(raw));
    }

    if (i % control_every == 0) {
      const double force = filtered.force.dot(surface.normal);
      const double force_rate = (force - force_prev) / period;
      force_prev = force;
      const bool complete = sc.task_complete && t >= *sc.task_complete;
      const ContactPhase next = contact_state_step(
          phase, {force, force_rate}, complete, sc.guards);
      if (phase == ContactPhase::kApproach && next == ContactPhase::kTransition) {
        contact_time = t;
        have_prev = false;
        error_sum = {};
      }
      if (phase == ContactPhase::kDeparture && next == ContactPhase::kApproach) {
        finished = true;
      }
      phase = next;

      Vector6 tip_rate = Vector6::Zero();
      double reference = 0.0;
      const MatrixX g = point_g_function(frames, n - 1, tip);
      switch (phase) {
        case ContactPhase::kApproach:
          if (!finished) tip_rate.head<3>() = -sc.approach_speed * surface.normal;
          break;
        case ContactPhase::kDeparture:
          tip_rate.head<3>() = sc.approach_speed * surface.normal;
          break;
        case ContactPhase::kTransition:
        case ContactPhase::kConstrainedContact: {
          reference =
              std::min(sc.reference.at(t - contact_time), -sc.deadband);
          Wrench desired;
          desired.force = reference * surface.normal;
          Wrench error = desired - filtered;
          error.moment.setZero();
          if (sc.law == ForceLaw::kPid) {
            const Wrench error_rate =
                have_prev ? (error - error_prev) * (1.0 / period) : Wrench{};
            error_sum = error_sum + error * period;
            error_prev = error;
            have_prev = true;
            rate_cmd = pure_force_control_step(g, gains, error, error_rate,
                                               error_sum);
          } else {
            rate_cmd = compliant_control_step(g, gains.kp, error) / period;
          }
          break;
        }
      }
      if (phase == ContactPhase::kApproach || phase == ContactPhase::kDeparture) {
        rate_cmd = detail::SolveJacobian(g, tip_rate);
      }

      ForceSample smp;
      smp.t = t;
      smp.tip_height = -surface.penetration(tip);
      smp.contact_force = std::max(0.0, surface.stiffness() * surface.penetration(tip));
      smp.measured_force = force;
      smp.reference = reference;
      smp.phase = phase;
      trace.samples.push_back(smp);
    }

    if (i == steps) break;
    const auto deriv = [&](double, const VectorX& s) {
      VectorX d(2 * ni);
      d.head(ni) = s.tail(ni);
      if (sc.servo_time_constant > 0.0) {
        d.tail(ni) = (rate_cmd - s.tail(ni)) / sc.servo_time_constant;
      } else {
        d.tail(ni).setZero();
      }
      return d;
    };
    if (sc.servo_time_constant > 0.0) {
      x = rk4_step(deriv, x, t, sc.dt);
    } else {
      x.tail(ni) = rate_cmd;
      x.head(ni) += sc.dt * rate_cmd;
    }
  }
  return trace;
}

// ---------------------------------------------------------------------------

using Scenario = std::variant<FmaScenario, ForceControlScenario>;
using Trace = std::variant<FmaTrace, ForceTrace>;

inline Trace run_scenario(const Scenario& s) {
  return std::visit([](const auto& sc) -> Trace {
    using T = std::decay_t<decltype(sc)>;
    if constexpr (std::is_same_v<T, FmaScenario>) {
      return run_fma_scenario(sc);
    } else {
      return run_force_control_scenario(sc);
    }
  }, s);
}

}  // namespace fmasim

#endif  // FMASIM_SIMULATION_HPP_
