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


// Scalar summaries of simulation traces and torque-speed envelope points.

#ifndef FMASIM_METRICS_HPP_
#define FMASIM_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fmasim/simulation.hpp"

namespace fmasim {

struct Metrics {
  // Dual actuator runs.
  std::optional<double> max_position_error;          // rad
  std::optional<double> max_position_error_outside;  // rad, away from burrs
  std::optional<double> max_position_error_inside;   // rad, burrs + settle
  std::optional<double> mean_position_error;         // rad
  std::optional<double> max_velocity_error;          // rad/s
  std::optional<double> mean_velocity_error;         // rad/s
  std::optional<std::pair<double, double>> pvke;     // % (motion, force)
  std::optional<Vector2> mean_abs_motor_speed;       // rad/s
  std::optional<Vector2> mean_abs_motor_torque;      // N·m
  std::optional<double> final_position;              // rad
  std::optional<double> final_voltage_norm;          // V
  // Contact runs.
  std::optional<double> contact_time;        // s
  std::optional<double> peak_force;          // N
  std::optional<double> final_force;         // N
  std::optional<double> steady_state_error;  // N, |final - target|
  std::optional<double> overshoot;           // % of target
  std::optional<double> settling_time;       // s after contact, 2 % band
  std::optional<double> transient_duration;  // s
  std::optional<double> impulse;             // N·s
  std::optional<double> tracking_lag;        // % of reference period
  std::optional<double> min_tracking_force;  // N, once tracking has begun
};

// Time-averaged rotor kinetic energy split, percent (motion, force).
inline std::pair<double, double> partition_of_kinetic_energy(
    const FmaTrace& trace) {
  if (trace.samples.empty()) throw std::invalid_argument("empty trace");
  Vector2 energy = Vector2::Zero();
  for (const auto& s : trace.samples) {
    energy += 0.5 * trace.rotor_inertia.cwiseProduct(
                        s.motor_velocity.cwiseProduct(s.motor_velocity));
  }
  const double total = energy.sum();
  if (!(total > 0.0)) {
    throw std::domain_error("kinetic energy partition is undefined without motion");
  }
  const double motion = 100.0 * energy[0] / total;
  return {motion, 100.0 - motion};
}

// Flags samples that lie in a burr band or within `margin` seconds after one.
inline std::vector<bool> disturbance_windows(const FmaTrace& trace,
                                             double margin) {
  std::vector<bool> inside(trace.samples.size(), false);
  std::optional<double> last;
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const auto& s = trace.samples[i];
    if (s.in_burr) last = s.t;
    inside[i] = last && s.t - *last <= margin + 1e-12;
  }
  return inside;
}

inline Metrics compute_metrics(const FmaTrace& trace) {
  if (trace.samples.empty()) throw std::invalid_argument("empty trace");
  Metrics m;
  const std::vector<bool> inside =
      disturbance_windows(trace, trace.burr_settle_margin);
  double max_err = 0.0, max_in = 0.0, max_out = 0.0, sum_err = 0.0;
  double max_verr = 0.0, sum_verr = 0.0;
  Vector2 speed = Vector2::Zero(), torque = Vector2::Zero();
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const auto& s = trace.samples[i];
    const double e = std::abs(s.q_ref - s.q);
    const double ve = std::abs(s.qd_ref - s.qd);
    max_err = std::max(max_err, e);
    (inside[i] ? max_in : max_out) = std::max(inside[i] ? max_in : max_out, e);
    sum_err += e;
    max_verr = std::max(max_verr, ve);
    sum_verr += ve;
    speed += s.motor_velocity.cwiseAbs();
    torque += s.motor_torque.cwiseAbs();
  }
  const double n = static_cast<double>(trace.samples.size());
  m.max_position_error = max_err;
  m.max_position_error_outside = max_out;
  m.max_position_error_inside = max_in;
  m.mean_position_error = sum_err / n;
  m.max_velocity_error = max_verr;
  m.mean_velocity_error = sum_verr / n;
  m.mean_abs_motor_speed = speed / n;
  m.mean_abs_motor_torque = torque / n;
  try {
    m.pvke = partition_of_kinetic_energy(trace);
  } catch (const std::domain_error&) {
    m.pvke.reset();
  }
  m.final_position = trace.samples.back().q;
  m.final_voltage_norm = trace.samples.back().voltage.norm();
  return m;
}

namespace detail {

inline double Correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const auto n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += (a[i] - ma) * (b[i] - mb);
    aa += (a[i] - ma) * (a[i] - ma);
    bb += (b[i] - mb) * (b[i] - mb);
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

}  // namespace detail

// Lag of the contact force behind a sinusoidal reference over the samples in
// [from, to) that carry a reference, as a percentage of the reference period.
// The reference window is fixed and the force series is slid behind it, so
// every candidate shift is scored on the same reference samples. Empty when
// the window holds fewer than three such samples.
inline std::optional<double> tracking_lag(const ForceTrace& trace, double from,
                                          double to) {
  if (!(trace.reference_period > 0.0) || !(trace.sample_interval > 0.0)) {
    return std::nullopt;
  }
  const auto& s = trace.samples;
  std::size_t first = s.size();
  std::vector<double> ref;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].t < from || s[i].t >= to) continue;
    if (s[i].reference == 0.0) {
      if (!ref.empty()) break;
      continue;
    }
    if (ref.empty()) first = i;
    ref.push_back(s[i].reference);
  }
  const auto max_shift = static_cast<std::size_t>(
      0.25 * trace.reference_period / trace.sample_interval);
  if (first + ref.size() + max_shift > s.size()) {
    ref.resize(s.size() - std::min(s.size(), first + max_shift));
  }
  if (ref.size() < 3) return std::nullopt;
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<double> act(ref.size());
  for (std::size_t lag = 0; lag <= max_shift; ++lag) {
    if (first + lag + ref.size() > s.size()) break;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      act[i] = -s[first + lag + i].contact_force;
    }
    const double score = detail::Correlation(ref, act);
    if (score > best_score) {
      best_score = score;
      best = lag;
    }
  }
  return 100.0 * static_cast<double>(best) * trace.sample_interval /
         trace.reference_period;
}

inline Metrics compute_metrics(const ForceTrace& trace) {
  if (trace.samples.empty()) throw std::invalid_argument("empty trace");
  Metrics m;
  const auto& s = trace.samples;
  double peak = 0.0;
  for (const auto& x : s) peak = std::max(peak, x.contact_force);
  m.peak_force = peak;
  m.final_force = s.back().contact_force;

  std::optional<std::size_t> first_contact;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].contact_force > trace.deadband) {
      first_contact = i;
      break;
    }
  }
  if (!first_contact) {
    m.impulse = 0.0;
    return m;
  }
  const double t0 = s[*first_contact].t;
  m.contact_time = t0;

  // First sample within 10 % of the reference ends the contact transient.
  for (std::size_t i = *first_contact; i < s.size(); ++i) {
    const double target =
        trace.target ? std::abs(*trace.target) : std::abs(s[i].reference);
    if (target > 0.0 && std::abs(s[i].contact_force - target) <= 0.1 * target) {
      m.transient_duration = s[i].t - t0;
      m.impulse = peak * *m.transient_duration;
      break;
    }
  }

  if (trace.target) {
    const double target = std::abs(*trace.target);
    m.overshoot = std::max(0.0, 100.0 * (peak - target) / target);
    m.steady_state_error = std::abs(s.back().contact_force - target);
    std::optional<double> last_out;
    for (std::size_t i = *first_contact; i < s.size(); ++i) {
      if (std::abs(s[i].contact_force - target) > 0.02 * target) last_out = s[i].t;
    }
    m.settling_time = last_out ? *last_out + trace.sample_interval - t0 : 0.0;
  } else if (trace.reference_period > 0.0) {
    std::optional<std::size_t> tracking;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].reference != 0.0) {
        tracking = i;
        break;
      }
    }
    if (tracking) {
      // Skip the first fifth of a period so the contact transient is excluded.
      const double from = s[*tracking].t + 0.2 * trace.reference_period;
      m.tracking_lag =
          tracking_lag(trace, from, std::numeric_limits<double>::infinity());
      if (m.tracking_lag) {
        double min_force = std::numeric_limits<double>::infinity();
        for (const auto& x : s) {
          if (x.t >= from && x.reference != 0.0) {
            min_force = std::min(min_force, x.contact_force);
          }
        }
        m.min_tracking_force = min_force;
      }
    }
  }
  return m;
}

struct EnvelopePoint {
  double torque = 0.0;  // N·m at the output
  double speed = 0.0;   // rad/s at the output
  std::string tag;
};

inline std::vector<EnvelopePoint> envelope_points(
    const std::vector<FmaTrace>& traces) {
  std::vector<EnvelopePoint> out;
  for (const auto& tr : traces) {
    for (const auto& s : tr.samples) {
      out.push_back({s.output_torque, s.qd, tr.tag});
    }
  }
  return out;
}

}  // namespace fmasim

#endif  // FMASIM_METRICS_HPP_
