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


// Reference trajectories and disturbance generators.

#ifndef FMASIM_REFERENCES_HPP_
#define FMASIM_REFERENCES_HPP_

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fmasim/random.hpp"
#include "fmasim/units.hpp"

namespace fmasim {

// Symmetric trapezoid: ramp up over the first quarter of the move, cruise
// for half, ramp down over the last quarter.
struct TrapezoidalProfile {
  double duration = 10.0;                               // s
  double peak_rate = 2.0 * std::numbers::pi / 10.0;     // rad/s

  static TrapezoidalProfile with_duration(double duration) {
    return {duration, 2.0 * std::numbers::pi / duration};
  }

  double ramp_time() const { return 0.25 * duration; }
  double total_travel() const { return 0.75 * duration * peak_rate; }

  // Outside [0, duration] the profile is at rest at its end points.
  double velocity(double t) const {
    if (t <= 0.0 || t >= duration) return 0.0;
    const double ramp = ramp_time();
    if (t <= ramp) return peak_rate * t / ramp;
    if (t < duration - ramp) return peak_rate;
    return peak_rate * (duration - t) / ramp;
  }

  double acceleration(double t) const {
    if (t <= 0.0 || t >= duration) return 0.0;
    const double ramp = ramp_time();
    if (t <= ramp) return peak_rate / ramp;
    if (t < duration - ramp) return 0.0;
    return -peak_rate / ramp;
  }

  double position(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= duration) return total_travel();
    const double ramp = ramp_time();
    if (t <= ramp) return 0.5 * peak_rate * t * t / ramp;
    if (t < duration - ramp) return peak_rate * (t - 0.5 * ramp);
    const double left = duration - t;
    return total_travel() - 0.5 * peak_rate * left * left / ramp;
  }
};

inline double trapezoidal_velocity(double t, double duration, double peak_rate) {
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be > 0");
  if (t < 0.0 || t > duration) {
    throw std::out_of_range("time outside the motion plan");
  }
  return TrapezoidalProfile{duration, peak_rate}.velocity(t);
}

// Rectified sine; the result is never positive (compressive reference).
inline double sinusoidal_force_reference(double time_in_contact,
                                         double amplitude, double period) {
  if (!(period > 0.0)) throw std::invalid_argument("period must be > 0");
  return -std::abs(amplitude) *
         std::abs(std::sin(2.0 * std::numbers::pi * time_in_contact / period));
}

inline constexpr double kPcbProfileEnd = 2.22;  // s

// Press-fit force profile for a PCB insertion, N. The t⁵ coefficient of the
// fourth segment is negative so that the profile meets the 28 N hold level.
inline double pcb_insertion_profile(double t) {
  if (t < 0.0 || t > kPcbProfileEnd) {
    throw std::out_of_range("insertion profile is defined on [0, 2.22] s");
  }
  if (t < 1.23) return 0.0;
  if (t < 1.485) {
    const double s = t - 1.23;
    return s * s * s * (5789.63 + s * (-21994.91 + s * 25041.65));
  }
  if (t < 1.68) {
    const double s = t - 1.485;
    return 30.0 + 200.0 * s +
           s * s * s * (15644.23 + s * (-147313.65 + s * 329844.99));
  }
  if (t < 1.86) {
    const double s = t - 1.68;
    return 65.0 + s * s * s * (-63443.07 + s * (528692.27 - s * 1174871.72));
  }
  return 28.0;
}

// Viscous burr contact: B(q) q_dot inside any band, zero elsewhere.
struct BurrBand {
  double lower = 0.0;        // rad, exclusive
  double upper = 0.0;        // rad, exclusive
  double coefficient = 0.0;  // N·m/(rad/s)
};

struct BurrDisturbance {
  std::vector<BurrBand> bands;
  double noise_stddev = 2.0;  // N·m

  // Bands at 1-2 and 3-4 with coefficients 5 and 25. `unit_scale` converts
  // the band edges to radians (1 for radians, pi/180 for degrees).
  static BurrDisturbance standard(double unit_scale) {
    return {{{1.0 * unit_scale, 2.0 * unit_scale, 5.0},
             {3.0 * unit_scale, 4.0 * unit_scale, 25.0}},
            2.0};
  }

  double coefficient(double q) const {
    for (const auto& b : bands) {
      if (q > b.lower && q < b.upper) return b.coefficient;
    }
    return 0.0;
  }

  double viscous_torque(double q, double qd) const {
    return coefficient(q) * qd;
  }
};

// External torque with one noise sample drawn from `noise` when given.
inline double burr_disturbance(const BurrDisturbance& d, double q, double qd,
                               GaussianNoise* noise) {
  return d.viscous_torque(q, qd) + (noise ? (*noise)() : 0.0);
}

}  // namespace fmasim

#endif  // FMASIM_REFERENCES_HPP_
