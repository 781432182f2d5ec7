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

#include <algorithm>
#include <sstream>

#include "fmasim/config.hpp"
#include "fmasim/io.hpp"
#include "fmasim/metrics.hpp"
#include "fmasim/simulation.hpp"

namespace fmasim {
namespace {

FmaScenario QuietScenario() {
  FmaScenario sc;
  sc.model.as_built = sc.model.as_designed;
  sc.disturbance = {};
  sc.noise = false;
  sc.reference.peak_rate = 0.0;
  sc.duration = 2.0;
  return sc;
}

FmaScenario DeburrScenario() {
  return std::get<FmaScenario>(parse_scenario(*builtin_scenario_text("fma-paper-deburr")));
}

ForceControlScenario ContactScenario(const std::string& name) {
  return std::get<ForceControlScenario>(parse_scenario(*builtin_scenario_text(name)));
}

TEST(FmaRun, EquilibriumHoldWithoutFriction) {
  FmaScenario sc = QuietScenario();
  sc.model.friction = FrictionModel::kNone;
  const FmaTrace t = run_fma_scenario(sc);
  ASSERT_EQ(t.samples.size(), 2001u);
  for (const auto& s : t.samples) EXPECT_LT(std::abs(s.qd), 1e-9);
}

// The Coulomb step is compensated from the rate sampled at the start of each
// tick. Whenever the rate crosses zero inside a tick the plant and the
// controller disagree on its sign, which ratchets the output slowly forward.
// The drift stays far below the tracking tolerances.
TEST(FmaRun, EquilibriumHoldWithFriction) {
  const FmaTrace t = run_fma_scenario(QuietScenario());
  for (const auto& s : t.samples) {
    EXPECT_LT(std::abs(s.q), 2e-4);
    EXPECT_LT(std::abs(s.qd), 2e-4);
  }
}

TEST(FmaRun, TracksTrapezoidAndHoldsAtEnd) {
  const FmaScenario sc = DeburrScenario();
  const FmaTrace t = run_fma_scenario(sc);
  const Metrics m = compute_metrics(t);
  EXPECT_NEAR(*m.final_position, 1.5 * std::numbers::pi, 0.01);
  EXPECT_GT(*m.final_voltage_norm, 0.0);
  EXPECT_NEAR(m.pvke->first + m.pvke->second, 100.0, 1e-9);
  EXPECT_GT(*m.max_position_error_inside, *m.max_position_error_outside);
  const bool any_burr = std::any_of(t.samples.begin(), t.samples.end(),
                                    [](const FmaSample& s) { return s.in_burr; });
  EXPECT_TRUE(any_burr);
}

TEST(FmaRun, HeavyForceWeightWhileQuiet) {
  FmaScenario sc = DeburrScenario();
  sc.noise = false;
  const FmaTrace t = run_fma_scenario(sc);
  for (const auto& s : t.samples) {
    if (std::abs(s.tau_ext) < 4.0) EXPECT_DOUBLE_EQ(s.force_weight, 164.5);
    else EXPECT_DOUBLE_EQ(s.force_weight, 16.45);
  }
}

TEST(FmaRun, BitIdenticalAcrossRuns) {
  const FmaScenario sc = DeburrScenario();
  std::ostringstream a, b;
  io::write_trace_csv(a, run_fma_scenario(sc));
  io::write_trace_csv(b, run_fma_scenario(sc));
  EXPECT_EQ(a.str(), b.str());
  FmaScenario other = sc;
  other.seed = 2;
  std::ostringstream c;
  io::write_trace_csv(c, run_fma_scenario(other));
  EXPECT_NE(a.str(), c.str());
}

TEST(FmaRun, RejectsBadScenario) {
  FmaScenario sc = QuietScenario();
  sc.control_period = 0.0;
  EXPECT_ANY_THROW(run_fma_scenario(sc));
}

TEST(Metrics, SingleMoverPartition) {
  FmaTrace t;
  t.rotor_inertia = Vector2(1.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    FmaSample s;
    s.t = i;
    s.motor_velocity = Vector2(1.0 + i, 0.0);
    t.samples.push_back(s);
  }
  const auto [motion, force] = partition_of_kinetic_energy(t);
  EXPECT_DOUBLE_EQ(motion, 100.0);
  EXPECT_DOUBLE_EQ(force, 0.0);
  for (auto& s : t.samples) s.motor_velocity.setZero();
  EXPECT_THROW(partition_of_kinetic_energy(t), std::domain_error);
}

TEST(Metrics, DisturbanceWindowsIncludeMargin) {
  FmaTrace t;
  t.sample_interval = 0.1;
  for (int i = 0; i < 20; ++i) {
    FmaSample s;
    s.t = 0.1 * i;
    s.in_burr = i == 5;
    t.samples.push_back(s);
  }
  const auto w = disturbance_windows(t, 0.5);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(w[static_cast<std::size_t>(i)], i >= 5 && i <= 10) << i;
}

TEST(Envelope, StationaryTraceSitsNearOrigin) {
  FmaScenario sc = QuietScenario();
  sc.model.gravity = 0.0;
  sc.model.friction = FrictionModel::kNone;
  const auto pts = envelope_points({run_fma_scenario(sc)});
  for (const auto& p : pts) {
    EXPECT_NEAR(p.speed, 0.0, 1e-9);
    EXPECT_NEAR(p.torque, 0.0, 1e-9);
  }
}

TEST(Envelope, SweepGrowsWithRange) {
  FmaScenario sc = DeburrScenario();
  sc.disturbance = {};
  sc.noise = false;
  std::vector<FmaTrace> traces;
  std::vector<double> peaks;
  for (double k : {0.5, 1.0, 2.0}) {
    FmaScenario s = sc;
    s.reference.peak_rate *= k;
    s.name = "k" + std::to_string(k);
    traces.push_back(run_fma_scenario(s));
    double top = 0.0;
    for (const auto& p : envelope_points({traces.back()})) top = std::max(top, std::abs(p.speed));
    peaks.push_back(top);
  }
  EXPECT_LT(peaks[0], peaks[1]);
  EXPECT_LT(peaks[1], peaks[2]);
  EXPECT_NEAR(peaks[1], sc.reference.peak_rate, 0.02 * sc.reference.peak_rate);
  const auto pooled = envelope_points(traces);
  EXPECT_EQ(pooled.size(), 3 * traces[0].samples.size());
  EXPECT_EQ(pooled.front().tag, traces[0].tag);
  EXPECT_EQ(pooled.back().tag, traces[2].tag);
}

TEST(ForceRun, FreeSpaceMotionHasNoForce) {
  ForceControlScenario sc = ContactScenario("force-regulation-pid");
  sc.initial_gap = 1.0;
  sc.duration = 5.0;
  const ForceTrace t = run_force_control_scenario(sc);
  for (const auto& s : t.samples) {
    EXPECT_EQ(s.contact_force, 0.0);
    EXPECT_EQ(s.phase, ContactPhase::kApproach);
  }
  EXPECT_LT(t.samples.back().tip_height, t.samples.front().tip_height);
  EXPECT_FALSE(compute_metrics(t).contact_time.has_value());
}

TEST(ForceRun, RegulationReachesTarget) {
  const ForceTrace t = run_force_control_scenario(ContactScenario("force-regulation-pid"));
  const Metrics m = compute_metrics(t);
  ASSERT_TRUE(m.contact_time.has_value());
  EXPECT_LT(*m.steady_state_error, 0.02 * std::abs(*t.target));
  EXPECT_GT(*m.impulse, 0.0);
  EXPECT_TRUE(std::any_of(t.samples.begin(), t.samples.end(), [](const ForceSample& s) {
    return s.phase == ContactPhase::kConstrainedContact;
  }));
}

TEST(ForceRun, DepartureReleasesContact) {
  ForceControlScenario sc = ContactScenario("force-regulation-pid");
  sc.task_complete = 60.0;
  sc.duration = 90.0;
  const ForceTrace t = run_force_control_scenario(sc);
  std::vector<ContactPhase> order;
  for (const auto& s : t.samples) {
    if (order.empty() || order.back() != s.phase) order.push_back(s.phase);
  }
  const std::vector<ContactPhase> expected = {
      ContactPhase::kApproach, ContactPhase::kTransition, ContactPhase::kConstrainedContact,
      ContactPhase::kDeparture, ContactPhase::kApproach};
  EXPECT_EQ(order, expected);
  EXPECT_EQ(t.samples.back().contact_force, 0.0);
}

TEST(ForceRun, BitIdenticalWithNoise) {
  ForceControlScenario sc = ContactScenario("force-regulation-pid");
  sc.sensor_noise = 0.3;
  sc.duration = 20.0;
  std::ostringstream a, b;
  io::write_trace_csv(a, run_force_control_scenario(sc));
  io::write_trace_csv(b, run_force_control_scenario(sc));
  EXPECT_EQ(a.str(), b.str());
}

TEST(ForceRun, RejectsWrongArm) {
  ForceControlScenario sc = ContactScenario("force-regulation-pid");
  sc.chain = fixtures::planar_chain({1.0, 1.0});
  sc.initial_joints = VectorX::Zero(2);
  EXPECT_THROW(run_force_control_scenario(sc), DimensionError);
}

TEST(TrackingLag, WindowedMatchesSyntheticShift) {
  ForceTrace t;
  t.sample_interval = 0.04;
  t.reference_period = 50.0;
  const double shift = 2.0;
  for (int i = 0; i < 5000; ++i) {
    ForceSample s;
    s.t = i * t.sample_interval;
    s.reference = sinusoidal_force_reference(s.t, -10.0, 50.0) - 1.0;
    s.contact_force = -(sinusoidal_force_reference(s.t - shift, -10.0, 50.0) - 1.0);
    t.samples.push_back(s);
  }
  EXPECT_NEAR(*tracking_lag(t, 10.0, 100.0), 100.0 * shift / 50.0, 0.1);
  EXPECT_NEAR(*tracking_lag(t, 100.0, 200.0), 100.0 * shift / 50.0, 0.1);
  EXPECT_FALSE(tracking_lag(t, 500.0, 600.0).has_value());
}

}  // namespace
}  // namespace fmasim
