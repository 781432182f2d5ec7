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


// Built-in models: the six-joint PowerCube arm, small planar chains, the
// dual actuator test case and two contact surfaces.
//
// The PowerCube link masses, COM positions and the tool offset are not
// published with the arm; the values here are assembled from the module
// catalogue inertias with each COM at the geometric centre of its module
// stack. They are adequate for exercising the algorithms, not for
// identification work.

#ifndef FMASIM_FIXTURES_HPP_
#define FMASIM_FIXTURES_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fmasim/fma.hpp"
#include "fmasim/force_control.hpp"
#include "fmasim/kinematics.hpp"
#include "fmasim/units.hpp"

namespace fmasim::fixtures {

namespace detail {

inline Matrix3 Diag(double x, double y, double z) {
  return Vector3(x, y, z).asDiagonal();
}

// Module inertias about their own centres, kg·m².
inline Matrix3 Pr110() { return Diag(0.03080969, 0.016473629, 0.016473629); }
inline Matrix3 Pr090() { return Diag(0.014914532, 0.009269184, 0.009269184); }
inline Matrix3 Pw090() { return Diag(0.016535598, 0.011403202, 0.013613901); }
inline Matrix3 Link90x95() { return Diag(0.000856721, 0.000993569, 0.000993569); }
inline Matrix3 Link90x40() { return Diag(0.000498446, 0.000343699, 0.000343699); }
inline Matrix3 AngleLink110() {
  Matrix3 m;
  m << 0.002526201, 0.000000935, 0.000003727,  //
      0.000000935, 0.002389596, 0.000695662,   //
      0.000003727, 0.000695662, 0.001711138;
  return m;
}

inline Isometry3 Offset(const Vector3& p) {
  Isometry3 t = Isometry3::Identity();
  t.translate(p);
  return t;
}

}  // namespace detail

inline constexpr double kPowerCubeUpperArm = 0.265;  // m
inline constexpr double kPowerCubeForearm = 0.4125;  // m
inline constexpr double kPowerCubeTool = 0.15;       // m, flange to tool tip

inline SerialChainModel powercube6() {
  using units::deg_to_rad;
  SerialChainModel m;
  m.name = "powercube6";
  m.dh = {
      {0.0, 0.0, 0.0, 0.0},
      {deg_to_rad(90.0), 0.0, 0.0, deg_to_rad(-90.0)},
      {0.0, kPowerCubeUpperArm, 0.0, deg_to_rad(90.0)},
      {deg_to_rad(-90.0), 0.0, kPowerCubeForearm, 0.0},
      {deg_to_rad(90.0), 0.0, 0.0, 0.0},
      {deg_to_rad(90.0), 0.0, 0.0, 0.0},
  };
  m.links = {
      {8.0, Vector3::Zero(), detail::Pr110()},
      {9.0, Vector3(0.5 * kPowerCubeUpperArm, 0.0, 0.0),
       detail::Pr110() + detail::AngleLink110()},
      {7.0, Vector3(0.0, 0.5 * kPowerCubeForearm, 0.0),
       detail::Pr090() + detail::Link90x95()},
      {4.5, Vector3::Zero(), detail::Pr090()},
      {3.5, Vector3::Zero(), detail::Pw090()},
      {1.5, Vector3(0.0, 0.0, 0.5 * kPowerCubeTool), detail::Link90x40()},
  };
  m.tool = detail::Offset(Vector3(0.0, 0.0, kPowerCubeTool));
  return m;
}

// Planar chain in the base x-y plane with joint axes along z. Each link is a
// uniform-ish body: mass at mid length and a small rotational inertia.
inline SerialChainModel planar_chain(const std::vector<double>& lengths,
                                     const std::vector<double>& masses = {}) {
  SerialChainModel m;
  m.name = "planar" + std::to_string(lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const double a_prev = i == 0 ? 0.0 : lengths[i - 1];
    m.dh.push_back({0.0, a_prev, 0.0, 0.0});
    const double mass = i < masses.size() ? masses[i] : 1.0;
    const double l = lengths[i];
    const double inertia = mass * l * l / 12.0;
    m.links.push_back({mass, Vector3(0.5 * l, 0.0, 0.0),
                       detail::Diag(1e-3 * inertia, inertia, inertia)});
  }
  m.tool = detail::Offset(Vector3(lengths.back(), 0.0, 0.0));
  return m;
}

// One revolute link carrying point masses at the given radii along x.
inline SerialChainModel point_mass_pendulum(
    const std::vector<std::pair<double, double>>& mass_and_radius) {
  double mass = 0.0;
  double moment = 0.0;
  double second = 0.0;
  double reach = 0.0;
  for (const auto& [mi, ri] : mass_and_radius) {
    mass += mi;
    moment += mi * ri;
    second += mi * ri * ri;
    reach = std::max(reach, ri);
  }
  const double com = moment / mass;
  const double about_com = second - mass * com * com;
  SerialChainModel m;
  m.name = "pendulum";
  m.dh = {{0.0, 0.0, 0.0, 0.0}};
  m.links = {{mass, Vector3(com, 0.0, 0.0),
              detail::Diag(0.0, about_com, about_com)}};
  m.tool = detail::Offset(Vector3(reach, 0.0, 0.0));
  return m;
}

inline std::optional<SerialChainModel> chain_by_name(std::string_view name) {
  if (name == "powercube6") return powercube6();
  if (name == "planar1") return planar_chain({1.0});
  if (name == "planar2") return planar_chain({1.0, 1.0});
  if (name == "planar3") return planar_chain({1.0, 0.8, 0.5}, {3.0, 2.0, 1.0});
  return std::nullopt;
}

inline std::vector<std::string> chain_names() {
  return {"powercube6", "planar1", "planar2", "planar3"};
}

// Gear train, prime movers and output link of the desk-scale dual actuator.
inline DualActuatorModel fma_paper() {
  DualActuatorModel m;
  m.geometry = {1.0, 2.3, 1.0, 4.3, 1.0 / 150.0};
  m.motion = PrimeMoverParams::from_datasheet(5.4e-6, 2.3e-7, 0.039, 0.04, 2.23);
  m.force = PrimeMoverParams::from_datasheet(8.9e-5, 3.1e-5, 0.36, 0.36, 2.23);
  m.as_built = {13.0, 0.40, 4.9};
  m.as_designed = {10.0, 0.40, 5.0};
  m.friction = FrictionModel::kStribeck;
  m.gravity = units::kStandardGravity;
  return m;
}

// Spring scale surface, 25 lbf/in, behind a 100 000 lbf/in sensor.
inline ContactSurface compliant_scale() {
  ContactSurface s;
  s.environment_stiffness = units::lbf_per_inch_to_si(25.0);
  s.sensor_stiffness = units::lbf_per_inch_to_si(100e3);
  s.tool_stiffness = kInfiniteStiffness;
  return s;
}

// Rubber-lined cork pad. Its stiffness was not measured; 500 lbf/in is a
// representative value for that construction.
inline ContactSurface stiff_pad() {
  ContactSurface s = compliant_scale();
  s.environment_stiffness = units::lbf_per_inch_to_si(500.0);
  return s;
}

inline std::optional<ContactSurface> surface_by_name(std::string_view name) {
  if (name == "compliant-scale") return compliant_scale();
  if (name == "stiff-pad") return stiff_pad();
  return std::nullopt;
}

}  // namespace fmasim::fixtures

#endif  // FMASIM_FIXTURES_HPP_
