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

// Unit conversion. Everything inside the library is SI; the helpers here are
// used at the I/O boundary (scenario files, CLI) where quantities arrive in
// lbf, inches, millimetres, degrees or RPM.

#ifndef FMASIM_UNITS_HPP_
#define FMASIM_UNITS_HPP_

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace fmasim::units {

inline constexpr double kNewtonsPerPoundForce = 4.4482216;
inline constexpr double kMetresPerInch = 0.0254;
inline constexpr double kMetresPerMillimetre = 1e-3;
inline constexpr double kRadiansPerDegree = std::numbers::pi / 180.0;
inline constexpr double kRadPerSecPerRpm = std::numbers::pi / 30.0;
inline constexpr double kStandardGravity = 9.81;

constexpr double lbf_to_newton(double lbf) { return lbf * kNewtonsPerPoundForce; }
constexpr double newton_to_lbf(double n) { return n / kNewtonsPerPoundForce; }
constexpr double inch_to_metre(double in) { return in * kMetresPerInch; }
constexpr double mm_to_metre(double mm) { return mm * kMetresPerMillimetre; }
constexpr double deg_to_rad(double deg) { return deg * kRadiansPerDegree; }
constexpr double rad_to_deg(double rad) { return rad / kRadiansPerDegree; }

// lbf/in -> N/m.
constexpr double lbf_per_inch_to_si(double k) {
  return k * kNewtonsPerPoundForce / kMetresPerInch;
}

// N·m per RPM -> N·m per rad/s.
constexpr double per_rpm_to_per_rad_s(double b) { return b / kRadPerSecPerRpm; }

// Dimension exponents over the base quantities (m, kg, s, A). Radians are
// dimensionless and carry no exponent.
struct Dimension {
  std::array<int, 4> exp{0, 0, 0, 0};

  constexpr bool operator==(const Dimension&) const = default;
  constexpr Dimension operator*(const Dimension& o) const {
    Dimension d;
    for (std::size_t i = 0; i < 4; ++i) d.exp[i] = exp[i] + o.exp[i];
    return d;
  }
  constexpr Dimension pow(int n) const {
    Dimension d;
    for (std::size_t i = 0; i < 4; ++i) d.exp[i] = exp[i] * n;
    return d;
  }
};

namespace dim {
inline constexpr Dimension kNone{};
inline constexpr Dimension kLength{{1, 0, 0, 0}};
inline constexpr Dimension kMass{{0, 1, 0, 0}};
inline constexpr Dimension kTime{{0, 0, 1, 0}};
inline constexpr Dimension kCurrent{{0, 0, 0, 1}};
inline constexpr Dimension kForce{{1, 1, -2, 0}};
inline constexpr Dimension kTorque{{2, 1, -2, 0}};
inline constexpr Dimension kVelocity{{1, 0, -1, 0}};
inline constexpr Dimension kAngularRate{{0, 0, -1, 0}};
inline constexpr Dimension kAngularAccel{{0, 0, -2, 0}};
inline constexpr Dimension kStiffness{{0, 1, -2, 0}};      // N/m
inline constexpr Dimension kCompliance{{0, -1, 2, 0}};     // m/N
inline constexpr Dimension kInertia{{2, 1, 0, 0}};         // kg·m²
inline constexpr Dimension kAcceleration{{1, 0, -2, 0}};
}  // namespace dim

// A value converted to SI together with the dimension of its unit string.
struct Quantity {
  double si = 0.0;
  Dimension dimension;
};

namespace detail {

struct Atom {
  std::string_view name;
  double scale;
  Dimension dimension;
};

inline constexpr Atom kAtoms[] = {
    {"m", 1.0, dim::kLength},
    {"mm", 1e-3, dim::kLength},
    {"cm", 1e-2, dim::kLength},
    {"in", kMetresPerInch, dim::kLength},
    {"kg", 1.0, dim::kMass},
    {"g", 1e-3, dim::kMass},
    {"s", 1.0, dim::kTime},
    {"ms", 1e-3, dim::kTime},
    {"min", 60.0, dim::kTime},
    {"Hz", 1.0, dim::kTime.pow(-1)},
    {"A", 1.0, dim::kCurrent},
    {"N", 1.0, dim::kForce},
    {"lbf", kNewtonsPerPoundForce, dim::kForce},
    {"V", 1.0, Dimension{{2, 1, -3, -1}}},
    {"ohm", 1.0, Dimension{{2, 1, -3, -2}}},
    {"rad", 1.0, dim::kNone},
    {"deg", kRadiansPerDegree, dim::kNone},
    {"rev", 2.0 * std::numbers::pi, dim::kNone},
    {"rpm", kRadPerSecPerRpm, dim::kTime.pow(-1)},
    {"1", 1.0, dim::kNone},
};

inline std::optional<Atom> FindAtom(std::string_view name) {
  for (const auto& a : kAtoms) {
    if (a.name == name) return a;
  }
  return std::nullopt;
}

}  // namespace detail

// Parses a unit expression such as "N*m", "mm/lbf", "m/s^2", "N*m/rpm" or
// "kg*m^2". Factors are separated by '*' or '/'; every factor after a '/'
// is in the denominator. Parentheses are not supported. Returns nullopt for
// unknown atoms or malformed exponents.
inline std::optional<Quantity> parse_unit(std::string_view text) {
  Quantity q{1.0, dim::kNone};
  if (text.empty()) return q;
  int sign = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of("*/", pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view factor = text.substr(pos, end - pos);
    if (factor.empty()) return std::nullopt;
    int power = 1;
    if (auto caret = factor.find('^'); caret != std::string_view::npos) {
      std::string_view p = factor.substr(caret + 1);
      factor = factor.substr(0, caret);
      if (p.empty()) return std::nullopt;
      bool neg = p.front() == '-';
      if (neg) p.remove_prefix(1);
      if (p.empty()) return std::nullopt;
      power = 0;
      for (char c : p) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        power = power * 10 + (c - '0');
      }
      if (neg) power = -power;
    }
    auto atom = detail::FindAtom(factor);
    if (!atom) return std::nullopt;
    q.si *= std::pow(atom->scale, sign * power);
    q.dimension = q.dimension * atom->dimension.pow(sign * power);
    if (end == text.size()) break;
    if (text[end] == '/') sign = -1;
    pos = end + 1;
  }
  return q;
}

}  // namespace fmasim::units

#endif  // FMASIM_UNITS_HPP_
