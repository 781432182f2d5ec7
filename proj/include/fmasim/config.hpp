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


// Scenario files.
//
// A scenario is an INI-style document with the sections [plant],
// [controller], [reference], [disturbance] and [run]. Physical quantities
// carry a unit after the number ("0.4 m", "25 lbf/in", "900 1/s^2") and are
// converted to SI on load; the unit's dimension is checked. Unknown
// sections and keys are rejected with the offending line. serialize_scenario
// writes every parameter in SI so that parse -> serialize -> parse is exact.

#ifndef FMASIM_CONFIG_HPP_
#define FMASIM_CONFIG_HPP_

#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "fmasim/errors.hpp"
#include "fmasim/fixtures.hpp"
#include "fmasim/random.hpp"
#include "fmasim/simulation.hpp"
#include "fmasim/units.hpp"

namespace fmasim {

struct IniValue {
  std::string text;
  std::size_t line = 0;
};

class IniDocument {
 public:
  static constexpr std::string_view kSections[] = {
      "plant", "controller", "reference", "disturbance", "run"};

  static IniDocument parse(std::string_view text) {
    IniDocument doc;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (auto c = line.find_first_of("#;"); c != std::string_view::npos) {
        line = line.substr(0, c);
      }
      line = Trim(line);
      if (line.empty()) {
        if (end == text.size()) break;
        continue;
      }
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
        section = std::string(Trim(line.substr(1, line.size() - 2)));
        bool known = false;
        for (auto s : kSections) known = known || s == section;
        if (!known) throw ConfigError("unknown section [" + section + "]", line_no);
        if (!doc.seen_sections_.insert(section).second) {
          throw ConfigError("duplicate section [" + section + "]", line_no);
        }
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("expected 'key = value'", line_no);
      }
      const std::string key(Trim(line.substr(0, eq)));
      const std::string value(Trim(line.substr(eq + 1)));
      if (key.empty()) throw ConfigError("empty key", line_no);
      if (section.empty()) throw ConfigError("key outside any section", line_no, key);
      auto& entries = doc.values_[section];
      if (entries.count(key)) throw ConfigError("duplicate key", line_no, key);
      entries[key] = {value, line_no};
      if (end == text.size()) break;
    }
    return doc;
  }

  const std::map<std::string, IniValue>* section(const std::string& name) const {
    auto it = values_.find(name);
    return it == values_.end() ? nullptr : &it->second;
  }

  static std::string_view Trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
      s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
      s.remove_suffix(1);
    }
    return s;
  }

 private:
  std::map<std::string, std::map<std::string, IniValue>> values_;
  std::set<std::string> seen_sections_;
};

namespace detail {

inline std::optional<double> ParseNumber(std::string_view s) {
  double v = 0.0;
  if (s.starts_with('+')) s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::vector<std::string_view> SplitWords(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Shortest text that reads back to the same double.
inline std::string FormatNumber(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Reads the keys of one section and remembers which were consumed.
class SectionReader {
 public:
  SectionReader(const IniDocument& doc, std::string name)
      : name_(std::move(name)), values_(doc.section(name_)) {}

  bool has(const std::string& key) const {
    return values_ && values_->count(key);
  }

  const IniValue& raw(const std::string& key) {
    if (!has(key)) {
      throw ConfigError("missing required key in [" + name_ + "]", 0, key);
    }
    used_.insert(key);
    return values_->at(key);
  }

  std::string word(const std::string& key) { return raw(key).text; }

  std::string word(const std::string& key, const std::string& fallback) {
    return has(key) ? word(key) : fallback;
  }

  // Numbers followed by one unit; returns SI values.
  std::vector<double> quantities(const std::string& key,
                                 const units::Dimension& expected) {
    const IniValue& v = raw(key);
    auto words = SplitWords(v.text);
    if (words.empty()) throw ConfigError("empty value", v.line, key);
    double scale = 1.0;
    const bool dimensionless = expected == units::dim::kNone;
    if (!ParseNumber(words.back())) {
      const auto unit = units::parse_unit(words.back());
      if (!unit) {
        throw ConfigError("unknown unit '" + std::string(words.back()) + "'",
                          v.line, key);
      }
      if (!(unit->dimension == expected)) {
        throw ConfigError("unit '" + std::string(words.back()) +
                              "' has the wrong dimension",
                          v.line, key);
      }
      scale = unit->si;
      words.pop_back();
    } else if (!dimensionless) {
      throw ConfigError("missing unit", v.line, key);
    }
    if (words.empty()) throw ConfigError("missing number", v.line, key);
    std::vector<double> out;
    for (auto w : words) {
      auto n = ParseNumber(w);
      if (!n) {
        throw ConfigError("not a number: '" + std::string(w) + "'", v.line, key);
      }
      out.push_back(*n * scale);
    }
    return out;
  }

  double quantity(const std::string& key, const units::Dimension& expected) {
    const auto values = quantities(key, expected);
    if (values.size() != 1) {
      throw ConfigError("expected a single value", raw(key).line, key);
    }
    return values.front();
  }

  double quantity(const std::string& key, const units::Dimension& expected,
                  double fallback) {
    return has(key) ? quantity(key, expected) : fallback;
  }

  std::uint64_t integer(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const IniValue& v = raw(key);
    std::uint64_t out = 0;
    const auto [ptr, ec] =
        std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    if (ec != std::errc() || ptr != v.text.data() + v.text.size()) {
      throw ConfigError("expected a non-negative integer", v.line, key);
    }
    return out;
  }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const IniValue& v = raw(key);
    if (v.text == "on" || v.text == "true" || v.text == "yes") return true;
    if (v.text == "off" || v.text == "false" || v.text == "no") return false;
    throw ConfigError("expected on/off", v.line, key);
  }

  std::size_t line(const std::string& key) const {
    return has(key) ? values_->at(key).line : 0;
  }

  void reject_unknown() const {
    if (!values_) return;
    for (const auto& [key, value] : *values_) {
      if (!used_.count(key)) {
        throw ConfigError("unknown key in [" + name_ + "]", value.line, key);
      }
    }
  }

 private:
  std::string name_;
  const std::map<std::string, IniValue>* values_;
  std::set<std::string> used_;
};

namespace dims {
using units::Dimension;
namespace d = units::dim;
inline constexpr Dimension kTorqueSeconds = d::kTorque * d::kTime;   // N·m·s
inline constexpr Dimension kTorquePerAmp = d::kTorque * d::kCurrent.pow(-1);
inline constexpr Dimension kVoltSeconds{{2, 1, -2, -1}};
inline constexpr Dimension kOhm{{2, 1, -3, -2}};
inline constexpr Dimension kPerSecond = d::kTime.pow(-1);
inline constexpr Dimension kPerSecondSquared = d::kTime.pow(-2);
inline constexpr Dimension kForceRate = d::kForce * d::kTime.pow(-1);
inline constexpr Dimension kViscous = d::kForce * d::kVelocity.pow(-1);
// Force-control gains.
inline constexpr Dimension kRatePerForce = d::kVelocity * d::kForce.pow(-1);
inline constexpr Dimension kRatePerImpulse =
    d::kVelocity * d::kForce.pow(-1) * d::kTime.pow(-1);
}  // namespace dims

inline void ExpectWord(const std::string& got, std::string_view want,
                       std::size_t line, const std::string& key) {
  if (got != want) {
    throw ConfigError("expected '" + std::string(want) + "'", line, key);
  }
}

inline PrimeMoverParams ReadPrimeMover(SectionReader& r, const std::string& p,
                                       const PrimeMoverParams& base) {
  using units::dim::kInertia;
  PrimeMoverParams m = base;
  m.rotor_inertia = r.quantity(p + "_rotor_inertia", kInertia, m.rotor_inertia);
  m.damping = r.quantity(p + "_damping", dims::kTorqueSeconds, m.damping);
  m.torque_constant =
      r.quantity(p + "_torque_constant", dims::kTorquePerAmp, m.torque_constant);
  m.back_emf_constant =
      r.quantity(p + "_back_emf_constant", dims::kVoltSeconds, m.back_emf_constant);
  m.armature_resistance =
      r.quantity(p + "_armature_resistance", dims::kOhm, m.armature_resistance);
  return m;
}

inline FmaScenario ReadFma(const IniDocument& doc, SectionReader& plant) {
  namespace d = units::dim;
  FmaScenario sc;
  if (plant.has("fixture")) {
    ExpectWord(plant.word("fixture"), "fma-paper", plant.line("fixture"), "fixture");
  }
  DualActuatorModel& m = sc.model;
  m.geometry.r9 = plant.quantity("r9", d::kNone, m.geometry.r9);
  m.geometry.r10 = plant.quantity("r10", d::kNone, m.geometry.r10);
  m.geometry.r11 = plant.quantity("r11", d::kNone, m.geometry.r11);
  m.geometry.r12 = plant.quantity("r12", d::kNone, m.geometry.r12);
  m.geometry.hypocyclic_ratio =
      plant.quantity("hypocyclic_ratio", d::kNone, m.geometry.hypocyclic_ratio);
  m.motion = ReadPrimeMover(plant, "motion", m.motion);
  m.force = ReadPrimeMover(plant, "force", m.force);
  m.as_built.link_mass = plant.quantity("link_mass", d::kMass, m.as_built.link_mass);
  m.as_built.tool_mass = plant.quantity("tool_mass", d::kMass, m.as_built.tool_mass);
  m.as_built.length = plant.quantity("link_length", d::kLength, m.as_built.length);
  m.as_designed.link_mass =
      plant.quantity("designed_link_mass", d::kMass, m.as_designed.link_mass);
  m.as_designed.tool_mass =
      plant.quantity("designed_tool_mass", d::kMass, m.as_designed.tool_mass);
  m.as_designed.length =
      plant.quantity("designed_link_length", d::kLength, m.as_designed.length);
  m.gravity = plant.quantity("gravity", d::kAcceleration, m.gravity);
  const std::string friction = plant.word("friction", "stribeck");
  if (friction == "stribeck") {
    m.friction = FrictionModel::kStribeck;
  } else if (friction == "none") {
    m.friction = FrictionModel::kNone;
  } else {
    throw ConfigError("expected 'stribeck' or 'none'", plant.line("friction"),
                      "friction");
  }
  plant.reject_unknown();

  SectionReader ctl(doc, "controller");
  if (ctl.has("law")) ExpectWord(ctl.word("law"), "computed-torque", ctl.line("law"), "law");
  sc.gains.kp = ctl.quantity("kp", dims::kPerSecondSquared, sc.gains.kp);
  sc.gains.kv = ctl.quantity("kv", dims::kPerSecond, sc.gains.kv);
  const double quiet = ctl.quantity("weight_quiet", d::kNone, sc.weighting.quiet(1, 1));
  const double disturbed =
      ctl.quantity("weight_disturbed", d::kNone, sc.weighting.disturbed(1, 1));
  sc.weighting.quiet = Vector2(1.0, quiet).asDiagonal();
  sc.weighting.disturbed = Vector2(1.0, disturbed).asDiagonal();
  sc.weighting.threshold =
      ctl.quantity("weight_threshold", d::kTorque, sc.weighting.threshold);
  sc.control_period = ctl.quantity("control_period", d::kTime, sc.control_period);
  sc.substeps = static_cast<int>(ctl.integer("substeps", 1));
  ctl.reject_unknown();

  SectionReader ref(doc, "reference");
  if (ref.has("profile")) {
    ExpectWord(ref.word("profile"), "trapezoidal", ref.line("profile"), "profile");
  }
  sc.reference.duration = ref.quantity("duration", d::kTime, sc.reference.duration);
  sc.reference.peak_rate = ref.quantity("peak_rate", d::kAngularRate,
                                        2.0 * std::numbers::pi / sc.reference.duration);
  ref.reject_unknown();

  SectionReader dist(doc, "disturbance");
  const std::string model = dist.word("model", "burr");
  if (model == "none") {
    sc.disturbance.bands.clear();
  } else if (model != "burr") {
    throw ConfigError("expected 'burr' or 'none'", dist.line("model"), "model");
  }
  if (model == "burr") {
    double scale = 1.0;
    const std::string unit = dist.word("band_unit", "rad");
    if (unit == "deg") {
      scale = units::kRadiansPerDegree;
    } else if (unit != "rad") {
      throw ConfigError("expected 'rad' or 'deg'", dist.line("band_unit"), "band_unit");
    }
    if (dist.has("bands")) {
      const IniValue& v = dist.raw("bands");
      sc.disturbance.bands.clear();
      std::string_view rest = v.text;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto words = SplitWords(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (words.empty()) continue;
        if (words.size() != 3) {
          throw ConfigError("each band is 'lower upper coefficient'", v.line, "bands");
        }
        std::array<double, 3> n{};
        for (std::size_t i = 0; i < 3; ++i) {
          auto x = ParseNumber(words[i]);
          if (!x) throw ConfigError("not a number", v.line, "bands");
          n[i] = *x;
        }
        sc.disturbance.bands.push_back({n[0] * scale, n[1] * scale, n[2]});
      }
    } else {
      sc.disturbance.bands = BurrDisturbance::standard(scale).bands;
    }
  } else if (dist.has("band_unit")) {
    dist.word("band_unit");
  }
  sc.noise = dist.flag("noise", true);
  sc.disturbance.noise_stddev =
      dist.quantity("noise_stddev", d::kTorque, sc.disturbance.noise_stddev);
  if (dist.has("rng")) {
    ExpectWord(dist.word("rng"), GaussianNoise::kAlgorithm, dist.line("rng"), "rng");
  }
  dist.reject_unknown();

  SectionReader run(doc, "run");
  sc.duration = run.quantity("duration", d::kTime, sc.reference.duration);
  sc.seed = run.integer("seed", sc.seed);
  sc.initial_position = run.quantity("initial_position", d::kNone, 0.0);
  sc.initial_velocity = run.quantity("initial_velocity", d::kAngularRate, 0.0);
  sc.name = run.word("name", sc.name);
  run.reject_unknown();
  return sc;
}

inline ForceControlScenario ReadContact(const IniDocument& doc,
                                        SectionReader& plant) {
  namespace d = units::dim;
  ForceControlScenario sc;
  const std::string chain = plant.word("chain", "powercube6");
  auto model = fixtures::chain_by_name(chain);
  if (!model) throw ConfigError("unknown chain fixture", plant.line("chain"), "chain");
  sc.chain = *model;
  if (plant.has("initial_joints")) {
    const auto j = plant.quantities("initial_joints", d::kNone);
    if (j.size() != sc.chain.dof()) {
      throw ConfigError("wrong number of joint values", plant.line("initial_joints"),
                        "initial_joints");
    }
    sc.initial_joints = Eigen::Map<const VectorX>(j.data(), static_cast<Eigen::Index>(j.size()));
  }
  const std::string surface = plant.word("surface", "compliant-scale");
  auto s = fixtures::surface_by_name(surface);
  if (!s) throw ConfigError("unknown surface fixture", plant.line("surface"), "surface");
  sc.surface = *s;
  sc.surface.environment_stiffness = plant.quantity(
      "surface_stiffness", d::kStiffness, sc.surface.environment_stiffness);
  sc.surface.sensor_stiffness =
      plant.quantity("sensor_stiffness", d::kStiffness, sc.surface.sensor_stiffness);
  sc.surface.tool_stiffness =
      plant.quantity("tool_stiffness", d::kStiffness, sc.surface.tool_stiffness);
  sc.surface.damping =
      plant.quantity("surface_damping", dims::kViscous, sc.surface.damping);
  sc.initial_gap = plant.quantity("initial_gap", d::kLength, sc.initial_gap);
  sc.servo_time_constant =
      plant.quantity("servo_time_constant", d::kTime, sc.servo_time_constant);
  sc.sensor_period = plant.quantity("sensor_period", d::kTime, sc.sensor_period);
  sc.filter_window = plant.integer("filter_window", sc.filter_window);
  plant.reject_unknown();

  SectionReader ctl(doc, "controller");
  const std::string law = ctl.word("law", "pid");
  if (law == "pid") {
    sc.law = ForceLaw::kPid;
    sc.kp = ctl.quantity("kp", dims::kRatePerForce, 0.0);
    sc.kv = ctl.quantity("kv", d::kCompliance, 0.0);
    sc.ki = ctl.quantity("ki", dims::kRatePerImpulse, 0.0);
  } else if (law == "compliant") {
    sc.law = ForceLaw::kCompliant;
    sc.kp = ctl.quantity("kp", d::kCompliance, 0.0);
  } else {
    throw ConfigError("expected 'pid' or 'compliant'", ctl.line("law"), "law");
  }
  sc.bandwidth = ctl.quantity("bandwidth", dims::kPerSecond, sc.bandwidth);
  sc.approach_speed = ctl.quantity("approach_speed", d::kVelocity, sc.approach_speed);
  sc.deadband = ctl.quantity("deadband", d::kForce, sc.deadband);
  sc.guards.contact_threshold =
      ctl.quantity("contact_threshold", d::kForce, sc.guards.contact_threshold);
  sc.guards.settle_rate =
      ctl.quantity("settle_rate", dims::kForceRate, sc.guards.settle_rate);
  sc.guards.release_threshold =
      ctl.quantity("release_threshold", d::kForce, sc.guards.release_threshold);
  ctl.reject_unknown();

  SectionReader ref(doc, "reference");
  const std::string profile = ref.word("profile", "constant");
  if (profile == "constant") {
    sc.reference.kind = ForceReference::Kind::kConstant;
    sc.reference.force = ref.quantity("force", d::kForce, sc.reference.force);
  } else if (profile == "sinusoid") {
    sc.reference.kind = ForceReference::Kind::kSinusoid;
    sc.reference.amplitude =
        ref.quantity("amplitude", d::kForce, sc.reference.amplitude);
    sc.reference.period = ref.quantity("period", d::kTime, sc.reference.period);
  } else {
    throw ConfigError("expected 'constant' or 'sinusoid'", ref.line("profile"),
                      "profile");
  }
  ref.reject_unknown();

  SectionReader dist(doc, "disturbance");
  sc.sensor_noise = dist.quantity("sensor_noise", d::kForce, sc.sensor_noise);
  if (dist.has("rng")) {
    ExpectWord(dist.word("rng"), GaussianNoise::kAlgorithm, dist.line("rng"), "rng");
  }
  dist.reject_unknown();

  SectionReader run(doc, "run");
  sc.duration = run.quantity("duration", d::kTime, sc.duration);
  sc.dt = run.quantity("dt", d::kTime, sc.dt);
  sc.seed = run.integer("seed", sc.seed);
  if (run.has("task_complete")) {
    sc.task_complete = run.quantity("task_complete", d::kTime);
  }
  sc.name = run.word("name", sc.name);
  run.reject_unknown();
  return sc;
}

}  // namespace detail

// Parses a scenario document. Invalid values raise ConfigError; values that
// parse but break model invariants raise ConfigError without a line.
inline Scenario parse_scenario(std::string_view text) {
  const IniDocument doc = IniDocument::parse(text);
  detail::SectionReader plant(doc, "plant");
  const std::string type = plant.word("type");
  Scenario out;
  if (type == "fma") {
    out = detail::ReadFma(doc, plant);
  } else if (type == "contact") {
    out = detail::ReadContact(doc, plant);
  } else {
    throw ConfigError("expected 'fma' or 'contact'", plant.line("type"), "type");
  }
  try {
    std::visit([](const auto& s) { s.validate(); }, out);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return out;
}

inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

namespace detail {

class IniWriter {
 public:
  void section(std::string_view name) {
    if (!out_.str().empty()) out_ << '\n';
    out_ << '[' << name << "]\n";
  }
  void word(std::string_view key, std::string_view value) {
    out_ << key << " = " << value << '\n';
  }
  void number(std::string_view key, double v, std::string_view unit = {}) {
    out_ << key << " = " << FormatNumber(v);
    if (!unit.empty()) out_ << ' ' << unit;
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }
  std::ostringstream& stream() { return out_; }

 private:
  std::ostringstream out_;
};

inline void WritePrimeMover(IniWriter& w, const std::string& p,
                            const PrimeMoverParams& m) {
  w.number(p + "_rotor_inertia", m.rotor_inertia, "kg*m^2");
  w.number(p + "_damping", m.damping, "N*m*s");
  w.number(p + "_torque_constant", m.torque_constant, "N*m/A");
  w.number(p + "_back_emf_constant", m.back_emf_constant, "V*s");
  w.number(p + "_armature_resistance", m.armature_resistance, "ohm");
}

inline std::string Serialize(const FmaScenario& sc) {
  IniWriter w;
  const DualActuatorModel& m = sc.model;
  w.section("plant");
  w.word("type", "fma");
  w.number("r9", m.geometry.r9);
  w.number("r10", m.geometry.r10);
  w.number("r11", m.geometry.r11);
  w.number("r12", m.geometry.r12);
  w.number("hypocyclic_ratio", m.geometry.hypocyclic_ratio);
  WritePrimeMover(w, "motion", m.motion);
  WritePrimeMover(w, "force", m.force);
  w.number("link_mass", m.as_built.link_mass, "kg");
  w.number("tool_mass", m.as_built.tool_mass, "kg");
  w.number("link_length", m.as_built.length, "m");
  w.number("designed_link_mass", m.as_designed.link_mass, "kg");
  w.number("designed_tool_mass", m.as_designed.tool_mass, "kg");
  w.number("designed_link_length", m.as_designed.length, "m");
  w.number("gravity", m.gravity, "m/s^2");
  w.word("friction", m.friction == FrictionModel::kStribeck ? "stribeck" : "none");

  w.section("controller");
  w.word("law", "computed-torque");
  w.number("kp", sc.gains.kp, "1/s^2");
  w.number("kv", sc.gains.kv, "1/s");
  w.number("weight_quiet", sc.weighting.quiet(1, 1));
  w.number("weight_disturbed", sc.weighting.disturbed(1, 1));
  w.number("weight_threshold", sc.weighting.threshold, "N*m");
  w.number("control_period", sc.control_period, "s");
  w.number("substeps", sc.substeps);

  w.section("reference");
  w.word("profile", "trapezoidal");
  w.number("duration", sc.reference.duration, "s");
  w.number("peak_rate", sc.reference.peak_rate, "rad/s");

  w.section("disturbance");
  if (sc.disturbance.bands.empty()) {
    w.word("model", "none");
  } else {
    w.word("model", "burr");
    w.word("band_unit", "rad");
    std::string bands;
    for (const auto& b : sc.disturbance.bands) {
      if (!bands.empty()) bands += ", ";
      bands += FormatNumber(b.lower) + ' ' + FormatNumber(b.upper) + ' ' +
               FormatNumber(b.coefficient);
    }
    w.word("bands", bands);
  }
  w.word("noise", sc.noise ? "on" : "off");
  w.number("noise_stddev", sc.disturbance.noise_stddev, "N*m");
  w.word("rng", GaussianNoise::kAlgorithm);

  w.section("run");
  w.word("name", sc.name);
  w.number("duration", sc.duration, "s");
  w.word("seed", std::to_string(sc.seed));
  w.number("initial_position", sc.initial_position, "rad");
  w.number("initial_velocity", sc.initial_velocity, "rad/s");
  return w.str();
}

inline std::string Serialize(const ForceControlScenario& sc) {
  IniWriter w;
  w.section("plant");
  w.word("type", "contact");
  w.word("chain", sc.chain.name);
  std::string joints;
  for (Eigen::Index i = 0; i < sc.initial_joints.size(); ++i) {
    joints += FormatNumber(sc.initial_joints[i]) + ' ';
  }
  w.word("initial_joints", joints + "rad");
  w.word("surface", "compliant-scale");
  w.number("surface_stiffness", sc.surface.environment_stiffness, "N/m");
  w.number("sensor_stiffness", sc.surface.sensor_stiffness, "N/m");
  w.number("tool_stiffness", sc.surface.tool_stiffness, "N/m");
  w.number("surface_damping", sc.surface.damping, "N*s/m");
  w.number("initial_gap", sc.initial_gap, "m");
  w.number("servo_time_constant", sc.servo_time_constant, "s");
  w.number("sensor_period", sc.sensor_period, "s");
  w.word("filter_window", std::to_string(sc.filter_window));

  w.section("controller");
  if (sc.law == ForceLaw::kPid) {
    w.word("law", "pid");
    w.number("kp", sc.kp, "m/s/N");
    w.number("kv", sc.kv, "m/N");
    w.number("ki", sc.ki, "m/s^2/N");
  } else {
    w.word("law", "compliant");
    w.number("kp", sc.kp, "m/N");
  }
  w.number("bandwidth", sc.bandwidth, "Hz");
  w.number("approach_speed", sc.approach_speed, "m/s");
  w.number("deadband", sc.deadband, "N");
  w.number("contact_threshold", sc.guards.contact_threshold, "N");
  w.number("settle_rate", sc.guards.settle_rate, "N/s");
  w.number("release_threshold", sc.guards.release_threshold, "N");

  w.section("reference");
  if (sc.reference.kind == ForceReference::Kind::kConstant) {
    w.word("profile", "constant");
    w.number("force", sc.reference.force, "N");
  } else {
    w.word("profile", "sinusoid");
    w.number("amplitude", sc.reference.amplitude, "N");
    w.number("period", sc.reference.period, "s");
  }

  w.section("disturbance");
  w.number("sensor_noise", sc.sensor_noise, "N");
  w.word("rng", GaussianNoise::kAlgorithm);

  w.section("run");
  w.word("name", sc.name);
  w.number("duration", sc.duration, "s");
  w.number("dt", sc.dt, "s");
  w.word("seed", std::to_string(sc.seed));
  if (sc.task_complete) w.number("task_complete", *sc.task_complete, "s");
  return w.str();
}

}  // namespace detail

inline std::string serialize_scenario(const Scenario& s) {
  return std::visit([](const auto& sc) { return detail::Serialize(sc); }, s);
}

// ---------------------------------------------------------------------------
// Built-in scenarios

namespace detail {

inline constexpr std::pair<std::string_view, std::string_view> kBuiltins[] = {
    {"fma-paper-deburr", R"([plant]
type = fma
fixture = fma-paper

[controller]
# Double pole at 30 rad/s; the library default (100, 20) cannot hold the
# tracking error under the as-built/as-designed gravity mismatch.
kp = 900 1/s^2
kv = 60 1/s
weight_quiet = 164.5
weight_disturbed = 16.45
weight_threshold = 4 N*m
control_period = 1 ms

[reference]
profile = trapezoidal
duration = 10 s

[disturbance]
model = burr
band_unit = rad
noise = on
noise_stddev = 2 N*m
rng = mt19937_64/box-muller/v1

[run]
name = fma-paper-deburr
duration = 10 s
seed = 1
)"},
    {"force-regulation-pid", R"([plant]
type = contact
chain = powercube6
surface = compliant-scale
initial_gap = 9 mm
servo_time_constant = 1 s

[controller]
law = pid
kp = 0.1 mm/s/lbf
kv = 0.1 mm/lbf
ki = 0.01 mm/s^2/lbf
bandwidth = 15 Hz
approach_speed = 2.25 mm/s
deadband = 0.45 lbf

[reference]
profile = constant
force = -5 lbf

[run]
name = force-regulation-pid
duration = 150 s
seed = 1
)"},
    {"compliant-kp003", R"([plant]
type = contact
surface = compliant-scale

[controller]
law = compliant
kp = 0.03 mm/lbf
bandwidth = 15 Hz
approach_speed = 2.5 mm/s
deadband = 0.45 lbf

[reference]
profile = constant
force = -5 lbf

[run]
name = compliant-kp003
duration = 100 s
)"},
    {"compliant-kp001", R"([plant]
type = contact
surface = compliant-scale

[controller]
law = compliant
kp = 0.01 mm/lbf
bandwidth = 15 Hz
approach_speed = 2.5 mm/s
deadband = 0.45 lbf

[reference]
profile = constant
force = -5 lbf

[run]
name = compliant-kp001
duration = 100 s
)"},
    {"force-tracking-pid", R"([plant]
type = contact
surface = compliant-scale

[controller]
law = pid
kp = 0.1 mm/s/lbf
kv = 0.1 mm/lbf
ki = 0.01 mm/s^2/lbf
bandwidth = 25 Hz
approach_speed = 1.25 mm/s
deadband = 0.45 lbf

[reference]
profile = sinusoid
amplitude = -3 lbf
period = 50 s

[run]
name = force-tracking-pid
duration = 160 s
)"},
    {"stiff-pad-pid", R"([plant]
type = contact
surface = stiff-pad

[controller]
law = pid
kp = 0.1 mm/s/lbf
kv = 0.1 mm/lbf
ki = 0.01 mm/s^2/lbf
bandwidth = 10 Hz
approach_speed = 2 mm/s
deadband = 0.45 lbf

[reference]
profile = constant
force = -5 lbf

[run]
name = stiff-pad-pid
duration = 60 s
)"},
};

}  // namespace detail

inline std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::kBuiltins) out.emplace_back(name);
  return out;
}

inline std::optional<std::string> builtin_scenario_text(std::string_view name) {
  for (const auto& [n, text] : detail::kBuiltins) {
    if (n == name) return std::string(text);
  }
  return std::nullopt;
}

}  // namespace fmasim

#endif  // FMASIM_CONFIG_HPP_
