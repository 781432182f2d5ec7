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


// fmasim command-line tool.
//
//   fmasim simulate --config SCENARIO [--seed N] [--out DIR] [--svg]
//   fmasim envelope --config SCENARIO... [--scales 0.5,1,2] [--out DIR]
//   fmasim batch    --config SCENARIO... [--parallel N] [--out DIR]
//   fmasim fk       FIXTURE THETA... [--deg] [--json]
//   fmasim jacobian FIXTURE THETA... [--deg] [--json]
//   fmasim fixtures [--show NAME] [--json]
//
// SCENARIO is a file path, the stem of a .ini file in $FMA_SIM_FIXTURES, or
// a built-in scenario name. Exit status: 0 success, 2 bad input (config,
// fixture, arguments), 3 numerical failure during integration.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fmasim/fmasim.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using fmasim::Scenario;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct NamedScenario {
  std::string source;
  Scenario scenario;
};

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw fmasim::ConfigError("cannot open '" + p.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<fs::path> FixtureDirectory() {
  const char* dir = std::getenv("FMA_SIM_FIXTURES");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return fs::path(dir);
}

// Resolution order: existing file, $FMA_SIM_FIXTURES/<name>.ini, built-in.
std::string ScenarioText(const std::string& ref) {
  if (fs::is_regular_file(ref)) return ReadFile(ref);
  if (auto dir = FixtureDirectory()) {
    const fs::path p = *dir / (ref + ".ini");
    if (fs::is_regular_file(p)) return ReadFile(p);
  }
  if (auto text = fmasim::builtin_scenario_text(ref)) return *text;
  throw fmasim::ConfigError("unknown scenario or unreadable file '" + ref + "'");
}

NamedScenario LoadScenario(const std::string& ref) {
  try {
    return {ref, fmasim::parse_scenario(ScenarioText(ref))};
  } catch (const fmasim::ConfigError& e) {
    throw fmasim::ConfigError(ref + ": " + e.what());
  }
}

void OverrideSeed(Scenario& s, std::uint64_t seed) {
  std::visit([&](auto& sc) { sc.seed = seed; }, s);
}

std::string ScenarioName(const Scenario& s) {
  return std::visit([](const auto& sc) { return sc.name; }, s);
}

fmasim::Metrics MetricsOf(const fmasim::Trace& t) {
  return std::visit([](const auto& tr) { return fmasim::compute_metrics(tr); },
                    t);
}

void WriteTextFile(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw fmasim::ConfigError("cannot write '" + p.string() + "'");
  out << text;
}

void WritePlots(const fs::path& dir, const fmasim::Trace& trace) {
  using fmasim::io::PlotSeries;
  std::ostringstream svg;
  if (const auto* fma = std::get_if<fmasim::FmaTrace>(&trace)) {
    PlotSeries q{"q", {}, {}}, qr{"q_ref", {}, {}};
    PlotSeries v{"qd", {}, {}}, vr{"qd_ref", {}, {}};
    PlotSeries m1{"motion", {}, {}}, m2{"force", {}, {}};
    for (const auto& s : fma->samples) {
      q.x.push_back(s.t), q.y.push_back(s.q);
      qr.x.push_back(s.t), qr.y.push_back(s.q_ref);
      v.x.push_back(s.t), v.y.push_back(s.qd);
      vr.x.push_back(s.t), vr.y.push_back(s.qd_ref);
      m1.x.push_back(s.t), m1.y.push_back(s.motor_velocity[0]);
      m2.x.push_back(s.t), m2.y.push_back(s.motor_velocity[1]);
    }
    fmasim::io::write_svg_plot(svg, "Position tracking", "t (s)", "q (rad)", {q, qr});
    WriteTextFile(dir / "position.svg", svg.str());
    svg.str({});
    fmasim::io::write_svg_plot(svg, "Velocity tracking", "t (s)", "qd (rad/s)", {v, vr});
    WriteTextFile(dir / "velocity.svg", svg.str());
    svg.str({});
    fmasim::io::write_svg_plot(svg, "Prime-mover speeds", "t (s)", "rad/s", {m1, m2});
    WriteTextFile(dir / "prime_movers.svg", svg.str());
  } else {
    const auto& ft = std::get<fmasim::ForceTrace>(trace);
    PlotSeries f{"force", {}, {}}, r{"reference", {}, {}};
    for (const auto& s : ft.samples) {
      f.x.push_back(s.t), f.y.push_back(-s.contact_force);
      r.x.push_back(s.t), r.y.push_back(s.reference);
    }
    fmasim::io::write_svg_plot(svg, "Contact force", "t (s)", "F (N)", {f, r});
    WriteTextFile(dir / "force.svg", svg.str());
  }
}

// Runs one scenario and writes trace.csv and metrics.txt into `dir`.
void RunAndWrite(const Scenario& s, const fs::path& dir, bool plots) {
  const fmasim::Trace trace = fmasim::run_scenario(s);
  fs::create_directories(dir);
  std::ostringstream csv, metrics;
  fmasim::io::write_trace_csv(csv, trace);
  fmasim::io::write_metrics(metrics, MetricsOf(trace));
  WriteTextFile(dir / "trace.csv", csv.str());
  WriteTextFile(dir / "metrics.txt", metrics.str());
  if (plots) WritePlots(dir, trace);
}

fmasim::VectorX JointVector(const std::vector<double>& values, bool degrees,
                            const fmasim::SerialChainModel& m) {
  if (values.size() != m.dof()) {
    throw fmasim::ConfigError("fixture '" + m.name + "' needs " +
                              std::to_string(m.dof()) + " joint values, got " +
                              std::to_string(values.size()));
  }
  fmasim::VectorX theta(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    theta[static_cast<Eigen::Index>(i)] =
        degrees ? fmasim::units::deg_to_rad(values[i]) : values[i];
  }
  return theta;
}

fmasim::SerialChainModel ChainFixture(const std::string& name) {
  auto m = fmasim::fixtures::chain_by_name(name);
  if (!m) throw fmasim::ConfigError("unknown fixture '" + name + "'");
  return *m;
}

std::string Sig9(double v) { return fmasim::io::number(v, 9); }

int CmdFk(const std::string& fixture, const std::vector<double>& joints,
          bool degrees, bool json) {
  const auto m = ChainFixture(fixture);
  const auto theta = JointVector(joints, degrees, m);
  const fmasim::Pose pose = fmasim::forward_kinematics(m, theta);
  const fmasim::Matrix3 r = pose.rotation().matrix();
  if (json) {
    nlohmann::json j;
    j["fixture"] = fixture;
    j["position"] = {pose.position.x(), pose.position.y(), pose.position.z()};
    j["orientation"] = {pose.orientation.x, pose.orientation.y, pose.orientation.z};
    j["rotation"] = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) j["rotation"].push_back({r(i, 0), r(i, 1), r(i, 2)});
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "position (m): " << Sig9(pose.position.x()) << ' '
            << Sig9(pose.position.y()) << ' ' << Sig9(pose.position.z()) << '\n';
  std::cout << "orientation xyz (rad): " << Sig9(pose.orientation.x) << ' '
            << Sig9(pose.orientation.y) << ' ' << Sig9(pose.orientation.z) << '\n';
  std::cout << "rotation:\n";
  for (int i = 0; i < 3; ++i) {
    std::cout << "  " << Sig9(r(i, 0)) << ' ' << Sig9(r(i, 1)) << ' '
              << Sig9(r(i, 2)) << '\n';
  }
  return kExitOk;
}

int CmdJacobian(const std::string& fixture, const std::vector<double>& joints,
                bool degrees, bool json) {
  const auto m = ChainFixture(fixture);
  const auto theta = JointVector(joints, degrees, m);
  const fmasim::MatrixX g = fmasim::g_function(m, theta);
  if (json) {
    nlohmann::json j;
    j["fixture"] = fixture;
    j["rows"] = {"vx", "vy", "vz", "wx", "wy", "wz"};
    j["jacobian"] = nlohmann::json::array();
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index k = 0; k < g.cols(); ++k) row.push_back(g(i, k));
      j["jacobian"].push_back(row);
    }
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index k = 0; k < g.cols(); ++k) {
      std::cout << (k ? " " : "") << Sig9(g(i, k));
    }
    std::cout << '\n';
  }
  return kExitOk;
}

int CmdFixtures(const std::string& show, bool json) {
  if (!show.empty()) {
    std::cout << ScenarioText(show);
    return kExitOk;
  }
  std::vector<std::string> files;
  if (auto dir = FixtureDirectory(); dir && fs::is_directory(*dir)) {
    for (const auto& e : fs::directory_iterator(*dir)) {
      if (e.path().extension() == ".ini") files.push_back(e.path().stem().string());
    }
    std::sort(files.begin(), files.end());
  }
  const std::vector<std::string> fma = {"fma-paper"};
  const std::vector<std::string> surfaces = {"compliant-scale", "stiff-pad"};
  if (json) {
    nlohmann::json j;
    j["chains"] = fmasim::fixtures::chain_names();
    j["actuators"] = fma;
    j["surfaces"] = surfaces;
    j["scenarios"] = fmasim::builtin_scenario_names();
    j["fixture_files"] = files;
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  const auto list = [](const char* title, const std::vector<std::string>& v) {
    std::cout << title << ":\n";
    for (const auto& s : v) std::cout << "  " << s << '\n';
  };
  list("chains", fmasim::fixtures::chain_names());
  list("actuators", fma);
  list("surfaces", surfaces);
  list("scenarios", fmasim::builtin_scenario_names());
  if (!files.empty()) list("fixture files", files);
  return kExitOk;
}

int CmdSimulate(const std::string& config, std::optional<std::uint64_t> seed,
                const fs::path& out, bool plots) {
  NamedScenario s = LoadScenario(config);
  if (seed) OverrideSeed(s.scenario, *seed);
  RunAndWrite(s.scenario, out, plots);
  std::cout << "wrote " << (out / "trace.csv").string() << " and "
            << (out / "metrics.txt").string() << '\n';
  return kExitOk;
}

int CmdEnvelope(const std::vector<std::string>& configs,
                const std::vector<double>& scales,
                std::optional<std::uint64_t> seed, const fs::path& out) {
  std::vector<fmasim::FmaTrace> traces;
  for (const auto& c : configs) {
    NamedScenario s = LoadScenario(c);
    if (seed) OverrideSeed(s.scenario, *seed);
    auto* fma = std::get_if<fmasim::FmaScenario>(&s.scenario);
    if (fma == nullptr) {
      throw fmasim::ConfigError(c + ": envelopes need an actuator scenario");
    }
    if (scales.empty()) {
      traces.push_back(fmasim::run_fma_scenario(*fma));
      continue;
    }
    for (double k : scales) {
      fmasim::FmaScenario sc = *fma;
      sc.reference.peak_rate *= k;
      sc.name = fma->name + "@" + fmasim::io::number(k);
      traces.push_back(fmasim::run_fma_scenario(sc));
    }
  }
  const auto points = fmasim::envelope_points(traces);
  fs::create_directories(out);
  std::ostringstream csv;
  fmasim::io::write_envelope_csv(csv, points);
  WriteTextFile(out / "envelope.csv", csv.str());
  std::vector<fmasim::io::PlotSeries> series;
  for (const auto& t : traces) {
    fmasim::io::PlotSeries p{t.tag, {}, {}, true};
    for (std::size_t i = 0; i < t.samples.size(); i += 10) {
      p.x.push_back(t.samples[i].qd);
      p.y.push_back(t.samples[i].output_torque);
    }
    series.push_back(std::move(p));
  }
  std::ostringstream svg;
  fmasim::io::write_svg_plot(svg, "Performance envelope", "speed (rad/s)",
                             "torque (N*m)", series);
  WriteTextFile(out / "envelope.svg", svg.str());
  std::cout << "wrote " << points.size() << " points to "
            << (out / "envelope.csv").string() << '\n';
  return kExitOk;
}

int CmdBatch(const std::vector<std::string>& configs,
             std::optional<std::uint64_t> seed, const fs::path& out,
             unsigned parallel, bool plots) {
  std::vector<NamedScenario> jobs;
  for (const auto& c : configs) {
    jobs.push_back(LoadScenario(c));
    if (seed) OverrideSeed(jobs.back().scenario, *seed);
  }
  std::vector<std::string> dirs;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    std::string name = ScenarioName(jobs[i].scenario);
    if (std::count(dirs.begin(), dirs.end(), name)) name += "-" + std::to_string(i);
    dirs.push_back(name);
  }
  std::atomic<std::size_t> next{0};
  std::atomic<int> status{kExitOk};
  std::mutex log;
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        RunAndWrite(jobs[i].scenario, out / dirs[i], plots);
        std::lock_guard<std::mutex> lock(log);
        std::cout << "done " << dirs[i] << '\n';
      } catch (const fmasim::IntegrationError& e) {
        std::lock_guard<std::mutex> lock(log);
        std::cerr << dirs[i] << ": integration failed: " << e.what() << '\n';
        status = kExitNumerical;
      } catch (const fmasim::DegenerateConfiguration& e) {
        std::lock_guard<std::mutex> lock(log);
        std::cerr << dirs[i] << ": " << e.what() << '\n';
        status = kExitNumerical;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(parallel, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Force/motion control simulation tool"};
  app.require_subcommand(1);

  std::vector<std::string> configs;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  bool json = false, degrees = false, plots = false;
  unsigned parallel = 1;
  std::vector<double> scales;
  std::string fixture, show;
  std::vector<double> joints;

  auto* sim = app.add_subcommand("simulate", "Run one scenario");
  sim->add_option("--config", configs, "Scenario file or name")->required()->expected(1);
  sim->add_option("--seed", seed, "Override the scenario seed");
  sim->add_option("--out", out, "Output directory");
  sim->add_flag("--svg", plots, "Also write SVG plots");

  auto* env = app.add_subcommand("envelope", "Torque-speed envelope of actuator runs");
  env->add_option("--config", configs, "Scenario files or names")->required();
  env->add_option("--scales", scales, "Peak-rate multipliers to sweep")->delimiter(',');
  env->add_option("--seed", seed, "Override the scenario seed");
  env->add_option("--out", out, "Output directory");

  auto* batch = app.add_subcommand("batch", "Run several scenarios");
  batch->add_option("--config", configs, "Scenario files or names")->required();
  batch->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
  batch->add_option("--seed", seed, "Override every scenario seed");
  batch->add_option("--out", out, "Output directory");
  batch->add_flag("--svg", plots, "Also write SVG plots");

  auto* fk = app.add_subcommand("fk", "Forward kinematics of a chain fixture");
  auto* jac = app.add_subcommand("jacobian", "First-order influence coefficients");
  for (auto* c : {fk, jac}) {
    c->add_option("fixture", fixture, "Chain fixture")->required();
    c->add_option("theta", joints, "Joint angles")->required();
    c->add_flag("--deg", degrees, "Joint angles are in degrees");
    c->add_flag("--json", json, "Machine-readable output");
  }

  auto* fix = app.add_subcommand("fixtures", "List built-in fixtures and scenarios");
  fix->add_option("--show", show, "Print a scenario document");
  fix->add_flag("--json", json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*sim) return CmdSimulate(configs.front(), seed, out, plots);
    if (*env) return CmdEnvelope(configs, scales, seed, out);
    if (*batch) return CmdBatch(configs, seed, out, parallel, plots);
    if (*fk) return CmdFk(fixture, joints, degrees, json);
    if (*jac) return CmdJacobian(fixture, joints, degrees, json);
    if (*fix) return CmdFixtures(show, json);
  } catch (const fmasim::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const fmasim::IntegrationError& e) {
    std::cerr << "integration failed: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const fmasim::DegenerateConfiguration& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const fmasim::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
