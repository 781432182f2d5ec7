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


// Output files: trace CSVs, metrics documents, envelope CSVs and a small
// dependency-free SVG line/scatter plot writer. Numbers are written with
// std::to_chars in shortest round-trip form, so identical runs produce
// identical bytes.

#ifndef FMASIM_IO_HPP_
#define FMASIM_IO_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fmasim/metrics.hpp"
#include "fmasim/simulation.hpp"

namespace fmasim::io {

inline std::string number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Fixed significant-digit form for human-facing output.
inline std::string number(double v, int significant) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                       std::chars_format::general, significant);
  return std::string(buf, ptr);
}

inline constexpr std::string_view kFmaCsvHeader =
    "t,q,q_ref,qd,qd_ref,qM1,qM2,v1,v2,tau_ext";
inline constexpr std::string_view kForceCsvHeader =
    "t,tip_height,force,force_measured,force_ref,phase";

inline void write_trace_csv(std::ostream& out, const FmaTrace& trace) {
  out << kFmaCsvHeader << '\n';
  for (const auto& s : trace.samples) {
    out << number(s.t) << ',' << number(s.q) << ',' << number(s.q_ref) << ','
        << number(s.qd) << ',' << number(s.qd_ref) << ','
        << number(s.motor_position[0]) << ',' << number(s.motor_position[1])
        << ',' << number(s.voltage[0]) << ',' << number(s.voltage[1]) << ','
        << number(s.tau_ext) << '\n';
  }
}

inline void write_trace_csv(std::ostream& out, const ForceTrace& trace) {
  out << kForceCsvHeader << '\n';
  for (const auto& s : trace.samples) {
    out << number(s.t) << ',' << number(s.tip_height) << ','
        << number(s.contact_force) << ',' << number(s.measured_force) << ','
        << number(s.reference) << ',' << phase_name(s.phase) << '\n';
  }
}

inline void write_trace_csv(std::ostream& out, const Trace& trace) {
  std::visit([&](const auto& t) { write_trace_csv(out, t); }, trace);
}

// One `key = value` line per available metric, SI units.
inline void write_metrics(std::ostream& out, const Metrics& m) {
  const auto scalar = [&](std::string_view key, const std::optional<double>& v) {
    if (v) out << key << " = " << number(*v) << '\n';
  };
  const auto pair = [&](std::string_view key, const std::optional<Vector2>& v) {
    if (v) {
      out << key << "_motion = " << number((*v)[0]) << '\n';
      out << key << "_force = " << number((*v)[1]) << '\n';
    }
  };
  scalar("max_position_error", m.max_position_error);
  scalar("max_position_error_outside_disturbance", m.max_position_error_outside);
  scalar("max_position_error_inside_disturbance", m.max_position_error_inside);
  scalar("mean_position_error", m.mean_position_error);
  scalar("max_velocity_error", m.max_velocity_error);
  scalar("mean_velocity_error", m.mean_velocity_error);
  if (m.pvke) {
    out << "pvke_motion = " << number(m.pvke->first) << '\n';
    out << "pvke_force = " << number(m.pvke->second) << '\n';
  }
  pair("mean_abs_speed", m.mean_abs_motor_speed);
  pair("mean_abs_torque", m.mean_abs_motor_torque);
  scalar("final_position", m.final_position);
  scalar("final_voltage_norm", m.final_voltage_norm);
  scalar("contact_time", m.contact_time);
  scalar("peak_force", m.peak_force);
  scalar("final_force", m.final_force);
  scalar("steady_state_error", m.steady_state_error);
  scalar("overshoot_percent", m.overshoot);
  scalar("settling_time", m.settling_time);
  scalar("transient_duration", m.transient_duration);
  scalar("impulse", m.impulse);
  scalar("tracking_lag_percent", m.tracking_lag);
  scalar("min_tracking_force", m.min_tracking_force);
}

inline void write_envelope_csv(std::ostream& out,
                               const std::vector<EnvelopePoint>& points) {
  out << "torque,speed,tag\n";
  for (const auto& p : points) {
    out << number(p.torque) << ',' << number(p.speed) << ',' << p.tag << '\n';
  }
}

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool scatter = false;
};

// Self-contained SVG with axes, tick labels and a legend.
inline void write_svg_plot(std::ostream& out, const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           const std::vector<PlotSeries>& series) {
  constexpr double kWidth = 720, kHeight = 440;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;
  static constexpr std::string_view kColours[] = {"#1f77b4", "#d62728", "#2ca02c",
                                                  "#ff7f0e", "#9467bd", "#8c564b"};
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
  }
  if (!(x1 > x0)) x0 -= 1.0, x1 += 1.0;
  if (!(y1 > y0)) y0 -= 1.0, y1 += 1.0;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  const auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << title << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5.0;
    const double yv = y0 + (y1 - y0) * i / 5.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << kTop + ph + 16
        << "\" text-anchor=\"middle\">" << number(xv, 3) << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\">" << number(yv, 3) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text transform=\"translate(16," << kTop + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << y_label << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string_view colour = kColours[k % std::size(kColours)];
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (s.scatter) {
      for (std::size_t i = 0; i < n; ++i) {
        out << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
            << "\" r=\"1.5\" fill=\"" << colour << "\"/>\n";
      }
    } else {
      // Thin long series to at most ~2000 vertices.
      const std::size_t stride = std::max<std::size_t>(1, n / 2000);
      out << "<polyline fill=\"none\" stroke=\"" << colour
          << "\" stroke-width=\"1.3\" points=\"";
      for (std::size_t i = 0; i < n; i += stride) {
        out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
      }
      out << "\"/>\n";
    }
    out << "<text x=\"" << kLeft + pw - 8 << "\" y=\"" << kTop + 16 + 15 * k
        << "\" text-anchor=\"end\" fill=\"" << colour << "\">" << s.label
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace fmasim::io

#endif  // FMASIM_IO_HPP_
