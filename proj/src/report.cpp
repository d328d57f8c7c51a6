// Copyright 2026 The lgi-qutrit Authors
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

#include "lgi/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lgi {

namespace {

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string num(double x) { return fmt("%.15g", x + 0.0); }

std::string pi_label(double angle) {
  const double halves = angle / (std::numbers::pi / 2.0);
  const long rounded = std::lround(halves);
  if (rounded == 0) return "0";
  if (rounded == 2) return "π";
  return fmt("%gπ", 0.5 * static_cast<double>(rounded));
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "tau_angle,c21,c32,c31,k3,stderr,shots,rule\n";
  const std::string rule(to_string(result.rule));
  for (const auto& p : result.points) {
    out << num(p.tau_angle) << ',' << num(p.c21) << ',' << num(p.c32) << ',' << num(p.c31) << ',' << num(p.k3) << ','
        << num(p.std_error) << ',' << p.shots << ',' << rule << '\n';
  }
}

nlohmann::ordered_json sweep_to_json(const SweepResult& result) {
  nlohmann::ordered_json doc;
  doc["rule"] = std::string(to_string(result.rule));
  doc["exact"] = result.exact;
  auto& points = doc["points"] = nlohmann::ordered_json::array();
  for (const auto& p : result.points) {
    points.push_back({{"tau_angle", p.tau_angle},
                      {"k3", p.k3},
                      {"stderr", p.std_error},
                      {"c21", p.c21},
                      {"c32", p.c32},
                      {"c31", p.c31},
                      {"stderr21", p.std_error21},
                      {"stderr32", p.std_error32},
                      {"stderr31", p.std_error31},
                      {"shots", p.shots}});
  }
  return doc;
}

SweepResult sweep_from_json(const nlohmann::json& doc) {
  SweepResult result;
  result.rule = parse_update_rule(doc.at("rule").get<std::string>());
  result.exact = doc.at("exact").get<bool>();
  for (const auto& p : doc.at("points")) {
    SweepPoint pt;
    pt.tau_angle = p.at("tau_angle").get<double>();
    pt.k3 = p.at("k3").get<double>();
    pt.std_error = p.at("stderr").get<double>();
    pt.c21 = p.at("c21").get<double>();
    pt.c32 = p.at("c32").get<double>();
    pt.c31 = p.at("c31").get<double>();
    pt.std_error21 = p.at("stderr21").get<double>();
    pt.std_error32 = p.at("stderr32").get<double>();
    pt.std_error31 = p.at("stderr31").get<double>();
    pt.shots = p.at("shots").get<std::uint64_t>();
    result.points.push_back(pt);
  }
  return result;
}

std::string render_sweep_svg(const SweepResult& result, const PlotOptions& options) {
  if (result.points.empty()) throw std::invalid_argument("render_sweep_svg: nothing to plot");
  const double left = 64;
  const double right = 20;
  const double top = 36;
  const double bottom = 48;
  const double w = options.width;
  const double h = options.height;

  double x_min = 0.0;
  double x_max = 2.0 * std::numbers::pi;
  for (const auto& p : result.points) {
    x_min = std::min(x_min, p.tau_angle);
    x_max = std::max(x_max, p.tau_angle);
  }
  const double y_min = -3.25;
  const double y_max = 2.0;
  auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (w - left - right); };
  auto sy = [&](double y) { return top + (y_max - y) / (y_max - y_min) * (h - top - bottom); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const std::string title =
      options.title.empty() ? "K3 vs Ωτ (" + std::string(to_string(result.rule)) + ")" : options.title;
  svg << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" fill=\"none\">\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w - left - right << "\" height=\""
      << h - top - bottom << "\"/>\n";
  svg << "</g>\n<g fill=\"black\">\n";
  for (double y = -3.0; y <= 2.0 + 1e-9; y += 1.0) {
    svg << "<line x1=\"" << left - 4 << "\" x2=\"" << left << "\" y1=\"" << sy(y) << "\" y2=\"" << sy(y)
        << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << sy(y) + 4 << "\" text-anchor=\"end\">" << fmt("%g", y)
        << "</text>\n";
  }
  const double tick = std::numbers::pi / 2.0;
  for (double x = std::ceil(x_min / tick) * tick; x <= x_max + 1e-9; x += tick) {
    svg << "<line x1=\"" << sx(x) << "\" x2=\"" << sx(x) << "\" y1=\"" << h - bottom << "\" y2=\"" << h - bottom + 4
        << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << sx(x) << "\" y=\"" << h - bottom + 18 << "\" text-anchor=\"middle\">" << pi_label(x)
        << "</text>\n";
  }
  svg << "<text x=\"" << w / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\">Ωτ</text>\n";
  svg << "<text x=\"16\" y=\"" << h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << h / 2
      << ")\">K₃</text>\n";
  svg << "</g>\n";

  // Reference bounds.
  auto hline = [&](double y, const char* color, const char* label) {
    svg << "<line x1=\"" << left << "\" x2=\"" << w - right << "\" y1=\"" << sy(y) << "\" y2=\"" << sy(y)
        << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>";
    svg << "<text x=\"" << w - right - 4 << "\" y=\"" << sy(y) - 4 << "\" text-anchor=\"end\" fill=\"" << color
        << "\">" << label << "</text>\n";
  };
  hline(bounds::kClassical, "orange", "classical bound");
  hline(bounds::kLuders, "darkviolet", "Lüders bound");

  // Exact curve.
  const PrecessionModel model(1.0, 3);
  constexpr int kSamples = 361;
  svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (int k = 0; k < kSamples; ++k) {
    const double x = x_min + (x_max - x_min) * k / (kSamples - 1);
    const double y = k3_exact_for_angle(model, x, result.rule).k3;
    svg << fmt("%.2f", sx(x)) << ',' << fmt("%.2f", sy(y)) << ' ';
  }
  svg << "\"/>\n";

  if (!result.exact) {
    svg << "<g fill=\"red\" stroke=\"red\">\n";
    for (const auto& p : result.points) {
      const double x = sx(p.tau_angle);
      svg << "<line x1=\"" << fmt("%.2f", x) << "\" x2=\"" << fmt("%.2f", x) << "\" y1=\""
          << fmt("%.2f", sy(p.k3 - p.std_error)) << "\" y2=\"" << fmt("%.2f", sy(p.k3 + p.std_error)) << "\"/>";
      svg << "<circle cx=\"" << fmt("%.2f", x) << "\" cy=\"" << fmt("%.2f", sy(p.k3)) << "\" r=\"3\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lgi
