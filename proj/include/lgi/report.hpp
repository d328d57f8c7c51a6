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

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "lgi/shots.hpp"

namespace lgi {

/// Header `tau_angle,c21,c32,c31,k3,stderr,shots,rule`, one row per angle.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

nlohmann::ordered_json sweep_to_json(const SweepResult& result);
SweepResult sweep_from_json(const nlohmann::json& doc);

struct PlotOptions {
  std::string title;
  int width = 720;
  int height = 450;
};

/// Self-contained SVG of K3 against omega*tau: the exact curve for
/// `result.rule`, the estimates with error bars (skipped for exact sweeps),
/// and horizontal lines at the classical bound 1 and the Lüders bound 1.5.
std::string render_sweep_svg(const SweepResult& result, const PlotOptions& options = {});

}  // namespace lgi
