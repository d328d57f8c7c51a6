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
#include <string_view>
#include <utility>
#include <vector>

namespace lgi {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Radians from "1.6pi", "pi", "-0.5pi", "2*pi" or a plain number.
/// Throws std::invalid_argument on anything else.
double parse_angle(std::string_view text);

/// "a:b" with both ends in parse_angle syntax.
std::pair<double, double> parse_range(std::string_view text);

/// Entry point of lgi_sim. `args` excludes the program name. Returns the
/// process exit code: 0 only when every output was written.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lgi
