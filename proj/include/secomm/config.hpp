// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "secomm/harness.hpp"

namespace secomm::config {

/// Parse or validation failure; the message names the source, line and key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a run needs. Keys in the JSON form carry unit suffixes
/// (p_total_dbm, b_total_mhz, s_max_mbytes, ...); see README for the full list.
struct RunConfig {
    harness::ScenarioSpec scenario;
    harness::SweepOptions sweep;  ///< solver settings live in sweep.solver
    int grid_points_per_axis = 64;
    std::string axis = "p_total_dbm";
    std::string values = "30:40:2";
};

/// Missing keys keep their defaults; unknown keys and wrong types are errors.
[[nodiscard]] RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// JSON in the same key vocabulary parse_config accepts.
[[nodiscard]] std::string to_json(const RunConfig& config, int indent = 2);
[[nodiscard]] std::string scenario_json(const harness::ScenarioSpec& spec);
[[nodiscard]] std::string solver_json(const RunConfig& config);

}  // namespace secomm::config
