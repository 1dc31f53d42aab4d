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

#include "secomm/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "secomm/channel.hpp"

namespace secomm::config {
namespace {

using json = nlohmann::ordered_json;

std::size_t line_of(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

std::size_t line_of_key(std::string_view text, const std::string& key) {
    const auto pos = text.find("\"" + key + "\"");
    return pos == std::string_view::npos ? 0 : line_of(text, pos);
}

// Field bindings: key -> (reader, writer) over a RunConfig.
struct Binding {
    std::function<void(RunConfig&, const json&)> read;
    std::function<json(const RunConfig&)> write;
};

double as_number(const json& v) {
    if (!v.is_number()) throw std::invalid_argument("expected a number");
    return v.get<double>();
}

long long as_integer(const json& v) {
    if (!v.is_number_integer() && !(v.is_number() && std::floor(v.get<double>()) == v.get<double>()))
        throw std::invalid_argument("expected an integer");
    return v.get<long long>();
}

template <typename T>
T as_positive_integer(const json& v) {
    const long long x = as_integer(v);
    if (x < 0) throw std::invalid_argument("expected a non-negative integer");
    return static_cast<T>(x);
}

std::vector<double> as_number_list(const json& v) {
    if (!v.is_array()) throw std::invalid_argument("expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(as_number(e));
    return out;
}

std::string as_string(const json& v) {
    if (!v.is_string()) throw std::invalid_argument("expected a string");
    return v.get<std::string>();
}

#define SECOMM_NUM(key, field, to_cfg, from_cfg)                                              \
    {key, {[](RunConfig& c, const json& v) { const double x = as_number(v); c.field = (to_cfg); }, \
           [](const RunConfig& c) { const double x = c.field; return json(from_cfg); }}}

const std::map<std::string, Binding>& bindings() {
    static const std::map<std::string, Binding> table = {
        {"n_users", {[](RunConfig& c, const json& v) { c.scenario.n_users = as_positive_integer<std::size_t>(v); },
                     [](const RunConfig& c) { return json(c.scenario.n_users); }}},
        {"seed", {[](RunConfig& c, const json& v) { c.scenario.seed = as_positive_integer<std::uint64_t>(v); },
                  [](const RunConfig& c) { return json(c.scenario.seed); }}},
        SECOMM_NUM("cell_radius_km", scenario.cell_radius_km, x, x),
        SECOMM_NUM("min_distance_km", scenario.min_distance_km, x, x),
        SECOMM_NUM("noise_psd_dbm_hz", scenario.noise_psd_dbm_hz, x, x),
        SECOMM_NUM("shadow_std_db", scenario.shadow_std_db, x, x),
        SECOMM_NUM("p_total_dbm", scenario.p_total_dbm, x, x),
        SECOMM_NUM("b_total_mhz", scenario.b_total_hz, x * 1e6, x / 1e6),
        SECOMM_NUM("w1", scenario.weights.latency, x, x),
        SECOMM_NUM("w2", scenario.weights.utility, x, x),
        SECOMM_NUM("eve_snr_ratio", scenario.eve_snr_ratio, x, x),
        {"distances_km", {[](RunConfig& c, const json& v) { c.scenario.distances_km = as_number_list(v); },
                          [](const RunConfig& c) { return json(c.scenario.distances_km); }}},
        {"shadows_db", {[](RunConfig& c, const json& v) { c.scenario.shadows_db = as_number_list(v); },
                        [](const RunConfig& c) { return json(c.scenario.shadows_db); }}},
        SECOMM_NUM("d_data_mbytes", scenario.cost.d_data_bits, x * harness::kBitsPerMegabyte,
                   x / harness::kBitsPerMegabyte),
        SECOMM_NUM("c1_cycles", scenario.cost.c1, x, x),
        {"c2", {[](RunConfig& c, const json& v) { c.scenario.cost.c2 = static_cast<int>(as_integer(v)); },
                [](const RunConfig& c) { return json(c.scenario.cost.c2); }}},
        SECOMM_NUM("c3_cycles", scenario.cost.c3, x, x),
        SECOMM_NUM("c4", scenario.cost.c4, x, x),
        SECOMM_NUM("c5_per_bit", scenario.cost.c5, x, x),
        SECOMM_NUM("y2_cycles_per_bit", scenario.cost.y2_coeff, x, x),
        SECOMM_NUM("f_server_ghz", scenario.cost.f_server_hz, x * 1e9, x / 1e9),
        SECOMM_NUM("g_user_ghz", scenario.cost.g_user_hz, x * 1e9, x / 1e9),
        SECOMM_NUM("s_max_mbytes", scenario.cost.s_max_bits, x * harness::kBitsPerMegabyte,
                   x / harness::kBitsPerMegabyte),
        SECOMM_NUM("p_min_dbm", scenario.cost.p_min_w, channel::dbm_to_watts(x), channel::watts_to_dbm(x)),
        SECOMM_NUM("eps0", sweep.solver.eps0, x, x),
        {"k_max", {[](RunConfig& c, const json& v) { c.sweep.solver.k_max = static_cast<int>(as_integer(v)); },
                   [](const RunConfig& c) { return json(c.sweep.solver.k_max); }}},
        {"j_max", {[](RunConfig& c, const json& v) { c.sweep.solver.j_max = static_cast<int>(as_integer(v)); },
                   [](const RunConfig& c) { return json(c.sweep.solver.j_max); }}},
        SECOMM_NUM("fp_tol", sweep.solver.fp_tol, x, x),
        SECOMM_NUM("bisect_tol", sweep.solver.bisect_tol, x, x),
        {"bisect_max_iter",
         {[](RunConfig& c, const json& v) { c.sweep.solver.bisect_max_iter = static_cast<int>(as_integer(v)); },
          [](const RunConfig& c) { return json(c.sweep.solver.bisect_max_iter); }}},
        {"threads", {[](RunConfig& c, const json& v) { c.sweep.threads = as_positive_integer<std::size_t>(v); },
                     [](const RunConfig& c) { return json(c.sweep.threads); }}},
        {"random_draws", {[](RunConfig& c, const json& v) { c.sweep.random_draws = static_cast<int>(as_integer(v)); },
                          [](const RunConfig& c) { return json(c.sweep.random_draws); }}},
        SECOMM_NUM("equal_s_fraction", sweep.equal_s_fraction, x, x),
        {"grid_points_per_axis",
         {[](RunConfig& c, const json& v) { c.grid_points_per_axis = static_cast<int>(as_integer(v)); },
          [](const RunConfig& c) { return json(c.grid_points_per_axis); }}},
        {"axis", {[](RunConfig& c, const json& v) { c.axis = as_string(v); },
                  [](const RunConfig& c) { return json(c.axis); }}},
        {"values", {[](RunConfig& c, const json& v) { c.values = as_string(v); },
                    [](const RunConfig& c) { return json(c.values); }}},
    };
    return table;
}

#undef SECOMM_NUM

const std::vector<std::string> kScenarioKeys = {
    "n_users", "seed", "cell_radius_km", "min_distance_km", "noise_psd_dbm_hz", "shadow_std_db", "p_total_dbm",
    "b_total_mhz", "w1", "w2", "eve_snr_ratio", "distances_km", "shadows_db", "d_data_mbytes", "c1_cycles", "c2",
    "c3_cycles", "c4", "c5_per_bit", "y2_cycles_per_bit", "f_server_ghz", "g_user_ghz", "s_max_mbytes", "p_min_dbm"};
const std::vector<std::string> kRunKeys = {"eps0",         "k_max",           "j_max",          "fp_tol",
                                           "bisect_tol",   "bisect_max_iter", "threads",
                                           "random_draws", "equal_s_fraction", "grid_points_per_axis",
                                           "axis",         "values"};

json subset(const RunConfig& c, const std::vector<std::string>& keys) {
    json j = json::object();
    for (const auto& k : keys) j[k] = bindings().at(k).write(c);
    return j;
}

}  // namespace

RunConfig parse_config(std::string_view text, std::string_view source) {
    const std::string src(source);
    json doc;
    try {
        doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(src + ":" + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                          ": parse error: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(src + ":1: top level must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        const auto it = bindings().find(key);
        const std::string where = src + ":" + std::to_string(line_of_key(text, key)) + ": key '" + key + "'";
        if (it == bindings().end()) throw ConfigError(where + ": unknown key");
        try {
            it->second.read(cfg, value);
        } catch (const std::exception& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    try {
        cfg.scenario.validate();
        cfg.sweep.solver.validate();
    } catch (const std::exception& e) {
        throw ConfigError(src + ": " + e.what());
    }
    if (cfg.grid_points_per_axis < 3) throw ConfigError(src + ": key 'grid_points_per_axis': must be at least 3");
    if (cfg.sweep.random_draws < 1) throw ConfigError(src + ": key 'random_draws': must be positive");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::string to_json(const RunConfig& config, int indent) {
    json j = subset(config, kScenarioKeys);
    j.update(subset(config, kRunKeys));
    return j.dump(indent);
}

std::string scenario_json(const harness::ScenarioSpec& spec) {
    RunConfig c;
    c.scenario = spec;
    return subset(c, kScenarioKeys).dump();
}

std::string solver_json(const RunConfig& config) { return subset(config, kRunKeys).dump(); }

}  // namespace secomm::config
