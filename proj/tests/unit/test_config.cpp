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

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "secomm/config.hpp"

using namespace secomm;
using namespace secomm::config;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("empty object gives the defaults", "[config]") {
    const auto c = parse_config("{}");
    CHECK(c.scenario.n_users == 30);
    CHECK(c.scenario.p_total_dbm == 40.0);
    CHECK(c.scenario.b_total_hz == 10e6);
    CHECK(c.scenario.cost.s_max_bits == 2.4e8);
    CHECK(c.sweep.solver.eps0 == 1e-4);
    CHECK(c.sweep.solver.k_max == 20);
    CHECK(c.sweep.threads == 0);
    CHECK(c.axis == "p_total_dbm");
}

TEST_CASE("keys are converted to internal units", "[config]") {
    const auto c = parse_config(R"({
        // comments are allowed
        "b_total_mhz": 6,
        "s_max_mbytes": 0.25,
        "d_data_mbytes": 50,
        "f_server_ghz": 20,
        "g_user_ghz": 1.5,
        "p_min_dbm": 10,
        "distances_km": [0.1, 0.2],
        "shadows_db": [1, -1],
        "n_users": 2,
        "k_max": 5,
        "values": "1,2"
    })");
    CHECK(c.scenario.b_total_hz == 6e6);
    CHECK(c.scenario.cost.s_max_bits == 2e6);
    CHECK(c.scenario.cost.d_data_bits == 4e8);
    CHECK(c.scenario.cost.f_server_hz == 20e9);
    CHECK(c.scenario.cost.g_user_hz == 1.5e9);
    CHECK(c.scenario.cost.p_min_w == Catch::Approx(1e-2));
    CHECK(c.scenario.distances_km == std::vector<double>{0.1, 0.2});
    CHECK(c.sweep.solver.k_max == 5);
    CHECK(c.values == "1,2");
}

TEST_CASE("errors name the source line and key", "[config]") {
    CHECK_THROWS_WITH(parse_config("{\n  \"n_users\": 2,\n  \"p_totl_dbm\": 30\n}", "cfg.json"),
                      ContainsSubstring("cfg.json:3: key 'p_totl_dbm': unknown key"));
    CHECK_THROWS_WITH(parse_config("{\n\"k_max\": 1.5}", "a.json"),
                      ContainsSubstring("a.json:2: key 'k_max': expected an integer"));
    CHECK_THROWS_WITH(parse_config("{\"w1\": \"half\"}", "b.json"), ContainsSubstring("expected a number"));
    CHECK_THROWS_WITH(parse_config("{\"shadows_db\": 3}", "c.json"), ContainsSubstring("expected an array"));
    CHECK_THROWS_WITH(parse_config("{\"n_users\": 0}", "d.json"), ContainsSubstring("n_users"));
    CHECK_THROWS_WITH(parse_config("{\n\"a\": ", "e.json"), ContainsSubstring("e.json:2: parse error"));
    CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(parse_config("{\"eps0\": 0}"), ConfigError);
    CHECK_THROWS_AS(parse_config("{\"grid_points_per_axis\": 2}"), ConfigError);
    CHECK_THROWS_WITH(load_config("/nonexistent/x.json"), ContainsSubstring("cannot open"));
}

TEST_CASE("serialized config parses back to itself", "[config]") {
    auto c = parse_config(R"({"n_users": 3, "b_total_mhz": 7.5, "p_min_dbm": 3, "eps0": 1e-5, "axis": "s_max_mbytes"})");
    const auto text = to_json(c);
    const auto back = parse_config(text);
    CHECK(back.scenario.n_users == 3);
    CHECK(back.sweep.solver.eps0 == 1e-5);
    CHECK(back.scenario.b_total_hz == 7.5e6);
    CHECK(back.scenario.cost.p_min_w == Catch::Approx(c.scenario.cost.p_min_w).epsilon(1e-15));
    CHECK(back.axis == "s_max_mbytes");

    const auto path = std::filesystem::temp_directory_path() / "secomm_config_test.json";
    std::ofstream(path) << text;
    CHECK(load_config(path).scenario.b_total_hz == 7.5e6);
    std::filesystem::remove(path);

    CHECK_THAT(scenario_json(c.scenario), ContainsSubstring("\"n_users\":3"));
    CHECK_THAT(solver_json(c), ContainsSubstring("\"eps0\""));
}

TEST_CASE("shipped configs parse", "[config]") {
    for (const char* name : {"default.json", "fixture_n2.json"}) {
        const auto path = std::filesystem::path(SECOMM_CONFIG_DIR) / name;
        CHECK_NOTHROW(load_config(path));
    }
}
