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

// Command-line front end over the solver and the sweep harness.
// Exit codes: 0 success, 1 error, 2 non-convergence.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <json.hpp>

#include "secomm/config.hpp"
#include "secomm/errors.hpp"
#include "secomm/harness.hpp"
#include "secomm/objective.hpp"
#include "secomm/oracle.hpp"
#include "secomm/solver.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace secomm;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

constexpr double kVerifyResidualTol = 1e-6;
constexpr double kVerifyGridRelTol = 0.02;

struct Overrides {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::optional<double> eps0;
    std::optional<int> k_max;
    std::optional<std::string> axis;
    std::optional<std::string> values;
    bool record_timing = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON run config (defaults apply when omitted)");
    cmd->add_option("--seed", o.seed, "Scenario seed, overrides the config");
    cmd->add_option("--eps0", o.eps0, "Outer convergence tolerance");
    cmd->add_option("--k-max", o.k_max, "Outer iteration cap");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

config::RunConfig load(const Overrides& o) {
    config::RunConfig cfg = o.config_path.empty() ? config::parse_config("{}", "<defaults>")
                                                  : config::load_config(o.config_path);
    if (o.seed) cfg.scenario.seed = *o.seed;
    if (o.eps0) cfg.sweep.solver.eps0 = *o.eps0;
    if (o.k_max) cfg.sweep.solver.k_max = *o.k_max;
    if (o.threads) cfg.sweep.threads = *o.threads;
    if (o.axis) cfg.axis = *o.axis;
    if (o.values) cfg.values = *o.values;
    if (cfg.sweep.threads == 0) cfg.sweep.threads = std::max(1u, std::thread::hardware_concurrency());
    cfg.sweep.solver.validate();
    return cfg;
}

void emit(const json& doc, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out + " for writing");
    f << doc.dump(2) << '\n';
    if (!f) throw std::runtime_error("write failed for " + out);
}

json metrics_json(const semcost::MetricsReport& m) {
    json users = json::array();
    for (const auto& u : m.users)
        users.push_back({{"t1_s", u.t1}, {"t2_s", u.t2}, {"t3_s", u.t3}, {"rate_bps", u.rate}, {"utility", u.utility}});
    return {{"T_total_s", m.t_total}, {"U_total", m.u_total}, {"objective", m.objective}, {"users", users}};
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

json allocation_json(const Allocation& a) { return {{"p_w", a.p}, {"b_hz", a.b}, {"s_bits", a.s}}; }

int cmd_solve(const Overrides& o) {
    const auto cfg = load(o);
    const auto sc = harness::generate_scenario(cfg.scenario);
    spdlog::info("solving N={} p_total={} dBm b_total={} MHz", sc.size(), cfg.scenario.p_total_dbm,
                 cfg.scenario.b_total_hz / 1e6);
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = solver::resource_allocation(sc, cfg.sweep.solver);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    json trace = json::array();
    for (const auto& t : res.trace) {
        trace.push_back({{"k", t.k},
                         {"j", t.j},
                         {"surrogate_objective", t.surrogate_objective},
                         {"exact_objective", t.exact_objective},
                         {"kkt_residual", t.kkt_residual},
                         {"warm_started_z", t.warm_started_z}});
    }
    const json doc = {
        {"converged", res.converged},
        {"iters_outer", res.iters_outer},
        {"iters_fp_total", res.iters_fp_total},
        {"wall_ms", ms},
        {"allocation", allocation_json(res.alloc)},
        {"metrics", metrics_json(res.metrics)},
        {"surrogate_objective", res.surrogate_objective},
        {"multipliers",
         {{"alpha", res.multipliers.alpha},
          {"beta", res.multipliers.beta},
          {"gamma", res.multipliers.gamma},
          {"xi", res.multipliers.xi}}},
        {"kkt_residuals",
         {{"stationarity", res.residuals.stationarity},
          {"complementary", res.residuals.complementary},
          {"primal", res.residuals.primal},
          {"dual", res.residuals.dual}}},
        {"trace", trace},
    };
    emit(doc, o.out);
    if (!res.converged) {
        spdlog::warn("not converged after {} outer iterations (eps0={})", res.iters_outer, cfg.sweep.solver.eps0);
        return kExitNotConverged;
    }
    return kExitOk;
}

int cmd_sweep(const Overrides& o) {
    const auto cfg = load(o);
    const auto axis = harness::parse_axis(cfg.axis);
    if (!axis) {
        spdlog::error("unknown axis '{}' (expected p_total_dbm, b_total_mhz or s_max_mbytes)", cfg.axis);
        return kExitError;
    }
    const auto values = harness::parse_values(cfg.values);
    if (!std::is_sorted(values.begin(), values.end())) throw std::invalid_argument("sweep values must be ascending");
    if (o.out.empty()) throw std::invalid_argument("sweep needs --out <dir>");

    auto options = cfg.sweep;
    options.record_timing = o.record_timing;
    const auto methods = harness::default_methods();
    harness::RunManifest manifest{
        .spec_json = config::scenario_json(cfg.scenario),
        .config_json = config::solver_json(cfg),
        .seed = cfg.scenario.seed,
        .version = harness::version_string(),
        .started_utc = harness::utc_timestamp(),
    };
    spdlog::info("sweep {} over {} values, {} methods, {} threads", cfg.axis, values.size(), methods.size(),
                 options.threads);
    const auto result = harness::sweep(cfg.scenario, *axis, values, methods, options);
    harness::persist(result, manifest, o.out);

    for (const auto& e : result.errors) spdlog::error("{}", e);
    if (!result.errors.empty()) return kExitError;
    const bool all_converged =
        std::all_of(result.rows.begin(), result.rows.end(), [](const auto& r) { return r.converged; });
    if (!all_converged) {
        spdlog::warn("some sweep points did not converge");
        return kExitNotConverged;
    }
    return kExitOk;
}

int cmd_verify(const Overrides& o) {
    const auto cfg = load(o);
    if (cfg.scenario.n_users > 3) {
        spdlog::error("verify supports at most 3 users, config has {}", cfg.scenario.n_users);
        return kExitError;
    }
    const auto sc = harness::generate_scenario(cfg.scenario);
    const auto res = solver::resource_allocation(sc, cfg.sweep.solver);

    oracle::GridSpec grid;
    grid.points_per_axis = cfg.grid_points_per_axis;
    while (grid.points_per_axis > 3 &&
           oracle::estimated_evaluations(sc.size(), grid) > oracle::kMaxGridEvaluations) {
        --grid.points_per_axis;
    }
    const auto& anchors = res.state.anchors;
    const auto direct = oracle::grid_search(sc, anchors, oracle::ZPolicy::kDirect, grid);
    const auto via_z = oracle::grid_search(sc, anchors, oracle::ZPolicy::kOptimalZ, grid);
    const double solver_value = oracle::surrogate_value(res.alloc, sc, anchors, oracle::ZPolicy::kDirect);

    bool all_ok = true;
    auto report = [&](bool ok, const std::string& name, const std::string& detail) {
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    };
    const auto& r = res.residuals;
    report(res.converged, "converged", "outer=" + std::to_string(res.iters_outer));
    report(r.stationarity <= kVerifyResidualTol, "kkt stationarity", num(r.stationarity));
    report(r.complementary <= kVerifyResidualTol, "kkt complementary slackness", num(r.complementary));
    report(r.primal <= kVerifyResidualTol, "kkt primal feasibility", num(r.primal));
    report(r.dual <= kVerifyResidualTol, "kkt dual feasibility", num(r.dual));
    report(solver::check_feasible(res.alloc, sc).ok(), "allocation feasible", "");
    const double bound = direct.value + kVerifyGridRelTol * std::abs(direct.value);
    report(solver_value <= bound, "grid optimality",
           "solver " + num(solver_value) + " vs grid " + num(direct.value) + " (" +
               std::to_string(grid.points_per_axis) + " points/axis)");
    report(std::abs(via_z.value - direct.value) <= 1e-9 * std::abs(direct.value), "optimal-z grid agrees",
           num(via_z.value));
    return all_ok ? kExitOk : kExitError;
}

int cmd_gen_scenario(const Overrides& o) {
    const auto cfg = load(o);
    const auto sc = harness::generate_scenario(cfg.scenario);
    json users = json::array();
    for (const auto& u : sc.users) {
        users.push_back({{"h", u.link.h},
                         {"noise_w_per_hz", u.link.noise_var},
                         {"eve_p_w", u.link.eve_p},
                         {"eve_h", u.link.eve_h},
                         {"eve_noise_w_per_hz", u.link.eve_noise_var},
                         {"p_min_w", u.cost.p_min_w},
                         {"s_max_bits", u.cost.s_max_bits}});
    }
    const json doc = {{"seed", cfg.scenario.seed},
                      {"p_total_w", sc.p_total_w},
                      {"b_total_hz", sc.b_total_hz},
                      {"w1", sc.weights.latency},
                      {"w2", sc.weights.utility},
                      {"users", users}};
    emit(doc, o.out);
    return kExitOk;
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("secomm");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("SECOMM_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Secure semantic-communication resource allocation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", harness::version_string());

    Overrides o;
    auto* solve = app.add_subcommand("solve", "Run the allocation solver once");
    add_common(solve, o);
    solve->add_option("--out", o.out, "Output JSON file (stdout when omitted)");

    auto* sweep = app.add_subcommand("sweep", "Sweep one budget axis over all methods");
    add_common(sweep, o);
    sweep->add_option("--out", o.out, "Output directory for sweep.csv and manifest.json")->required();
    sweep->add_option("--axis", o.axis, "p_total_dbm | b_total_mhz | s_max_mbytes");
    sweep->add_option("--values", o.values, "lo:hi:step or a comma-separated list");
    sweep->add_flag("--record-timing", o.record_timing, "Write measured wall_ms into the CSV");

    auto* verify = app.add_subcommand("verify", "Check the solver against the grid oracle (N <= 3)");
    add_common(verify, o);

    auto* gen = app.add_subcommand("gen-scenario", "Write the generated scenario as JSON");
    add_common(gen, o);
    gen->add_option("--out", o.out, "Output JSON file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*solve) return cmd_solve(o);
        if (*sweep) return cmd_sweep(o);
        if (*verify) return cmd_verify(o);
        if (*gen) return cmd_gen_scenario(o);
    } catch (const secomm::config::ConfigError& e) {
        spdlog::error("{}", e.what());
    } catch (const secomm::InfeasibleError& e) {
        spdlog::error("infeasible: {}", e.what());
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
    }
    return kExitError;
}
