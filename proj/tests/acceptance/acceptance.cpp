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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "secomm/channel.hpp"
#include "secomm/harness.hpp"
#include "secomm/objective.hpp"
#include "secomm/oracle.hpp"
#include "secomm/semcost.hpp"
#include "secomm/solver.hpp"

namespace {

using namespace secomm;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    channel::LinkParams link() {
        channel::LinkParams l;
        l.h = channel::gain_from_loss(channel::path_loss_db(uniform(0.035, 0.5)), uniform(-16.0, 16.0));
        l.noise_var = harness::noise_psd_w_per_hz(-174.0);
        l.eve_p = 1e-3;
        l.eve_h = 0.1 * l.h;
        l.eve_noise_var = l.noise_var;
        return l;
    }

private:
    std::mt19937_64 g_;
};

Outcome quad_transform_identity() {
    Rng rng(101);
    double worst = 0.0, worst_grid = -INFINITY;
    for (int i = 0; i < 1000; ++i) {
        const double s = rng.log_uniform(1.0, 2.4e8), r = rng.log_uniform(1e2, 1e9);
        const double ratio = s / r;
        const double z_star = 1.0 / (2 * r * s);
        worst = std::max(worst, std::abs(solver::quad_transform_value(s, r, z_star) - ratio) / ratio);
        if (i % 10 == 0) {
            // Geometric z grid over 4 decades either side, step 10^(1/500).
            for (int k = -2000; k <= 2000; ++k) {
                const double v = solver::quad_transform_value(s, r, z_star * std::pow(10.0, k / 500.0));
                worst_grid = std::max(worst_grid, (ratio - v) / ratio);
            }
        }
    }
    // A grid point can only tie the minimum up to rounding.
    const bool ok = worst <= 1e-9 && worst_grid <= 1e-12;
    return {ok, fmt("max rel err %.2e, best grid gain %.2e", worst, worst_grid)};
}

Outcome sca_majorization() {
    Rng rng(102);
    double worst_gap = -INFINITY, worst_anchor = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto l = rng.link();
        const double p = rng.uniform(1e-3, 10.0);
        const double b = rng.log_uniform(1.0, 2e7);
        const channel::ScaAnchor a{rng.log_uniform(1.0, 2e7)};
        const double exact = channel::secrecy_rate(p, b, l);
        const double scale = std::max(1.0, exact);
        worst_gap = std::max(worst_gap, (channel::surrogate_rate(p, b, l, a) - exact) / scale);
        const double at = channel::secrecy_rate(p, a.b_anchor, l);
        worst_anchor = std::max(worst_anchor, rel_err(channel::surrogate_rate(p, a.b_anchor, l, a), at));
    }
    return {worst_gap <= 1e-9 && worst_anchor <= 1e-9,
            fmt("max (surrogate - exact)/scale %.2e, anchor rel err %.2e", worst_gap, worst_anchor)};
}

Outcome derivatives() {
    Rng rng(103);
    const semcost::SemanticCostParams cost;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto l = rng.link();
        const double p = rng.uniform(1e-3, 10.0);
        const double b = rng.log_uniform(1e3, 2e7);
        const double w1 = rng.uniform(0.05, 0.95);
        const semcost::Weights w{w1, 1.0 - w1};
        const double s = rng.log_uniform(1e3, cost.s_max_bits);
        const auto fd_p = oracle::finite_diff([&](double x) { return channel::rate(x, b, l); }, p, {1e-6, 1e-3});
        const auto fd_b = oracle::finite_diff([&](double x) { return channel::rate(p, x, l); }, b, {1e-6, 1.0});
        const auto fd_e = oracle::finite_diff([&](double x) { return channel::eavesdrop_rate(x, l); }, b, {1e-6, 1.0});
        const auto fd_w = oracle::finite_diff([&](double x) { return semcost::size_cost(x, cost, w); }, s, {1e-6, 1.0});
        worst = std::max({worst, rel_err(fd_p.value, channel::d_rate_dp(p, b, l)),
                          rel_err(fd_b.value, channel::d_rate_dB(p, b, l)),
                          rel_err(fd_e.value, channel::d_eavesdrop_dB(b, l)),
                          rel_err(fd_w.value, semcost::d_size_cost(s, cost, w))});
    }
    return {worst <= 1e-6, fmt("max rel err %.2e over 4000 partials", worst)};
}

Outcome kkt_residuals_default() {
    const auto sc = harness::generate_scenario(harness::ScenarioSpec{});
    const auto res = solver::resource_allocation(sc, solver::SolverConfig{});
    const auto& r = res.residuals;
    bool duals_ok = res.multipliers.gamma >= 0 && res.multipliers.xi >= 0;
    for (double a : res.multipliers.alpha) duals_ok = duals_ok && a >= 0;
    for (double b : res.multipliers.beta) duals_ok = duals_ok && b >= 0;
    const bool feasible = solver::check_feasible(res.alloc, sc).ok();
    const bool ok = res.converged && feasible && duals_ok && r.stationarity <= 1e-6 && r.complementary <= 1e-6 &&
                    r.primal <= 1e-6 && r.dual <= 1e-6;
    return {ok, fmt("stationarity %.1e, complementary %.1e, primal %.1e, dual %.1e, converged %d, feasible %d",
                    r.stationarity, r.complementary, r.primal, r.dual, res.converged ? 1 : 0, feasible ? 1 : 0)};
}

Outcome small_instance_optimality() {
    struct Fixture {
        std::vector<double> d, shadow;
        double p_dbm, b_mhz, w1;
    };
    const std::vector<Fixture> fixtures{
        {{0.12, 0.38}, {0.0, 4.0}, 30.0, 2.0, 0.5},
        {{0.05, 0.45}, {-3.0, 6.0}, 33.0, 1.0, 0.3},
        {{0.2, 0.22}, {2.0, -2.0}, 27.0, 4.0, 0.7},
    };
    std::string detail;
    bool ok = true;
    for (const auto& f : fixtures) {
        harness::ScenarioSpec spec;
        spec.n_users = 2;
        spec.distances_km = f.d;
        spec.shadows_db = f.shadow;
        spec.p_total_dbm = f.p_dbm;
        spec.b_total_hz = f.b_mhz * 1e6;
        spec.weights = {f.w1, 1.0 - f.w1};
        const auto sc = harness::generate_scenario(spec);
        const auto res = solver::resource_allocation(sc, solver::SolverConfig{});
        const auto& anchors = res.state.anchors;
        const double mine = oracle::surrogate_value(res.alloc, sc, anchors, oracle::ZPolicy::kDirect);
        const auto grid = oracle::grid_search(sc, anchors, oracle::ZPolicy::kDirect, oracle::GridSpec{});
        const bool pass = mine <= grid.value + 0.02 * std::abs(grid.value);
        ok = ok && pass;
        detail += fmt("%s%.6g vs grid %.6g", detail.empty() ? "" : "; ", mine, grid.value);
    }
    return {ok, detail};
}

Outcome monotone_descent() {
    const solver::SolverConfig cfg{.eps0 = 1e-4, .k_max = 20, .j_max = 30};
    double worst_rise = -INFINITY;
    int unconverged = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        harness::ScenarioSpec spec;
        spec.seed = seed;
        const auto res = solver::resource_allocation(harness::generate_scenario(spec), cfg);
        if (!res.converged) ++unconverged;
        for (std::size_t i = 1; i < res.trace.size(); ++i) {
            const double prev = res.trace[i - 1].surrogate_objective;
            worst_rise = std::max(worst_rise, (res.trace[i].surrogate_objective - prev) / std::max(1.0, std::abs(prev)));
        }
    }
    return {worst_rise <= 1e-8 && unconverged == 0,
            fmt("largest scaled step increase %.2e, unconverged runs %d", worst_rise, unconverged)};
}

double random_median(const Scenario& sc, std::uint64_t scenario_seed) {
    std::vector<double> values;
    for (int d = 0; d < 20; ++d)
        values.push_back(semcost::objective(harness::baseline_random(sc, harness::draw_seed(scenario_seed, d)), sc));
    std::sort(values.begin(), values.end());
    return 0.5 * (values[9] + values[10]);
}

Outcome baseline_dominance() {
    const std::vector<Weights> weights{{0.3, 0.7}, {0.5, 0.5}, {0.7, 0.3}};
    std::vector<harness::ScenarioSpec> points;
    for (double p = 30; p <= 40; p += 2) points.push_back(harness::with_axis_value({}, harness::Axis::kPowerTotalDbm, p));
    for (double b : {6.0, 8.0, 10.0, 12.0})
        points.push_back(harness::with_axis_value({}, harness::Axis::kBandwidthTotalMhz, b));
    int losses = 0, total = 0;
    double tightest = INFINITY;
    for (const auto& w : weights) {
        for (auto spec : points) {
            spec.weights = w;
            const auto sc = harness::generate_scenario(spec);
            const double mine = solver::resource_allocation(sc, solver::SolverConfig{}).metrics.objective;
            const double rnd = random_median(sc, spec.seed);
            const double eq = semcost::objective(harness::baseline_equal(sc), sc);
            const double margin = std::min(rnd, eq) - mine;
            tightest = std::min(tightest, margin);
            ++total;
            if (!(margin > 0.0)) ++losses;
        }
    }
    return {losses == 0, fmt("%d/%d points dominated, smallest margin %.4g", total - losses, total, tightest)};
}

struct TrendResult {
    Outcome a, b, c, d;
};

TrendResult trends() {
    TrendResult out;
    // (a), (b): proposed T and U along p_total at every weight pair.
    int t_rises = 0, u_drops = 0;
    for (const Weights& w : {Weights{0.3, 0.7}, Weights{0.5, 0.5}, Weights{0.7, 0.3}}) {
        double prev_t = INFINITY, prev_u = -INFINITY;
        for (double p = 30; p <= 40; p += 2) {
            auto spec = harness::with_axis_value({}, harness::Axis::kPowerTotalDbm, p);
            spec.weights = w;
            const auto m = solver::resource_allocation(harness::generate_scenario(spec), solver::SolverConfig{}).metrics;
            if (m.t_total > prev_t) ++t_rises;
            if (m.u_total < prev_u) ++u_drops;
            prev_t = m.t_total;
            prev_u = m.u_total;
        }
    }
    out.a = {t_rises == 0, fmt("%d increases of T over 3x5 steps", t_rises)};
    out.b = {u_drops == 0, fmt("%d decreases of U over 3x5 steps", u_drops)};

    // (c), (d): objective against s_max for four budget settings, smallest first.
    struct Budget {
        double p_dbm, b_mhz;
    };
    const std::vector<Budget> budgets{{30, 6}, {34, 8}, {37, 10}, {40, 12}};
    const auto s_values = harness::parse_values("0.05:0.40:0.05");
    bool c_ok = true, d_ok = true;
    double prev_converge = 0.0;
    std::string c_detail, d_detail;
    for (const auto& bud : budgets) {
        std::vector<double> curve;
        for (double s : s_values) {
            auto spec = harness::with_axis_value({}, harness::Axis::kSizeMaxMbytes, s);
            spec.p_total_dbm = bud.p_dbm;
            spec.b_total_hz = bud.b_mhz * 1e6;
            spec.weights = {0.3, 0.7};
            curve.push_back(
                solver::resource_allocation(harness::generate_scenario(spec), solver::SolverConfig{}).metrics.objective);
        }
        const double last = curve.back();
        const double tail = std::abs(curve[curve.size() - 1] - curve[curve.size() - 2]) / std::abs(last);
        const bool decreasing_start = curve[1] < curve[0];
        c_ok = c_ok && tail < 0.005 && decreasing_start;
        c_detail += fmt("%s%.0fdBm/%.0fMHz tail %.2e first drop %.3g", c_detail.empty() ? "" : "; ", bud.p_dbm,
                        bud.b_mhz, tail, curve[0] - curve[1]);
        double converge = s_values.back();
        for (std::size_t i = 0; i < curve.size(); ++i) {
            if (std::abs(curve[i] - last) < 0.005 * std::abs(last)) {
                converge = s_values[i];
                break;
            }
        }
        d_ok = d_ok && converge >= prev_converge;
        prev_converge = converge;
        d_detail += fmt("%s%.2f", d_detail.empty() ? "converge s_max MB: " : ", ", converge);
    }
    out.c = {c_ok, c_detail};
    out.d = {d_ok, d_detail};
    return out;
}

Outcome linear_complexity() {
    const std::vector<std::size_t> sizes{10, 20, 40};
    std::vector<double> medians;
    for (std::size_t n : sizes) {
        harness::ScenarioSpec spec;
        spec.n_users = n;
        const double scale = static_cast<double>(n) / 30.0;
        spec.p_total_dbm += 10.0 * std::log10(scale);
        spec.b_total_hz *= scale;
        const auto sc = harness::generate_scenario(spec);
        std::vector<double> times;
        for (int rep = 0; rep < 5; ++rep) {
            const auto t0 = Clock::now();
            const auto res = solver::resource_allocation(sc, solver::SolverConfig{});
            times.push_back(seconds_since(t0));
            (void)res;
        }
        std::nth_element(times.begin(), times.begin() + 2, times.end());
        medians.push_back(times[2]);
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        num += medians[i] * static_cast<double>(sizes[i]);
        den += static_cast<double>(sizes[i] * sizes[i]);
    }
    const double c = num / den;
    double worst = 0.0;
    std::string detail;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double dev = medians[i] / (c * static_cast<double>(sizes[i])) - 1.0;
        worst = std::max(worst, std::abs(dev));
        detail += fmt("N=%zu %.3fs (%+.0f%%) ", sizes[i], medians[i], 100 * dev);
    }
    return {worst <= 0.35, detail + fmt("c=%.4f s/user", c)};
}

Outcome determinism() {
#ifdef SECOMM_CLI_PATH
    namespace fs = std::filesystem;
    const fs::path work = fs::current_path() / "acceptance_determinism";
    fs::remove_all(work);
    std::vector<std::string> csvs;
    for (const char* threads : {"1", "0", "4"}) {
        const fs::path out = work / (std::string("t") + threads);
        const std::string cmd = std::string("\"") + SECOMM_CLI_PATH + "\" sweep --config \"" + SECOMM_CONFIG_DIR +
                                "/default.json\" --axis p_total_dbm --values 30:40:2 --threads " + threads +
                                " --out \"" + out.string() + "\"";
        if (std::system(cmd.c_str()) != 0) return {false, "sweep command failed: " + cmd};
        std::ifstream in(out / "sweep.csv", std::ios::binary);
        csvs.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    const bool same = !csvs[0].empty() && csvs[0] == csvs[1] && csvs[0] == csvs[2];
    return {same, fmt("threads 1 / all / 4: %zu bytes, %s", csvs[0].size(), same ? "identical" : "differ")};
#else
    return {false, "command-line tool not built"};
#endif
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](const char* name, double limit_s, const std::function<Outcome()>& fn) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = seconds_since(t0);
        const bool in_time = limit_s <= 0.0 || elapsed < limit_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("%s %s: %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", name, o.detail.c_str(), elapsed,
                    in_time ? "" : fmt(", limit %.0fs", limit_s).c_str());
        std::fflush(stdout);
    };

    report("quadratic-transform identity", 1.0, quad_transform_identity);
    report("SCA majorization", 1.0, sca_majorization);
    report("derivative correctness", 5.0, derivatives);
    report("KKT residuals (N=30)", 30.0, kkt_residuals_default);
    report("small-instance optimality (3 fixtures, N=2)", 300.0, small_instance_optimality);
    report("monotone descent (10 seeds)", 0.0, monotone_descent);
    report("baseline dominance", 600.0, baseline_dominance);

    TrendResult tr;
    report("trend (a) T non-increasing in p_total", 0.0, [&] {
        tr = trends();
        return tr.a;
    });
    report("trend (b) U non-decreasing in p_total", 0.0, [&] { return tr.b; });
    report("trend (c) objective decreases then flattens in s_max", 0.0, [&] { return tr.c; });
    report("trend (d) converge point grows with budget", 0.0, [&] { return tr.d; });
    report("linear complexity in N", 0.0, linear_complexity);
    report("determinism across thread counts", 0.0, determinism);

    std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
