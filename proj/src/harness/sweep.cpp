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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "secomm/errors.hpp"
#include "secomm/harness.hpp"
#include "secomm/objective.hpp"

namespace secomm::harness {

std::string_view axis_name(Axis axis) noexcept {
    switch (axis) {
        case Axis::kPowerTotalDbm: return "p_total_dbm";
        case Axis::kBandwidthTotalMhz: return "b_total_mhz";
        case Axis::kSizeMaxMbytes: return "s_max_mbytes";
    }
    return "?";
}

std::optional<Axis> parse_axis(std::string_view name) noexcept {
    for (Axis a : {Axis::kPowerTotalDbm, Axis::kBandwidthTotalMhz, Axis::kSizeMaxMbytes})
        if (axis_name(a) == name) return a;
    return std::nullopt;
}

ScenarioSpec with_axis_value(ScenarioSpec spec, Axis axis, double value) {
    switch (axis) {
        case Axis::kPowerTotalDbm: spec.p_total_dbm = value; break;
        case Axis::kBandwidthTotalMhz: spec.b_total_hz = value * 1e6; break;
        case Axis::kSizeMaxMbytes: spec.cost.s_max_bits = value * kBitsPerMegabyte; break;
    }
    return spec;
}

std::string_view method_name(MethodKind kind) noexcept {
    switch (kind) {
        case MethodKind::kProposed: return "proposed";
        case MethodKind::kRandom: return "random";
        case MethodKind::kEqual: return "equal";
    }
    return "?";
}

std::optional<MethodKind> parse_method(std::string_view name) noexcept {
    for (MethodKind m : {MethodKind::kProposed, MethodKind::kRandom, MethodKind::kEqual})
        if (method_name(m) == name) return m;
    return std::nullopt;
}

std::vector<Method> default_methods() {
    return {
        {MethodKind::kProposed, {0.3, 0.7}},
        {MethodKind::kProposed, {0.5, 0.5}},
        {MethodKind::kProposed, {0.7, 0.3}},
        {MethodKind::kRandom, {0.5, 0.5}},
        {MethodKind::kEqual, {0.5, 0.5}},
    };
}

std::uint64_t draw_seed(std::uint64_t scenario_seed, int draw) noexcept {
    // splitmix64 finalizer over the pair
    std::uint64_t z = scenario_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(draw) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<double> parse_values(std::string_view text) {
    auto parse_one = [&](std::string_view tok) {
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v))
            throw std::invalid_argument("bad number '" + std::string(tok) + "' in values '" + std::string(text) + "'");
        return v;
    };

    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
            throw std::invalid_argument("range must be lo:hi:step, got '" + std::string(text) + "'");
        const double lo = parse_one(text.substr(0, c1));
        const double hi = parse_one(text.substr(c1 + 1, c2 - c1 - 1));
        const double step = parse_one(text.substr(c2 + 1));
        if (!(step > 0.0) || hi < lo) throw std::invalid_argument("range needs step > 0 and hi >= lo");
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
        if (count > 100000) throw std::invalid_argument("range has too many points");
        for (std::size_t k = 0; k < count; ++k) out.push_back(lo + static_cast<double>(k) * step);
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto comma = text.find(',', start);
            const auto end = comma == std::string_view::npos ? text.size() : comma;
            out.push_back(parse_one(text.substr(start, end - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    return out;
}

namespace {

struct PointOutcome {
    SweepRow row;
    double wall_ms = 0.0;
    std::string error;
};

void fill_metrics(SweepRow& row, const semcost::MetricsReport& m) {
    row.t_total = m.t_total;
    row.u_total = m.u_total;
    row.objective = m.objective;
}

PointOutcome run_point(const ScenarioSpec& base, Axis axis, double value, const Method& method,
                       const SweepOptions& opt) {
    PointOutcome out;
    out.row.axis = axis;
    out.row.axis_value = value;
    out.row.method = method.kind;
    out.row.weights = method.weights;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ScenarioSpec spec = with_axis_value(base, axis, value);
        spec.weights = method.weights;
        const Scenario sc = generate_scenario(spec);
        switch (method.kind) {
            case MethodKind::kProposed: {
                const auto res = solver::resource_allocation(sc, opt.solver);
                fill_metrics(out.row, res.metrics);
                out.row.converged = res.converged;
                out.row.iters_outer = res.iters_outer;
                out.row.iters_fp_total = res.iters_fp_total;
                break;
            }
            case MethodKind::kRandom: {
                if (opt.random_draws < 1) throw DomainError("random_draws must be positive");
                std::vector<semcost::MetricsReport> draws;
                draws.reserve(static_cast<std::size_t>(opt.random_draws));
                for (int d = 0; d < opt.random_draws; ++d)
                    draws.push_back(semcost::evaluate_exact(baseline_random(sc, draw_seed(spec.seed, d)), sc));
                std::stable_sort(draws.begin(), draws.end(),
                                 [](const auto& a, const auto& b) { return a.objective < b.objective; });
                fill_metrics(out.row, draws[(draws.size() - 1) / 2]);
                out.row.converged = true;
                break;
            }
            case MethodKind::kEqual:
                fill_metrics(out.row, semcost::evaluate_exact(baseline_equal(sc, opt.equal_s_fraction), sc));
                out.row.converged = true;
                break;
        }
    } catch (const std::exception& e) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        out.row.t_total = out.row.u_total = out.row.objective = nan;
        out.row.converged = false;
        out.error = std::string(axis_name(axis)) + "=" + std::to_string(value) + " " +
                    std::string(method_name(method.kind)) + ": " + e.what();
    }
    out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace

SweepResult sweep(const ScenarioSpec& spec, Axis axis, std::span<const double> values,
                  std::span<const Method> methods, const SweepOptions& options) {
    options.solver.validate();
    spec.validate();
    if (values.empty()) throw DomainError("sweep: no axis values");
    if (!std::is_sorted(values.begin(), values.end(), std::less_equal<>{}))
        throw DomainError("sweep: axis values must be strictly ascending");
    const std::size_t n_tasks = values.size() * methods.size();
    std::vector<PointOutcome> outcomes(n_tasks);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < n_tasks; t = next++)
            outcomes[t] = run_point(spec, axis, values[t / methods.size()], methods[t % methods.size()], options);
    };
    const std::size_t wanted = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
    const std::size_t n_threads = std::clamp<std::size_t>(wanted, 1, std::max<std::size_t>(n_tasks, 1));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    }

    SweepResult result;
    result.axis = axis;
    result.values.assign(values.begin(), values.end());
    for (auto& o : outcomes) {
        o.row.wall_ms = options.record_timing ? o.wall_ms : 0.0;
        result.rows.push_back(o.row);
        result.wall_ms.push_back(o.wall_ms);
        if (!o.error.empty()) result.errors.push_back(std::move(o.error));
    }
    return result;
}

}  // namespace secomm::harness
