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
#include <cmath>
#include <limits>

#include "secomm/errors.hpp"
#include "secomm/solver.hpp"

namespace secomm::solver {

void SolverConfig::validate() const {
    if (!(eps0 > 0.0)) throw DomainError("solver config: eps0 must be positive");
    if (k_max < 1) throw DomainError("solver config: k_max must be >= 1");
    if (j_max < 1) throw DomainError("solver config: j_max must be >= 1");
    if (!(fp_tol > 0.0)) throw DomainError("solver config: fp_tol must be positive");
    if (!(bisect_tol > 0.0)) throw DomainError("solver config: bisect_tol must be positive");
    if (bisect_max_iter < 1) throw DomainError("solver config: bisect_max_iter must be >= 1");
}

Allocation initial_allocation(const Scenario& scenario) {
    const std::size_t n_users = scenario.size();
    Allocation x(n_users);
    // Equal power shares, with users whose share falls below p_min pinned there and
    // the rest of the budget re-split among the others.
    std::vector<bool> pinned(n_users, false);
    for (;;) {
        double remaining = scenario.p_total_w;
        std::size_t free_users = 0;
        for (std::size_t n = 0; n < n_users; ++n) {
            if (pinned[n]) {
                remaining -= scenario.users[n].cost.p_min_w;
            } else {
                ++free_users;
            }
        }
        if (free_users == 0) break;
        const double share = remaining / static_cast<double>(free_users);
        bool changed = false;
        for (std::size_t n = 0; n < n_users; ++n) {
            if (!pinned[n] && share < scenario.users[n].cost.p_min_w) {
                pinned[n] = true;
                changed = true;
            }
        }
        if (!changed) {
            for (std::size_t n = 0; n < n_users; ++n) x.p[n] = pinned[n] ? scenario.users[n].cost.p_min_w : share;
            break;
        }
    }
    for (std::size_t n = 0; n < n_users; ++n) {
        if (pinned[n]) x.p[n] = scenario.users[n].cost.p_min_w;
        x.b[n] = scenario.b_total_hz / static_cast<double>(n_users);
        x.s[n] = scenario.users[n].cost.s_max_bits / 2.0;
    }
    return x;
}

double solution_change(const Allocation& next, const Allocation& prev) {
    constexpr double kPowerFloorW = 1e-3;
    constexpr double kBandwidthFloorHz = 1e3;
    constexpr double kSizeFloorBits = 1e3;
    double change = 0.0;
    auto accumulate = [&](const std::vector<double>& a, const std::vector<double>& b, double unit) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            change = std::max(change, std::abs(a[i] - b[i]) / std::max(std::abs(b[i]), unit));
        }
    };
    accumulate(next.p, prev.p, kPowerFloorW);
    accumulate(next.b, prev.b, kBandwidthFloorHz);
    accumulate(next.s, prev.s, kSizeFloorBits);
    return change;
}

AllocationResult resource_allocation(const Scenario& scenario, const SolverConfig& config,
                                     const std::optional<Allocation>& init) {
    scenario.validate();
    config.validate();
    Allocation x = init ? *init : initial_allocation(scenario);
    if (const auto report = check_feasible(x, scenario); !report.ok()) {
        throw InfeasibleError("resource_allocation: initial point infeasible: " + report.summary());
    }

    AllocationResult out;
    Allocation best = x;
    double best_objective = std::numeric_limits<double>::infinity();
    KktMultipliers best_mult;
    KktResiduals best_res;
    std::vector<channel::ScaAnchor> best_anchors;

    for (int k = 1; k <= config.k_max; ++k) {
        auto anchors = anchors_from(x.b);
        auto fp = fractional_programming(anchors, x, scenario, config);
        for (auto& rec : fp.trace) {
            rec.k = k;
            rec.warm_started_z = (rec.j == 0 && k > 1);
            out.trace.push_back(std::move(rec));
        }
        const double change = solution_change(fp.alloc, x);
        x = fp.alloc;

        out.iters_outer = k;
        out.iters_fp_total += fp.iterations;
        out.state = SolverState{fp.z, anchors, k, out.iters_fp_total, k};
        out.multipliers = fp.multipliers;
        out.residuals = fp.residuals;

        const double exact = semcost::objective(x, scenario);
        if (exact < best_objective) {
            best_objective = exact;
            best = x;
            best_mult = fp.multipliers;
            best_res = fp.residuals;
            best_anchors = anchors;
        }
        if (change <= config.eps0) {
            out.converged = true;
            break;
        }
    }

    if (!out.converged) {
        x = best;
        out.multipliers = best_mult;
        out.residuals = best_res;
        out.state.anchors = best_anchors;
    }
    out.alloc = x;
    out.metrics = semcost::evaluate_exact(x, scenario);
    out.surrogate_objective = semcost::surrogate_objective(x, scenario, out.state.anchors);
    return out;
}

}  // namespace secomm::solver
