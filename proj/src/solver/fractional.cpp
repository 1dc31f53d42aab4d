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
#include <string>

#include "secomm/errors.hpp"
#include "secomm/solver.hpp"

namespace secomm::solver {

double quad_transform_value(double s, double r, double z) {
    if (!(s > 0.0)) throw DomainError("quad_transform_value: size must be positive");
    if (!(r > 0.0)) throw DomainError("quad_transform_value: rate must be positive");
    if (!(z > 0.0)) throw DomainError("quad_transform_value: z must be positive");
    return s * s * z + 1.0 / (4.0 * r * r * z);
}

std::vector<double> update_z(const Allocation& alloc, std::span<const channel::ScaAnchor> anchors,
                             const Scenario& scenario) {
    if (alloc.size() != scenario.size() || anchors.size() != scenario.size()) {
        throw DomainError("update_z: allocation and anchors need one entry per user");
    }
    std::vector<double> z(scenario.size());
    for (std::size_t n = 0; n < scenario.size(); ++n) {
        const double r = channel::surrogate_rate(alloc.p[n], alloc.b[n], scenario.users[n].link, anchors[n]);
        const double s = alloc.s[n];
        if (!(r > 0.0) || !(s > 0.0)) {
            throw DomainError("update_z: user " + std::to_string(n) + " has non-positive surrogate rate or size");
        }
        z[n] = 1.0 / (2.0 * r * s);
    }
    return z;
}

FpResult fractional_programming(std::span<const channel::ScaAnchor> anchors, const Allocation& init,
                                const Scenario& scenario, const SolverConfig& config) {
    config.validate();
    if (const auto report = check_feasible(init, scenario); !report.ok()) {
        throw InfeasibleError("fractional_programming: initial point infeasible: " + report.summary());
    }

    FpResult out;
    out.alloc = init;
    out.z = update_z(init, anchors, scenario);
    out.trace.push_back(TraceRecord{
        .k = 0,
        .j = 0,
        .surrogate_objective = semcost::surrogate_objective(init, scenario, anchors),
        .exact_objective = semcost::objective(init, scenario),
        .kkt_residual = 0.0,
        .warm_started_z = false,
        .starved = {},
        .alloc = init,
    });

    std::optional<KktWarmStart> warm;
    for (int j = 1; j <= config.j_max; ++j) {
        auto sol = kkt_solve(out.z, anchors, scenario, config, warm);
        warm = KktWarmStart{sol.multipliers.xi, sol.multipliers.gamma};
        out.residuals = kkt_residuals(sol.alloc, sol.multipliers, out.z, anchors, scenario);
        auto z_next = update_z(sol.alloc, anchors, scenario);

        double change = 0.0;
        for (std::size_t n = 0; n < z_next.size(); ++n) {
            change = std::max(change, std::abs(z_next[n] - out.z[n]) / out.z[n]);
        }
        out.trace.push_back(TraceRecord{
            .k = 0,
            .j = j,
            .surrogate_objective = semcost::surrogate_objective(sol.alloc, scenario, anchors),
            .exact_objective = semcost::objective(sol.alloc, scenario),
            .kkt_residual = out.residuals.max(),
            .warm_started_z = false,
            .starved = sol.starved,
            .alloc = sol.alloc,
        });
        out.alloc = std::move(sol.alloc);
        out.multipliers = std::move(sol.multipliers);
        out.z = std::move(z_next);
        out.iterations = j;
        if (change < config.fp_tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace secomm::solver
