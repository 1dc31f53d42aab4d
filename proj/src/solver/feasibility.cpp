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

#include <cmath>
#include <sstream>

#include "secomm/solver.hpp"

namespace secomm::solver {

const char* to_string(Constraint c) noexcept {
    switch (c) {
        case Constraint::kSizeRange: return "size-range";
        case Constraint::kPowerFloor: return "power-floor";
        case Constraint::kBandwidthFloor: return "bandwidth-floor";
        case Constraint::kPowerBudget: return "power-budget";
        case Constraint::kBandwidthBudget: return "bandwidth-budget";
        case Constraint::kSecureMinPower: return "secure-min-power";
        case Constraint::kShape: return "shape";
    }
    return "unknown";
}

std::string Violation::describe() const {
    std::ostringstream os;
    os << to_string(constraint);
    if (user) os << " (user " << *user << ")";
    os << " missed by " << slack;
    return os.str();
}

std::string FeasibilityReport::summary() const {
    if (ok()) return "feasible";
    std::ostringstream os;
    os << violations.size() << " violation(s): ";
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].describe();
    }
    return os.str();
}

FeasibilityReport check_feasible(const Allocation& alloc, const Scenario& scenario) {
    FeasibilityReport report;
    const std::size_t n_users = scenario.size();
    if (alloc.p.size() != n_users || alloc.b.size() != n_users || alloc.s.size() != n_users) {
        report.violations.push_back({Constraint::kShape, std::nullopt,
                                     static_cast<double>(alloc.p.size()) - static_cast<double>(n_users)});
        return report;
    }

    double p_sum = 0.0;
    double b_sum = 0.0;
    for (std::size_t n = 0; n < n_users; ++n) {
        const auto& cost = scenario.users[n].cost;
        const auto& link = scenario.users[n].link;
        const double p = alloc.p[n];
        const double b = alloc.b[n];
        const double s = alloc.s[n];
        if (!(p >= cost.p_min_w)) report.violations.push_back({Constraint::kPowerFloor, n, cost.p_min_w - p});
        if (!(b >= channel::kBandwidthFloorHz)) {
            report.violations.push_back({Constraint::kBandwidthFloor, n, channel::kBandwidthFloorHz - b});
        }
        if (!(s > 0.0)) report.violations.push_back({Constraint::kSizeRange, n, -s});
        if (!(s <= cost.s_max_bits)) report.violations.push_back({Constraint::kSizeRange, n, s - cost.s_max_bits});
        if (cost.p_min_w < link.min_secure_power()) {
            report.violations.push_back({Constraint::kSecureMinPower, n, link.min_secure_power() - cost.p_min_w});
        }
        p_sum += p;
        b_sum += b;
    }
    if (!(p_sum <= scenario.p_total_w * (1.0 + kBudgetSlack))) {
        report.violations.push_back({Constraint::kPowerBudget, std::nullopt, p_sum - scenario.p_total_w});
    }
    if (!(b_sum <= scenario.b_total_hz * (1.0 + kBudgetSlack))) {
        report.violations.push_back({Constraint::kBandwidthBudget, std::nullopt, b_sum - scenario.b_total_hz});
    }
    return report;
}

}  // namespace secomm::solver
