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

#include "secomm/objective.hpp"

#include <string>

#include "secomm/errors.hpp"
#include "secomm/solver.hpp"

namespace secomm::semcost {
namespace {

template <class ModelFor>
MetricsReport evaluate(const Allocation& alloc, const Scenario& scenario, ModelFor&& model_for) {
    const auto feasible = solver::check_feasible(alloc, scenario);
    if (!feasible.ok()) throw InfeasibleError("objective: " + feasible.summary());

    MetricsReport report;
    report.users.reserve(scenario.size());
    const Weights w = scenario.weights;
    for (std::size_t n = 0; n < scenario.size(); ++n) {
        const auto& user = scenario.users[n];
        const RateModel model = model_for(n);
        const Latency lat = latency_components(alloc.s[n], alloc.p[n], alloc.b[n], user.link, model, user.cost, n);
        UserMetrics m{
            .t1 = lat.t1,
            .t2 = lat.t2,
            .t3 = lat.t3,
            .rate = selected_rate(alloc.p[n], alloc.b[n], user.link, model, n),
            .utility = utility(alloc.s[n], user.cost),
        };
        report.t_total += lat.total();
        report.u_total += m.utility;
        report.objective += w.latency * lat.total() - w.utility * m.utility;
        report.users.push_back(m);
    }
    return report;
}

}  // namespace

MetricsReport evaluate_exact(const Allocation& alloc, const Scenario& scenario) {
    return evaluate(alloc, scenario, [](std::size_t) { return RateModel{ExactRate{}}; });
}

MetricsReport evaluate_surrogate(const Allocation& alloc, const Scenario& scenario,
                                 std::span<const channel::ScaAnchor> anchors) {
    if (anchors.size() != scenario.size()) throw DomainError("evaluate_surrogate: one anchor per user required");
    return evaluate(alloc, scenario, [&](std::size_t n) { return RateModel{anchors[n]}; });
}

double objective(const Allocation& alloc, const Scenario& scenario) {
    return evaluate_exact(alloc, scenario).objective;
}

double surrogate_objective(const Allocation& alloc, const Scenario& scenario,
                           std::span<const channel::ScaAnchor> anchors) {
    return evaluate_surrogate(alloc, scenario, anchors).objective;
}

}  // namespace secomm::semcost
