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

#include <cstddef>
#include <span>
#include <vector>

#include "secomm/model.hpp"

namespace secomm::semcost {

struct UserMetrics {
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double rate = 0.0;  ///< secrecy rate (exact) or surrogate rate, per the evaluation
    double utility = 0.0;
};

struct MetricsReport {
    std::vector<UserMetrics> users;
    double t_total = 0.0;
    double u_total = 0.0;
    double objective = 0.0;  ///< sum of w1 (T1+T2+T3) - w2 U
};

/// Metrics with the true secrecy rate in the transmission time.
[[nodiscard]] MetricsReport evaluate_exact(const Allocation& alloc, const Scenario& scenario);

/// Metrics with the SCA surrogate rate at the given anchors.
[[nodiscard]] MetricsReport evaluate_surrogate(const Allocation& alloc, const Scenario& scenario,
                                               std::span<const channel::ScaAnchor> anchors);

/// Weighted latency-minus-utility objective with exact rates. Throws
/// InfeasibleError on an infeasible allocation.
[[nodiscard]] double objective(const Allocation& alloc, const Scenario& scenario);

/// The same objective with surrogate rates.
[[nodiscard]] double surrogate_objective(const Allocation& alloc, const Scenario& scenario,
                                         std::span<const channel::ScaAnchor> anchors);

}  // namespace secomm::semcost
