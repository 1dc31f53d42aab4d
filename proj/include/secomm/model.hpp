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
#include <vector>

#include "secomm/channel.hpp"
#include "secomm/semcost.hpp"

namespace secomm {

using semcost::Weights;

struct UserProfile {
    channel::LinkParams link;
    semcost::SemanticCostParams cost;
};

/// A downlink FDMA instance: users plus the shared power and bandwidth budgets.
struct Scenario {
    std::vector<UserProfile> users;
    double p_total_w = 0.0;
    double b_total_hz = 0.0;
    Weights weights;

    [[nodiscard]] std::size_t size() const noexcept { return users.size(); }

    /// Throws InfeasibleError if the minimum powers exceed the budget,
    /// PreconditionError if a user's p_min cannot keep its secrecy rate
    /// non-negative, DomainError for malformed fields.
    void validate() const;
};

/// Decision vector (p, B, S), one entry per user.
struct Allocation {
    std::vector<double> p;  ///< W
    std::vector<double> b;  ///< Hz
    std::vector<double> s;  ///< bits

    Allocation() = default;
    explicit Allocation(std::size_t n) : p(n, 0.0), b(n, 0.0), s(n, 0.0) {}

    [[nodiscard]] std::size_t size() const noexcept { return p.size(); }
};

/// One SCA anchor per user, taken from a bandwidth vector.
[[nodiscard]] std::vector<channel::ScaAnchor> anchors_from(const std::vector<double>& bandwidths);

}  // namespace secomm
