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

#include "secomm/model.hpp"

#include <cmath>
#include <string>

#include "secomm/errors.hpp"

namespace secomm {

void Scenario::validate() const {
    if (users.empty()) throw DomainError("scenario: at least one user is required");
    if (!(p_total_w > 0.0) || !std::isfinite(p_total_w)) throw DomainError("scenario: p_total must be positive");
    if (!(b_total_hz > 0.0) || !std::isfinite(b_total_hz)) throw DomainError("scenario: b_total must be positive");
    if (!(weights.latency >= 0.0) || !(weights.utility >= 0.0) || !(weights.latency + weights.utility > 0.0)) {
        throw DomainError("scenario: weights must be non-negative and not both zero");
    }
    double p_min_sum = 0.0;
    for (std::size_t n = 0; n < users.size(); ++n) {
        const auto& u = users[n];
        try {
            u.link.validate();
            u.cost.validate();
        } catch (const DomainError& e) {
            throw DomainError("user " + std::to_string(n) + ": " + e.what());
        }
        if (u.cost.p_min_w < u.link.min_secure_power()) {
            throw PreconditionError("p_min " + std::to_string(u.cost.p_min_w) +
                                        " W does not keep the secrecy rate non-negative (needs >= " +
                                        std::to_string(u.link.min_secure_power()) + " W)",
                                    n);
        }
        p_min_sum += u.cost.p_min_w;
    }
    if (p_min_sum > p_total_w) {
        throw InfeasibleError("scenario: sum of minimum powers " + std::to_string(p_min_sum) +
                              " W exceeds p_total " + std::to_string(p_total_w) + " W");
    }
}

std::vector<channel::ScaAnchor> anchors_from(const std::vector<double>& bandwidths) {
    std::vector<channel::ScaAnchor> out;
    out.reserve(bandwidths.size());
    for (double b : bandwidths) {
        if (!(b >= channel::kBandwidthFloorHz)) throw DomainError("anchor bandwidth below 1 Hz: " + std::to_string(b));
        out.push_back(channel::ScaAnchor{b});
    }
    return out;
}

}  // namespace secomm
