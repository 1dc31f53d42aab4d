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
#include <string>
#include <vector>

#include "detail/rng.hpp"
#include "secomm/errors.hpp"
#include "secomm/harness.hpp"

namespace secomm::harness {
namespace {

// Splits `total` proportionally to `shares`; entries below their floor are pinned
// to it and the remainder is redistributed among the rest until none violate.
std::vector<double> lifted_split(const std::vector<double>& shares, double total, const std::vector<double>& floors) {
    const std::size_t n = shares.size();
    std::vector<bool> pinned(n, false);
    std::vector<double> out(n, 0.0);
    for (std::size_t round = 0; round <= n; ++round) {
        double free_total = total;
        double free_shares = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pinned[i]) free_total -= floors[i];
            else free_shares += shares[i];
        }
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (pinned[i]) {
                out[i] = floors[i];
                continue;
            }
            out[i] = free_shares > 0.0 ? free_total * shares[i] / free_shares : free_total;
            if (out[i] < floors[i]) {
                pinned[i] = true;
                changed = true;
            }
        }
        if (!changed) break;
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], floors[i]);
    return out;
}

}  // namespace

Allocation baseline_random(const Scenario& scenario, std::uint64_t seed) {
    scenario.validate();
    const std::size_t n = scenario.size();
    detail::Rng rng(seed);
    Allocation a(n);
    std::vector<double> p_share(n), b_share(n), p_floor(n), b_floor(n, channel::kBandwidthFloorHz);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = scenario.users[i].cost;
        a.s[i] = std::max(semcost::kSizeFloorBits, rng.uniform_open() * c.s_max_bits);
        p_share[i] = rng.exponential();
        b_share[i] = rng.exponential();
        p_floor[i] = c.p_min_w;
    }
    a.p = lifted_split(p_share, scenario.p_total_w, p_floor);
    a.b = lifted_split(b_share, scenario.b_total_hz, b_floor);
    return a;
}

Allocation baseline_equal(const Scenario& scenario, double s_fraction) {
    scenario.validate();
    if (!(s_fraction > 0.0 && s_fraction <= 1.0)) throw DomainError("s_fraction must lie in (0, 1]");
    const std::size_t n = scenario.size();
    Allocation a(n);
    std::vector<double> ones(n, 1.0), p_floor(n), b_floor(n, channel::kBandwidthFloorHz);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = scenario.users[i].cost;
        a.s[i] = std::max(semcost::kSizeFloorBits, s_fraction * c.s_max_bits);
        p_floor[i] = c.p_min_w;
        if (scenario.p_total_w / static_cast<double>(n) < c.p_min_w)
            throw InfeasibleError("user " + std::to_string(i) + ": equal power share is below p_min");
    }
    a.p = lifted_split(ones, scenario.p_total_w, p_floor);
    a.b = lifted_split(ones, scenario.b_total_hz, b_floor);
    return a;
}

}  // namespace secomm::harness
