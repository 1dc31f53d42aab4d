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
#include <optional>
#include <variant>

#include "secomm/channel.hpp"

namespace secomm::semcost {

/// Smallest semantic-information size (bits) the solver searches.
inline constexpr double kSizeFloorBits = 1.0;

/// Fitted cost constants of one user's semantic pipeline.
///
/// Server extraction needs y2 + c1 (s/D - 1)^c2 cycles, where y2 = y2_coeff * D is
/// the probability-graph construction cost. Recovery at the user needs
/// c3 s^-c4 cycles, and recovering from s bits yields utility 1 - exp(-c5 s).
/// The defaults are a desk-scale calibration, not published constants.
struct SemanticCostParams {
    double d_data_bits = 8e8;  // 100 MB
    double c1 = 5e9;
    int c2 = 2;
    double c3 = 2e14;
    double c4 = 1.0;
    double c5 = 2e-6;
    double y2_coeff = 1.0;  // cycles per original bit
    double f_server_hz = 10e9;
    double g_user_hz = 2e9;
    double s_max_bits = 2.4e8;  // 30 MB
    double p_min_w = 1e-3;      // 0 dBm

    void validate() const;
};

struct Weights {
    double latency = 0.5;  ///< omega_1
    double utility = 0.5;  ///< omega_2
};

[[nodiscard]] double server_cycles(double s, const SemanticCostParams& params);
[[nodiscard]] double d_server_cycles(double s, const SemanticCostParams& params);
[[nodiscard]] double user_cycles(double s, const SemanticCostParams& params);
[[nodiscard]] double d_user_cycles(double s, const SemanticCostParams& params);
[[nodiscard]] double utility(double s, const SemanticCostParams& params);
[[nodiscard]] double d_utility(double s, const SemanticCostParams& params);

/// Size-only part of a user's cost: w1 (T1 + T3) - w2 U. Convex in s.
[[nodiscard]] double size_cost(double s, const SemanticCostParams& params, Weights weights);
[[nodiscard]] double d_size_cost(double s, const SemanticCostParams& params, Weights weights);

/// Selects which rate divides the payload in the transmission time.
struct ExactRate {};
using RateModel = std::variant<ExactRate, channel::ScaAnchor>;

[[nodiscard]] double selected_rate(double p, double b, const channel::LinkParams& link, const RateModel& model,
                                   std::optional<std::size_t> user = std::nullopt);

struct Latency {
    double t1 = 0.0;  ///< server extraction (s)
    double t2 = 0.0;  ///< transmission (s)
    double t3 = 0.0;  ///< user recovery (s)

    [[nodiscard]] double total() const noexcept { return t1 + t2 + t3; }
};

[[nodiscard]] Latency latency_components(double s, double p, double b, const channel::LinkParams& link,
                                         const RateModel& model, const SemanticCostParams& params,
                                         std::optional<std::size_t> user = std::nullopt);

}  // namespace secomm::semcost
