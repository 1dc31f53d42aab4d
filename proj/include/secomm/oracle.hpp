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
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "secomm/model.hpp"

namespace secomm::oracle {

inline constexpr double kMaxGridEvaluations = 1e8;

enum class ZPolicy {
    kDirect,    ///< surrogate latency s/R per user
    kOptimalZ,  ///< quadratic-transform value at z = 1/(2 R s)
};

struct GridSpec {
    int points_per_axis = 64;
    /// Budget-usage fractions tried for power and bandwidth; 1 exhausts the budget.
    std::vector<double> budget_fractions{1.0, 0.9, 0.75, 0.5};
    /// Re-grid once around the coarse best at the same resolution.
    bool refine = true;

    void validate() const;
};

struct GridResult {
    Allocation alloc;
    double value = 0.0;
    std::uint64_t evaluations = 0;  ///< (split, user, size) triples scored
};

/// Upper bound on the evaluations grid_search would spend for `n_users`.
[[nodiscard]] double estimated_evaluations(std::size_t n_users, const GridSpec& grid);

/// Exhaustive minimization of the surrogate objective for N <= 3. Power and
/// bandwidth are enumerated as budget splits (first N-1 users gridded, the
/// last takes the remainder); sizes use a log-spaced grid minimized per user.
/// Throws DomainError for N > 3 or when the grid would exceed kMaxGridEvaluations.
[[nodiscard]] GridResult grid_search(const Scenario& scenario, std::span<const channel::ScaAnchor> anchors,
                                     ZPolicy policy, const GridSpec& grid);

/// Surrogate objective of one allocation computed from channel/semcost primitives
/// only. Returns +inf when a surrogate rate is not positive.
[[nodiscard]] double surrogate_value(const Allocation& alloc, const Scenario& scenario,
                                     std::span<const channel::ScaAnchor> anchors, ZPolicy policy);

struct StepPolicy {
    double rel = 1e-6;
    double unit = 1.0;  ///< absolute step is at least 1e-9 * unit

    [[nodiscard]] double step(double x) const noexcept;
};

struct Derivative {
    double value = 0.0;  ///< central difference D(h)
    double error = 0.0;  ///< |D(h) - D(h/2)|
};

/// Central difference of a scalar function. Throws DomainError if any evaluation
/// is non-finite.
[[nodiscard]] Derivative finite_diff(const std::function<double(double)>& fn, double x,
                                     const StepPolicy& policy = {});

/// Gradient of a scalar field; `units` gives one StepPolicy unit per coordinate
/// (empty means all ones).
[[nodiscard]] std::vector<Derivative> finite_diff(const std::function<double(std::span<const double>)>& fn,
                                                  std::span<const double> point, std::span<const double> units = {},
                                                  double rel = 1e-6);

}  // namespace secomm::oracle
