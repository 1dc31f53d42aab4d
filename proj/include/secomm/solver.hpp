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
#include <span>
#include <string>
#include <vector>

#include "secomm/channel.hpp"
#include "secomm/model.hpp"
#include "secomm/objective.hpp"

namespace secomm::solver {

struct SolverConfig {
    double eps0 = 1e-4;         ///< outer convergence tolerance on the scaled solution change
    int k_max = 20;             ///< outer (re-anchoring) iterations
    int j_max = 30;             ///< fractional-programming iterations per outer step
    double fp_tol = 1e-7;       ///< stop fractional programming once max relative z change is below this
    double bisect_tol = 1e-10;  ///< relative bracket width for every 1-D root search
    int bisect_max_iter = 200;

    void validate() const;
};

// ---- feasibility -----------------------------------------------------------

enum class Constraint {
    kSizeRange,        ///< 0 < S_n <= S_n^max
    kPowerFloor,       ///< p_n >= p_n^min
    kBandwidthFloor,   ///< B_n >= 1 Hz
    kPowerBudget,      ///< sum p <= p_total
    kBandwidthBudget,  ///< sum B <= B_total
    kSecureMinPower,   ///< p_n^min keeps the secrecy rate non-negative
    kShape,            ///< vector lengths disagree with the scenario
};

[[nodiscard]] const char* to_string(Constraint c) noexcept;

struct Violation {
    Constraint constraint;
    std::optional<std::size_t> user;
    double slack;  ///< signed amount by which the constraint is missed (native units)

    [[nodiscard]] std::string describe() const;
};

struct FeasibilityReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
    [[nodiscard]] std::string summary() const;
};

/// Relative tolerance on the two budget sums.
inline constexpr double kBudgetSlack = 1e-9;

[[nodiscard]] FeasibilityReport check_feasible(const Allocation& alloc, const Scenario& scenario);

// ---- fractional programming pieces ----------------------------------------

/// s^2 z + 1 / (4 r^2 z). Minimized over z at z = 1/(2 r s), where it equals s/r.
[[nodiscard]] double quad_transform_value(double s, double r, double z);

/// Closed-form auxiliaries z_n = 1/(2 R_n S_n) at the surrogate rates of `alloc`.
[[nodiscard]] std::vector<double> update_z(const Allocation& alloc, std::span<const channel::ScaAnchor> anchors,
                                           const Scenario& scenario);

// ---- KKT inner solver ------------------------------------------------------

/// Everything one user's (p, B) stationarity conditions depend on for a fixed z.
struct UserSubproblem {
    const channel::LinkParams& link;
    channel::ScaAnchor anchor;
    double z = 0.0;
    double latency_weight = 0.0;  ///< omega_1
    double p_min = 0.0;
    double p_cap = 0.0;  ///< upper power search bound
    double b_cap = 0.0;  ///< upper bandwidth search bound
    double tol = 1e-10;
    int max_iter = 200;
};

/// Which end of its search interval a 1-D solution landed on, if any.
enum class Bound { kInterior, kLower, kUpper };

struct BandwidthPoint {
    double b = 0.0;
    Bound bound = Bound::kInterior;
};

/// Root in B of w1 dR/dB / (2 R^3 z) = xi, clamped to [1 Hz, b_cap].
[[nodiscard]] BandwidthPoint solve_B_given(double p, double xi, const UserSubproblem& sub);

struct PowerPoint {
    double p = 0.0;
    double b = 0.0;  ///< solve_B_given(p, xi)
    Bound bound = Bound::kInterior;
    Bound b_bound = Bound::kInterior;
};

/// Root in p of w1 dR/dp / (2 R^3 z) = gamma along B = solve_B_given(p, xi),
/// clamped to [p_min, p_cap]. The lower clamp is the max{., p_min} step.
[[nodiscard]] PowerPoint solve_p_given(double xi, double gamma, const UserSubproblem& sub);

/// Per-user powers and bandwidths induced by a (xi, gamma) pair.
struct PowerBandwidthSplit {
    double gamma = 0.0;
    std::vector<PowerPoint> users;

    [[nodiscard]] double power_sum() const noexcept;
    [[nodiscard]] double bandwidth_sum() const noexcept;
};

/// Shared inputs of the multiplier searches.
struct KktInputs {
    std::span<const double> z;
    std::span<const channel::ScaAnchor> anchors;
    const Scenario& scenario;
    const SolverConfig& config;
};

/// Power multiplier for a given bandwidth multiplier: 0 when the power budget is
/// slack, otherwise the root of sum p(xi, gamma) = p_total.
[[nodiscard]] PowerBandwidthSplit solve_gamma(double xi, const KktInputs& in,
                                              std::optional<double> gamma_hint = std::nullopt);

struct XiSolution {
    double xi = 0.0;
    PowerBandwidthSplit split;
};

/// Bandwidth multiplier, each trial re-solving gamma(xi).
[[nodiscard]] XiSolution solve_xi(const KktInputs& in, std::optional<double> xi_hint = std::nullopt,
                                  std::optional<double> gamma_hint = std::nullopt);

struct SizeSolution {
    std::vector<double> s;
    std::vector<double> alpha;  ///< multiplier of S_n <= S_n^max
};

/// Per-user root of W_n'(s) + 2 w1 z_n s = 0 on [1 bit, S_n^max].
[[nodiscard]] SizeSolution solve_S(std::span<const double> z, const Scenario& scenario, const SolverConfig& config);

struct KktMultipliers {
    std::vector<double> alpha;  ///< S_n <= S_n^max
    std::vector<double> beta;   ///< p_n >= p_n^min
    double gamma = 0.0;         ///< power budget
    double xi = 0.0;            ///< bandwidth budget
};

struct KktSolution {
    Allocation alloc;
    KktMultipliers multipliers;
    std::vector<std::size_t> starved;  ///< users whose bandwidth sits on the 1 Hz floor
};

struct KktWarmStart {
    double xi = 0.0;
    double gamma = 0.0;
};

/// Global minimizer of the quadratic-transform problem for fixed z and anchors.
[[nodiscard]] KktSolution kkt_solve(std::span<const double> z, std::span<const channel::ScaAnchor> anchors,
                                    const Scenario& scenario, const SolverConfig& config,
                                    const std::optional<KktWarmStart>& warm = std::nullopt);

/// Scaled KKT residuals. Stationarity entries are divided by the largest term of
/// their equation, complementary slackness by multiplier times constraint scale.
struct KktResiduals {
    double stationarity = 0.0;
    double complementary = 0.0;
    double primal = 0.0;
    double dual = 0.0;  ///< magnitude of the most negative multiplier, 0 if none

    [[nodiscard]] double max() const noexcept;
};

[[nodiscard]] KktResiduals kkt_residuals(const Allocation& alloc, const KktMultipliers& mult, std::span<const double> z,
                                         std::span<const channel::ScaAnchor> anchors, const Scenario& scenario);

// ---- outer loops -----------------------------------------------------------

struct TraceRecord {
    int k = 0;  ///< outer iteration (1-based)
    int j = 0;  ///< FP iteration, 0 = starting point after re-anchoring
    double surrogate_objective = 0.0;
    double exact_objective = 0.0;
    double kkt_residual = 0.0;  ///< 0 for j = 0
    bool warm_started_z = false;
    std::vector<std::size_t> starved;
    Allocation alloc;
};

struct FpResult {
    Allocation alloc;
    std::vector<double> z;
    KktMultipliers multipliers;
    KktResiduals residuals;
    int iterations = 0;
    bool converged = false;
    std::vector<TraceRecord> trace;
};

/// Alternates z updates and KKT solves for fixed anchors until z settles.
[[nodiscard]] FpResult fractional_programming(std::span<const channel::ScaAnchor> anchors, const Allocation& init,
                                              const Scenario& scenario, const SolverConfig& config);

struct SolverState {
    std::vector<double> z;
    std::vector<channel::ScaAnchor> anchors;
    int k_outer = 0;
    int j_fp = 0;    ///< total FP iterations
    int i_sca = 0;   ///< anchor refreshes
};

struct AllocationResult {
    Allocation alloc;
    semcost::MetricsReport metrics;  ///< exact secrecy rates
    double surrogate_objective = 0.0;
    KktMultipliers multipliers;
    KktResiduals residuals;
    SolverState state;
    std::vector<TraceRecord> trace;
    bool converged = false;
    int iters_outer = 0;
    int iters_fp_total = 0;
};

/// Equal split of both budgets (power lifted to p_min where needed), S = S_max/2.
[[nodiscard]] Allocation initial_allocation(const Scenario& scenario);

/// Relative change max_i |x_new - x_old| / max(|x_old|, floor_i) with floors
/// 1 mW, 1 kHz and 1 kbit.
[[nodiscard]] double solution_change(const Allocation& next, const Allocation& prev);

/// Full resource allocation: re-anchor, run fractional programming, repeat.
[[nodiscard]] AllocationResult resource_allocation(const Scenario& scenario, const SolverConfig& config,
                                                   const std::optional<Allocation>& init = std::nullopt);

}  // namespace secomm::solver
