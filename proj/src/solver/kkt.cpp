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
#include <map>
#include <numbers>
#include <string>

#include "detail/roots.hpp"
#include "secomm/errors.hpp"
#include "secomm/solver.hpp"

namespace secomm::solver {
namespace {

constexpr double kLn2 = std::numbers::ln2;

// Surrogate rate with the anchor-dependent tangent folded into two constants:
// R(p, B) = B log2(1 + g p / B) - offset - slope B.
struct FastSurrogate {
    double gain_density;  // h / noise_var
    double offset;        // r_e(Ba) - r_e'(Ba) Ba
    double slope;         // r_e'(Ba)

    FastSurrogate(const channel::LinkParams& link, channel::ScaAnchor anchor)
        : gain_density(link.h / link.noise_var) {
        const double ba = anchor.b_anchor;
        slope = channel::d_eavesdrop_dB(ba, link);
        offset = channel::eavesdrop_rate(ba, link) - slope * ba;
    }

    struct Partials {
        double r;
        double r_p;
        double r_b;
    };

    [[nodiscard]] double rate(double p, double b) const {
        return b * std::log1p(gain_density * p / b) / kLn2 - offset - slope * b;
    }

    [[nodiscard]] Partials partials(double p, double b) const {
        const double x = gain_density * p / b;
        const double l = std::log1p(x);
        return Partials{
            .r = b * l / kLn2 - offset - slope * b,
            .r_p = gain_density / (kLn2 * (1.0 + x)),
            .r_b = (l - x / (1.0 + x)) / kLn2 - slope,
        };
    }
};

detail::RootOptions root_options(const UserSubproblem& sub) { return {sub.tol, sub.max_iter}; }

void require_subproblem(const UserSubproblem& sub) {
    if (!(sub.z > 0.0)) throw DomainError("KKT subproblem: z must be positive");
    if (!(sub.latency_weight > 0.0)) throw DomainError("KKT subproblem: latency weight must be positive");
    if (!(sub.b_cap >= channel::kBandwidthFloorHz)) throw DomainError("KKT subproblem: bandwidth cap below floor");
    if (!(sub.p_cap >= sub.p_min) || !(sub.p_min > 0.0)) throw DomainError("KKT subproblem: bad power range");
}

// Last inner solution of one user, used to start the next search nearby.
struct Hint {
    double p = 0.0;
    double b = 0.0;
};

BandwidthPoint solve_B_fast(double p, double xi, const UserSubproblem& sub, const FastSurrogate& fs,
                            double b_hint = 0.0) {
    const double lo = channel::kBandwidthFloorHz;
    const double peak = channel::surrogate_peak_bandwidth(p, sub.link, sub.anchor);
    const double hi = std::min(peak, sub.b_cap);
    const Bound hi_bound = peak < sub.b_cap ? Bound::kInterior : Bound::kUpper;

    // R increases up to the peak, so the best the user can get in range is R(hi).
    if (!(fs.rate(p, std::max(hi, lo)) > 0.0)) {
        throw InfeasibleError("surrogate rate is non-positive over the whole bandwidth search range");
    }
    if (hi <= lo) return {lo, Bound::kLower};
    if (xi <= 0.0) return {hi, hi_bound};

    // Sign of w1 R_B / (2 R^3 z) - xi, written without the division so it stays
    // finite where R <= 0 (there it is positive: grow B).
    const double w1 = sub.latency_weight;
    auto f = [&](double b) {
        const auto d = fs.partials(p, b);
        return w1 * d.r_b - 2.0 * xi * sub.z * d.r * d.r * d.r;
    };
    if (b_hint > lo && b_hint < hi) {
        if (const auto br = detail::bracket_decreasing(f, b_hint, 1.001, lo, hi, true)) {
            return {detail::decreasing_root_log(f, *br, root_options(sub)), Bound::kInterior};
        }
    }
    const double f_hi = f(hi);
    if (f_hi >= 0.0) return {hi, hi_bound};
    const double f_lo = f(lo);
    if (f_lo <= 0.0) return {lo, Bound::kLower};
    const double b = detail::decreasing_root_log(f, detail::Bracket{lo, hi, f_lo, f_hi}, root_options(sub));
    return {b, Bound::kInterior};
}

PowerPoint solve_p_fast(double xi, double gamma, const UserSubproblem& sub, const FastSurrogate& fs,
                        Hint* hint = nullptr) {
    double b_last = hint ? hint->b : 0.0;
    auto at = [&](double p, Bound bound) {
        const auto bp = solve_B_fast(p, xi, sub, fs, b_last);
        if (hint) *hint = {p, bp.b};
        return PowerPoint{p, bp.b, bound, bp.bound};
    };
    if (gamma <= 0.0) return at(sub.p_cap, Bound::kUpper);

    const double w1 = sub.latency_weight;
    auto f = [&](double p) {
        const double b = solve_B_fast(p, xi, sub, fs, b_last).b;
        b_last = b;
        const auto d = fs.partials(p, b);
        return w1 * d.r_p - 2.0 * gamma * sub.z * d.r * d.r * d.r;
    };
    if (hint && hint->p > sub.p_min && hint->p < sub.p_cap) {
        if (const auto br = detail::bracket_decreasing(f, hint->p, 1.001, sub.p_min, sub.p_cap, true)) {
            return at(detail::decreasing_root_log(f, *br, root_options(sub)), Bound::kInterior);
        }
    }
    const double f_lo = f(sub.p_min);
    if (f_lo <= 0.0) return at(sub.p_min, Bound::kLower);
    const double f_hi = f(sub.p_cap);
    if (f_hi >= 0.0) return at(sub.p_cap, Bound::kUpper);
    const double p = detail::decreasing_root_log(f, detail::Bracket{sub.p_min, sub.p_cap, f_lo, f_hi},
                                                 root_options(sub));
    return at(p, Bound::kInterior);
}

// Per-user subproblems as seen by the multiplier searches. The search caps sit
// above the budgets so a single user can overshoot during the search; at the
// solution the budget sums keep every user inside them.
struct UserSet {
    std::vector<UserSubproblem> subs;
    std::vector<FastSurrogate> fast;
    mutable std::vector<Hint> hints;
};

UserSet make_users(const KktInputs& in) {
    const auto& sc = in.scenario;
    if (in.z.size() != sc.size() || in.anchors.size() != sc.size()) {
        throw DomainError("KKT: z and anchors need one entry per user");
    }
    if (!(sc.weights.latency > 0.0)) throw DomainError("KKT: latency weight must be positive");
    UserSet set;
    set.subs.reserve(sc.size());
    set.fast.reserve(sc.size());
    for (std::size_t n = 0; n < sc.size(); ++n) {
        const auto& u = sc.users[n];
        set.subs.push_back(UserSubproblem{
            .link = u.link,
            .anchor = in.anchors[n],
            .z = in.z[n],
            .latency_weight = sc.weights.latency,
            .p_min = u.cost.p_min_w,
            .p_cap = 2.0 * sc.p_total_w,
            .b_cap = 2.0 * sc.b_total_hz,
            .tol = in.config.bisect_tol,
            .max_iter = in.config.bisect_max_iter,
        });
        require_subproblem(set.subs.back());
        set.fast.emplace_back(u.link, in.anchors[n]);
    }
    set.hints.resize(sc.size());
    return set;
}

PowerBandwidthSplit split_at(double xi, double gamma, const UserSet& set) {
    PowerBandwidthSplit split;
    split.gamma = gamma;
    split.users.reserve(set.subs.size());
    for (std::size_t n = 0; n < set.subs.size(); ++n) {
        split.users.push_back(solve_p_fast(xi, gamma, set.subs[n], set.fast[n], &set.hints[n]));
    }
    return split;
}

PowerBandwidthSplit solve_gamma_impl(double xi, const KktInputs& in, const UserSet& set,
                                     std::optional<double> gamma_hint) {
    const auto& sc = in.scenario;
    double p_min_sum = 0.0;
    for (const auto& u : sc.users) p_min_sum += u.cost.p_min_w;
    if (p_min_sum > sc.p_total_w) {
        throw InfeasibleError("KKT: sum of minimum powers exceeds p_total");
    }

    auto slack_split = split_at(xi, 0.0, set);
    if (slack_split.power_sum() <= sc.p_total_w) return slack_split;

    std::map<double, PowerBandwidthSplit> seen;
    auto f = [&](double gamma) {
        auto split = split_at(xi, gamma, set);
        const double excess = split.power_sum() - sc.p_total_w;
        seen.insert_or_assign(gamma, std::move(split));
        return excess;
    };

    double guess = 0.0;
    double factor = 4.0;
    if (gamma_hint && *gamma_hint > 0.0) {
        guess = *gamma_hint;
    } else {
        // Every user sits on p_min once gamma reaches its marginal value there.
        for (std::size_t n = 0; n < set.subs.size(); ++n) {
            const auto& sub = set.subs[n];
            const double b = solve_B_fast(sub.p_min, xi, sub, set.fast[n]).b;
            const auto d = set.fast[n].partials(sub.p_min, b);
            guess = std::max(guess, sub.latency_weight * d.r_p / (2.0 * d.r * d.r * d.r * sub.z));
        }
        factor = 16.0;
    }
    const auto br = detail::bracket_decreasing(f, guess, factor);
    if (!br) throw InfeasibleError("KKT: could not bracket the power multiplier");
    const double gamma = detail::decreasing_root_log(f, *br, {in.config.bisect_tol, in.config.bisect_max_iter});
    if (auto it = seen.find(gamma); it != seen.end()) return it->second;
    return split_at(xi, gamma, set);
}

double psi_at(const FastSurrogate& fs, const UserSubproblem& sub, double p, double b) {
    const auto d = fs.partials(p, b);
    return sub.latency_weight * d.r_p / (2.0 * d.r * d.r * d.r * sub.z);
}

}  // namespace

double PowerBandwidthSplit::power_sum() const noexcept {
    double s = 0.0;
    for (const auto& u : users) s += u.p;
    return s;
}

double PowerBandwidthSplit::bandwidth_sum() const noexcept {
    double s = 0.0;
    for (const auto& u : users) s += u.b;
    return s;
}

BandwidthPoint solve_B_given(double p, double xi, const UserSubproblem& sub) {
    require_subproblem(sub);
    if (!(p > 0.0)) throw DomainError("solve_B_given: power must be positive");
    if (!(xi >= 0.0)) throw DomainError("solve_B_given: xi must be >= 0");
    return solve_B_fast(p, xi, sub, FastSurrogate(sub.link, sub.anchor));
}

PowerPoint solve_p_given(double xi, double gamma, const UserSubproblem& sub) {
    require_subproblem(sub);
    if (!(xi >= 0.0) || !(gamma >= 0.0)) throw DomainError("solve_p_given: multipliers must be >= 0");
    return solve_p_fast(xi, gamma, sub, FastSurrogate(sub.link, sub.anchor));
}

PowerBandwidthSplit solve_gamma(double xi, const KktInputs& in, std::optional<double> gamma_hint) {
    if (!(xi >= 0.0)) throw DomainError("solve_gamma: xi must be >= 0");
    return solve_gamma_impl(xi, in, make_users(in), gamma_hint);
}

XiSolution solve_xi(const KktInputs& in, std::optional<double> xi_hint, std::optional<double> gamma_hint) {
    const auto set = make_users(in);
    const auto& sc = in.scenario;

    auto at_zero = solve_gamma_impl(0.0, in, set, gamma_hint);
    if (at_zero.bandwidth_sum() <= sc.b_total_hz) return {0.0, std::move(at_zero)};

    std::map<double, PowerBandwidthSplit> seen;
    std::optional<double> last_gamma = at_zero.gamma;
    auto f = [&](double xi) {
        auto split = solve_gamma_impl(xi, in, set, last_gamma);
        last_gamma = split.gamma;
        const double excess = split.bandwidth_sum() - sc.b_total_hz;
        seen.insert_or_assign(xi, std::move(split));
        return excess;
    };

    double guess = 0.0;
    double factor = 4.0;
    if (xi_hint && *xi_hint > 0.0) {
        guess = *xi_hint;
    } else {
        // Marginal bandwidth value at an equal split, using the unconstrained powers.
        const double b_eq = sc.b_total_hz / static_cast<double>(sc.size());
        for (std::size_t n = 0; n < set.subs.size(); ++n) {
            const auto d = set.fast[n].partials(at_zero.users[n].p, b_eq);
            if (d.r > 0.0 && d.r_b > 0.0) {
                guess = std::max(guess, set.subs[n].latency_weight * d.r_b / (2.0 * d.r * d.r * d.r * set.subs[n].z));
            }
        }
        if (!(guess > 0.0)) guess = 1.0;
        factor = 16.0;
    }
    const auto br = detail::bracket_decreasing(f, guess, factor);
    if (!br) throw InfeasibleError("KKT: could not bracket the bandwidth multiplier");
    const double xi = detail::decreasing_root_log(f, *br, {in.config.bisect_tol, in.config.bisect_max_iter});
    if (auto it = seen.find(xi); it != seen.end()) return {xi, it->second};
    return {xi, solve_gamma_impl(xi, in, set, last_gamma)};
}

SizeSolution solve_S(std::span<const double> z, const Scenario& scenario, const SolverConfig& config) {
    if (z.size() != scenario.size()) throw DomainError("solve_S: one z per user required");
    SizeSolution out;
    out.s.resize(scenario.size());
    out.alpha.assign(scenario.size(), 0.0);
    const Weights w = scenario.weights;
    for (std::size_t n = 0; n < scenario.size(); ++n) {
        const auto& cost = scenario.users[n].cost;
        if (!(z[n] > 0.0)) throw DomainError("solve_S: z must be positive");
        // Increasing in s; negate to reuse the decreasing-root helper.
        auto g = [&](double s) { return -(semcost::d_size_cost(s, cost, w) + 2.0 * w.latency * z[n] * s); };
        const double lo = semcost::kSizeFloorBits;
        const double hi = cost.s_max_bits;
        const double g_hi = g(hi);
        if (g_hi >= 0.0) {
            out.s[n] = hi;
            out.alpha[n] = g_hi;
            continue;
        }
        const double g_lo = g(lo);
        if (g_lo <= 0.0) {
            out.s[n] = lo;
            continue;
        }
        out.s[n] = detail::decreasing_root_log(g, detail::Bracket{lo, hi, g_lo, g_hi},
                                               {config.bisect_tol, config.bisect_max_iter});
    }
    return out;
}

KktSolution kkt_solve(std::span<const double> z, std::span<const channel::ScaAnchor> anchors,
                      const Scenario& scenario, const SolverConfig& config, const std::optional<KktWarmStart>& warm) {
    const KktInputs in{z, anchors, scenario, config};
    auto xs = warm ? solve_xi(in, warm->xi, warm->gamma) : solve_xi(in);
    auto sizes = solve_S(z, scenario, config);
    const auto set = make_users(in);

    const std::size_t n_users = scenario.size();
    KktSolution sol;
    sol.alloc = Allocation(n_users);
    sol.multipliers.alpha = std::move(sizes.alpha);
    sol.multipliers.beta.assign(n_users, 0.0);
    sol.multipliers.gamma = xs.split.gamma;
    sol.multipliers.xi = xs.xi;
    for (std::size_t n = 0; n < n_users; ++n) {
        const auto& pt = xs.split.users[n];
        sol.alloc.p[n] = pt.p;
        sol.alloc.b[n] = pt.b;
        sol.alloc.s[n] = sizes.s[n];
        if (pt.bound == Bound::kLower) {
            const double psi = psi_at(set.fast[n], set.subs[n], pt.p, pt.b);
            sol.multipliers.beta[n] = std::max(0.0, sol.multipliers.gamma - psi);
        }
        if (pt.b_bound == Bound::kLower) sol.starved.push_back(n);
    }
    return sol;
}

double KktResiduals::max() const noexcept { return std::max({stationarity, complementary, primal, dual}); }

KktResiduals kkt_residuals(const Allocation& alloc, const KktMultipliers& mult, std::span<const double> z,
                           std::span<const channel::ScaAnchor> anchors, const Scenario& scenario) {
    KktResiduals res;
    const std::size_t n_users = scenario.size();
    const Weights w = scenario.weights;
    auto scaled = [](double value, std::initializer_list<double> terms) {
        double scale = 0.0;
        for (double t : terms) scale = std::max(scale, std::abs(t));
        return scale > 0.0 ? std::abs(value) / scale : std::abs(value);
    };

    double p_sum = 0.0;
    double b_sum = 0.0;
    for (std::size_t n = 0; n < n_users; ++n) {
        const auto& u = scenario.users[n];
        const double p = alloc.p[n];
        const double b = alloc.b[n];
        const double s = alloc.s[n];
        p_sum += p;
        b_sum += b;

        const double r = channel::surrogate_rate(p, b, u.link, anchors[n]);
        const double r_p = channel::d_rate_dp(p, b, u.link);
        const double r_b = channel::d_surrogate_dB(p, b, u.link, anchors[n]);
        const double denom = 2.0 * r * r * r * z[n];
        const double dp = w.latency * r_p / denom;
        const double db = w.latency * r_b / denom;
        const double alpha = mult.alpha[n];
        const double beta = mult.beta[n];
        res.stationarity = std::max(res.stationarity, scaled(-dp - beta + mult.gamma, {dp, beta, mult.gamma}));
        res.stationarity = std::max(res.stationarity, scaled(-db + mult.xi, {db, mult.xi}));

        const double dt1 = w.latency * semcost::d_server_cycles(s, u.cost) / u.cost.f_server_hz;
        const double dt3 = w.latency * semcost::d_user_cycles(s, u.cost) / u.cost.g_user_hz;
        const double du = w.utility * semcost::d_utility(s, u.cost);
        const double quad = 2.0 * w.latency * z[n] * s;
        res.stationarity = std::max(res.stationarity, scaled(dt1 + dt3 - du + quad + alpha, {dt1, dt3, du, quad, alpha}));

        if (alpha > 0.0) res.complementary = std::max(res.complementary, std::abs(s - u.cost.s_max_bits) / u.cost.s_max_bits);
        if (beta > 0.0) res.complementary = std::max(res.complementary, std::abs(p - u.cost.p_min_w) / u.cost.p_min_w);
        res.dual = std::max({res.dual, -alpha, -beta});

        res.primal = std::max(res.primal, (u.cost.p_min_w - p) / u.cost.p_min_w);
        res.primal = std::max(res.primal, (s - u.cost.s_max_bits) / u.cost.s_max_bits);
    }
    if (mult.gamma > 0.0) res.complementary = std::max(res.complementary, std::abs(p_sum - scenario.p_total_w) / scenario.p_total_w);
    if (mult.xi > 0.0) res.complementary = std::max(res.complementary, std::abs(b_sum - scenario.b_total_hz) / scenario.b_total_hz);
    res.dual = std::max({res.dual, -mult.gamma, -mult.xi});
    res.primal = std::max(res.primal, (p_sum - scenario.p_total_w) / scenario.p_total_w);
    res.primal = std::max(res.primal, (b_sum - scenario.b_total_hz) / scenario.b_total_hz);
    res.primal = std::max(res.primal, 0.0);
    return res;
}

}  // namespace secomm::solver
