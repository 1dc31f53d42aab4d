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

#include "secomm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "secomm/errors.hpp"
#include "secomm/semcost.hpp"

namespace secomm::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Range {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double at(int j, int k) const {
        return k == 1 ? lo : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(k - 1);
    }
    [[nodiscard]] double step(int k) const { return k == 1 ? 0.0 : (hi - lo) / static_cast<double>(k - 1); }
};

// Every split of `used` whose first N-1 entries lie on the given ranges and
// whose remainder respects the last floor. Lexicographic order.
std::vector<std::vector<double>> enumerate_splits(double used, std::span<const double> floors,
                                                  std::span<const Range> free, int k) {
    const std::size_t n = floors.size();
    std::vector<std::vector<double>> out;
    std::vector<int> idx(free.size(), 0);
    while (true) {
        std::vector<double> split(n);
        double acc = 0.0;
        for (std::size_t i = 0; i < free.size(); ++i) {
            split[i] = free[i].at(idx[i], k);
            acc += split[i];
        }
        split[n - 1] = used - acc;
        bool ok = split[n - 1] >= floors[n - 1] * (1.0 - 1e-12);
        for (std::size_t i = 0; ok && i + 1 < n; ++i) ok = split[i] >= floors[i];
        if (ok) {
            split[n - 1] = std::max(split[n - 1], floors[n - 1]);
            out.push_back(std::move(split));
        }
        std::size_t c = free.size();
        while (c > 0 && ++idx[c - 1] == k) idx[--c] = 0;
        if (c == 0) break;
    }
    return out;
}

std::vector<double> log_grid(double lo, double hi, int k) {
    std::vector<double> g(static_cast<std::size_t>(k));
    const double a = std::log(lo), b = std::log(hi);
    for (int j = 0; j < k; ++j)
        g[static_cast<std::size_t>(j)] = k == 1 ? lo : std::exp(a + (b - a) * j / (k - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

double transmit_term(double s, double r, ZPolicy policy) {
    if (policy == ZPolicy::kDirect) return s / r;
    const double z = 1.0 / (2.0 * r * s);
    return s * s * z + 1.0 / (4.0 * r * r * z);
}

bool secure(double p, const channel::LinkParams& link) { return link.snr_density(p) >= link.eve_snr_density(); }

struct Pass {
    std::vector<Range> p_free, b_free;
    std::vector<std::vector<double>> s_grid;  // per user
    std::vector<double> p_fracs, b_fracs;
};

struct Best {
    double value = kInf;
    Allocation alloc;
    std::size_t p_user_last = 0;
    double p_frac = 1.0, b_frac = 1.0;
    std::vector<std::size_t> s_idx;
};

class GridRunner {
public:
    GridRunner(const Scenario& sc, std::span<const channel::ScaAnchor> anchors, ZPolicy policy, int k)
        : sc_(sc), anchors_(anchors), policy_(policy), k_(k), n_(sc.size()) {
        for (const auto& u : sc.users) {
            p_floor_.push_back(u.cost.p_min_w);
            b_floor_.push_back(channel::kBandwidthFloorHz);
        }
    }

    std::uint64_t run(const Pass& pass, Best& best) const {
        std::vector<std::vector<double>> w(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (double s : pass.s_grid[i]) w[i].push_back(semcost::size_cost(s, sc_.users[i].cost, sc_.weights));

        std::uint64_t evals = 0;
        const double w1 = sc_.weights.latency;
        std::vector<double> r(n_);
        std::vector<std::size_t> s_arg(n_);
        for (double pf : pass.p_fracs) {
            const auto p_splits = enumerate_splits(pf * sc_.p_total_w, p_floor_, pass.p_free, k_);
            for (double bf : pass.b_fracs) {
                const auto b_splits = enumerate_splits(bf * sc_.b_total_hz, b_floor_, pass.b_free, k_);
                for (const auto& ps : p_splits) {
                    bool p_ok = true;
                    for (std::size_t i = 0; i < n_ && p_ok; ++i) p_ok = secure(ps[i], sc_.users[i].link);
                    if (!p_ok) continue;
                    for (const auto& bs : b_splits) {
                        double total = 0.0;
                        for (std::size_t i = 0; i < n_ && total < kInf; ++i) {
                            r[i] = channel::surrogate_rate(ps[i], bs[i], sc_.users[i].link, anchors_[i]);
                            if (!(r[i] > 0.0)) {
                                total = kInf;
                                break;
                            }
                            double user_best = kInf;
                            const auto& sg = pass.s_grid[i];
                            for (std::size_t j = 0; j < sg.size(); ++j) {
                                const double v = w[i][j] + w1 * transmit_term(sg[j], r[i], policy_);
                                if (v < user_best) {
                                    user_best = v;
                                    s_arg[i] = j;
                                }
                            }
                            evals += sg.size();
                            total += user_best;
                        }
                        if (total < best.value) {
                            best.value = total;
                            best.alloc.p = ps;
                            best.alloc.b = bs;
                            best.alloc.s.resize(n_);
                            for (std::size_t i = 0; i < n_; ++i) best.alloc.s[i] = pass.s_grid[i][s_arg[i]];
                            best.p_frac = pf;
                            best.b_frac = bf;
                            best.s_idx = s_arg;
                        }
                    }
                }
            }
        }
        return evals;
    }

    [[nodiscard]] std::vector<Range> coarse_free(const std::vector<double>& floors, double used) const {
        double floor_sum = 0.0;
        for (double f : floors) floor_sum += f;
        std::vector<Range> out;
        for (std::size_t i = 0; i + 1 < n_; ++i) out.push_back({floors[i], used - (floor_sum - floors[i])});
        return out;
    }

    const std::vector<double>& p_floor() const { return p_floor_; }
    const std::vector<double>& b_floor() const { return b_floor_; }

private:
    const Scenario& sc_;
    std::span<const channel::ScaAnchor> anchors_;
    ZPolicy policy_;
    int k_;
    std::size_t n_;
    std::vector<double> p_floor_, b_floor_;
};

std::vector<Range> refine_ranges(const std::vector<Range>& coarse, const std::vector<double>& best, int k) {
    std::vector<Range> out;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const double h = coarse[i].step(k);
        out.push_back({std::max(coarse[i].lo, best[i] - h), std::min(coarse[i].hi, best[i] + h)});
    }
    return out;
}

}  // namespace

void GridSpec::validate() const {
    if (points_per_axis < 3) throw DomainError("points_per_axis must be at least 3");
    if (budget_fractions.empty()) throw DomainError("budget_fractions must not be empty");
    for (double f : budget_fractions)
        if (!(f > 0.0 && f <= 1.0)) throw DomainError("budget fractions must lie in (0, 1]");
}

double estimated_evaluations(std::size_t n_users, const GridSpec& grid) {
    const double k = grid.points_per_axis;
    const double fractions = static_cast<double>(grid.budget_fractions.size());
    const double per_pass = std::pow(k, 2.0 * static_cast<double>(n_users - 1)) * static_cast<double>(n_users) * k;
    return per_pass * (fractions * fractions + (grid.refine ? 1.0 : 0.0));
}

GridResult grid_search(const Scenario& scenario, std::span<const channel::ScaAnchor> anchors, ZPolicy policy,
                       const GridSpec& grid) {
    grid.validate();
    scenario.validate();
    const std::size_t n = scenario.size();
    if (n > 3) throw DomainError("grid search supports at most 3 users, got " + std::to_string(n));
    if (anchors.size() != n) throw DomainError("one anchor per user required");
    const int k = grid.points_per_axis;

    GridRunner runner(scenario, anchors, policy, k);
    Pass coarse;
    coarse.p_fracs = grid.budget_fractions;
    coarse.b_fracs = grid.budget_fractions;
    for (const auto& u : scenario.users) coarse.s_grid.push_back(log_grid(semcost::kSizeFloorBits, u.cost.s_max_bits, k));
    const double total_count = estimated_evaluations(n, grid);
    if (total_count > kMaxGridEvaluations)
        throw DomainError("grid too large: " + std::to_string(total_count) + " evaluations exceeds " +
                          std::to_string(kMaxGridEvaluations));

    Best best;
    GridResult result;
    for (double pf : grid.budget_fractions) {
        for (double bf : grid.budget_fractions) {
            Pass one = coarse;
            one.p_fracs = {pf};
            one.b_fracs = {bf};
            one.p_free = runner.coarse_free(runner.p_floor(), pf * scenario.p_total_w);
            one.b_free = runner.coarse_free(runner.b_floor(), bf * scenario.b_total_hz);
            result.evaluations += runner.run(one, best);
        }
    }
    if (!(best.value < kInf)) throw InfeasibleError("grid search found no point with positive surrogate rates");

    if (grid.refine) {
        Pass fine;
        fine.p_fracs = {best.p_frac};
        fine.b_fracs = {best.b_frac};
        fine.p_free = refine_ranges(runner.coarse_free(runner.p_floor(), best.p_frac * scenario.p_total_w),
                                    best.alloc.p, k);
        fine.b_free = refine_ranges(runner.coarse_free(runner.b_floor(), best.b_frac * scenario.b_total_hz),
                                    best.alloc.b, k);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& cg = coarse.s_grid[i];
            const double ratio = std::pow(cg.back() / cg.front(), 1.0 / static_cast<double>(k - 1));
            const double s = best.alloc.s[i];
            fine.s_grid.push_back(log_grid(std::max(cg.front(), s / (ratio * ratio)),
                                           std::min(cg.back(), s * ratio * ratio), k));
        }
        result.evaluations += runner.run(fine, best);
    }

    result.alloc = std::move(best.alloc);
    result.value = best.value;
    return result;
}

double surrogate_value(const Allocation& alloc, const Scenario& scenario, std::span<const channel::ScaAnchor> anchors,
                       ZPolicy policy) {
    double total = 0.0;
    for (std::size_t i = 0; i < scenario.size(); ++i) {
        const auto& u = scenario.users[i];
        const double r = channel::surrogate_rate(alloc.p[i], alloc.b[i], u.link, anchors[i]);
        if (!(r > 0.0)) return kInf;
        total += semcost::size_cost(alloc.s[i], u.cost, scenario.weights) +
                 scenario.weights.latency * transmit_term(alloc.s[i], r, policy);
    }
    return total;
}

double StepPolicy::step(double x) const noexcept { return std::max(rel * std::abs(x), 1e-9 * unit); }

Derivative finite_diff(const std::function<double(double)>& fn, double x, const StepPolicy& policy) {
    auto central = [&](double h) {
        const double hi = fn(x + h), lo = fn(x - h);
        if (!std::isfinite(hi) || !std::isfinite(lo))
            throw DomainError("finite_diff: non-finite evaluation near x = " + std::to_string(x));
        return (hi - lo) / (2.0 * h);
    };
    const double h = policy.step(x);
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    return {d1, std::abs(d1 - d2)};
}

std::vector<Derivative> finite_diff(const std::function<double(std::span<const double>)>& fn,
                                    std::span<const double> point, std::span<const double> units, double rel) {
    if (!units.empty() && units.size() != point.size()) throw DomainError("finite_diff: units size mismatch");
    std::vector<double> x(point.begin(), point.end());
    std::vector<Derivative> grad;
    for (std::size_t c = 0; c < x.size(); ++c) {
        const double x0 = x[c];
        auto partial = [&](double v) {
            x[c] = v;
            const double f = fn(x);
            x[c] = x0;
            return f;
        };
        grad.push_back(finite_diff(partial, x0, StepPolicy{rel, units.empty() ? 1.0 : units[c]}));
    }
    return grad;
}

}  // namespace secomm::oracle
