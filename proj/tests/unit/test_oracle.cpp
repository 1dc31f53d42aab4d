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

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "secomm/errors.hpp"
#include "secomm/harness.hpp"
#include "secomm/oracle.hpp"
#include "secomm/solver.hpp"
#include "support.hpp"

using namespace secomm;
using secomm::test::rel_err;

TEST_CASE("finite differences of a polynomial", "[oracle]") {
    const auto d = oracle::finite_diff([](double x) { return x * x; }, 3.0);
    CHECK(d.value == Catch::Approx(6.0).epsilon(1e-9));
    CHECK(d.error < 1e-6);

    const std::array<double, 2> pt{1.0, 2.0};
    const auto g = oracle::finite_diff([](std::span<const double> v) { return v[0] * v[0] * v[1]; },
                                       std::span<const double>(pt));
    REQUIRE(g.size() == 2);
    CHECK(g[0].value == Catch::Approx(4.0).epsilon(1e-8));
    CHECK(g[1].value == Catch::Approx(1.0).epsilon(1e-8));

    CHECK_THROWS_AS(oracle::finite_diff([](double x) { return std::log(x); }, 0.0), DomainError);
}

TEST_CASE("finite differences agree with analytic partials", "[oracle]") {
    test::Sampler rng(41);
    for (int i = 0; i < 200; ++i) {
        const auto link = rng.link();
        const double p = rng.log_uniform(1e-2, 10.0), b = rng.log_uniform(1e4, 1e7);
        const channel::ScaAnchor anchor{rng.log_uniform(1e4, 1e7)};
        const auto dp = oracle::finite_diff([&](double x) { return channel::rate(x, b, link); }, p);
        CHECK(rel_err(dp.value, channel::d_rate_dp(p, b, link)) < 1e-6);
        const auto db = oracle::finite_diff([&](double x) { return channel::surrogate_rate(p, x, link, anchor); }, b,
                                            {.rel = 1e-6, .unit = 1e6});
        const double ref = channel::d_surrogate_dB(p, b, link, anchor);
        CHECK(std::abs(db.value - ref) <= 1e-6 * std::max(std::abs(ref), 1e-3 * channel::d_rate_dB(p, b, link)));
    }
}

TEST_CASE("grid guard", "[oracle]") {
    auto spec = test::fixture_n2();
    spec.n_users = 4;
    spec.distances_km = {0.1, 0.2, 0.3, 0.4};
    spec.shadows_db = {0, 0, 0, 0};
    const auto sc4 = harness::generate_scenario(spec);
    const auto anchors4 = anchors_from(std::vector<double>(4, 5e5));
    CHECK_THROWS_AS(oracle::grid_search(sc4, anchors4, oracle::ZPolicy::kDirect, {}), DomainError);

    const auto sc2 = harness::generate_scenario(test::fixture_n2());
    const auto anchors2 = anchors_from({1e6, 1e6});
    oracle::GridSpec huge;
    huge.points_per_axis = 4000;
    CHECK(oracle::estimated_evaluations(2, huge) > oracle::kMaxGridEvaluations);
    CHECK_THROWS_AS(oracle::grid_search(sc2, anchors2, oracle::ZPolicy::kDirect, huge), DomainError);

    oracle::GridSpec bad;
    bad.points_per_axis = 1;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("single-user grid matches the solver", "[oracle]") {
    auto spec = test::fixture_n2();
    spec.n_users = 1;
    spec.distances_km = {0.3};
    spec.shadows_db = {-2.0};
    const auto sc = harness::generate_scenario(spec);
    const auto anchors = anchors_from({sc.b_total_hz});
    const auto fp = solver::fractional_programming(anchors, solver::initial_allocation(sc), sc, {});
    const auto grid = oracle::grid_search(sc, anchors, oracle::ZPolicy::kDirect, {});
    const double value = oracle::surrogate_value(fp.alloc, sc, anchors, oracle::ZPolicy::kDirect);
    CHECK(value <= grid.value + 0.02 * std::abs(grid.value));
    CHECK(grid.evaluations > 0);
}

TEST_CASE("symmetric users give a symmetric grid optimum", "[oracle]") {
    auto spec = test::fixture_n2();
    spec.distances_km = {0.25, 0.25};
    spec.shadows_db = {0.0, 0.0};
    const auto sc = harness::generate_scenario(spec);
    const auto anchors = anchors_from({1e6, 1e6});
    oracle::GridSpec g;
    g.points_per_axis = 32;
    const auto best = oracle::grid_search(sc, anchors, oracle::ZPolicy::kDirect, g);
    // Within two grid steps of the diagonal in both budgets.
    CHECK(std::abs(best.alloc.p[0] - best.alloc.p[1]) <= 4.0 * sc.p_total_w / g.points_per_axis);
    CHECK(std::abs(best.alloc.b[0] - best.alloc.b[1]) <= 4.0 * sc.b_total_hz / g.points_per_axis);
    CHECK(rel_err(best.alloc.s[0], best.alloc.s[1]) < 0.2);
}

TEST_CASE("refinement never makes the grid optimum worse", "[oracle]") {
    const auto sc = harness::generate_scenario(test::fixture_n2(0.3));
    const auto anchors = anchors_from({5e5, 1.5e6});
    oracle::GridSpec coarse;
    coarse.points_per_axis = 24;
    coarse.refine = false;
    auto refined = coarse;
    refined.refine = true;
    const auto a = oracle::grid_search(sc, anchors, oracle::ZPolicy::kDirect, coarse);
    const auto b = oracle::grid_search(sc, anchors, oracle::ZPolicy::kDirect, refined);
    CHECK(b.value <= a.value);
    CHECK(b.evaluations > a.evaluations);
    CHECK(solver::check_feasible(b.alloc, sc).ok());
}

TEST_CASE("both value policies agree", "[oracle]") {
    const auto sc = harness::generate_scenario(test::fixture_n2());
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto x = harness::baseline_random(sc, seed);
        const auto anchors = anchors_from(x.b);
        const double direct = oracle::surrogate_value(x, sc, anchors, oracle::ZPolicy::kDirect);
        const double via_z = oracle::surrogate_value(x, sc, anchors, oracle::ZPolicy::kOptimalZ);
        CHECK(std::abs(direct - via_z) <= 1e-9 * std::max(1.0, std::abs(direct)));
        CHECK(std::abs(direct - semcost::surrogate_objective(x, sc, anchors)) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
    const auto anchors = anchors_from({7e5, 1.3e6});
    oracle::GridSpec g;
    g.points_per_axis = 16;
    const auto a = oracle::grid_search(sc, anchors, oracle::ZPolicy::kDirect, g);
    const auto b = oracle::grid_search(sc, anchors, oracle::ZPolicy::kOptimalZ, g);
    CHECK(std::abs(a.value - b.value) <= 1e-9 * std::max(1.0, std::abs(a.value)));
}
