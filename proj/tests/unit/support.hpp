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

#include <cmath>
#include <random>

#include "secomm/harness.hpp"

namespace secomm::test {

inline constexpr double kN0 = 3.98107170553497e-21;  // -174 dBm/Hz in W/Hz

inline channel::LinkParams make_link(double distance_km, double shadow_db, double eve_ratio = 0.1,
                                     double p_min = 1e-3) {
    channel::LinkParams l;
    l.h = channel::gain_from_loss(channel::path_loss_db(distance_km), shadow_db);
    l.noise_var = kN0;
    l.eve_p = p_min;
    l.eve_h = eve_ratio * l.h;
    l.eve_noise_var = kN0;
    return l;
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    channel::LinkParams link() { return make_link(uniform(0.035, 0.5), uniform(-12.0, 12.0)); }

private:
    std::mt19937_64 rng_;
};

/// Two users at different distances, modest budgets.
inline harness::ScenarioSpec fixture_n2(double w1 = 0.5) {
    harness::ScenarioSpec s;
    s.n_users = 2;
    s.seed = 7;
    s.distances_km = {0.12, 0.38};
    s.shadows_db = {0.0, 4.0};
    s.p_total_dbm = 30.0;
    s.b_total_hz = 2e6;
    s.weights = {w1, 1.0 - w1};
    return s;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace secomm::test
