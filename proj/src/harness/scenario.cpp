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

#include <cmath>
#include <string>

#include "detail/rng.hpp"
#include "secomm/errors.hpp"
#include "secomm/harness.hpp"

namespace secomm::harness {

void ScenarioSpec::validate() const {
    if (n_users == 0) throw DomainError("n_users must be positive");
    if (!(cell_radius_km > 0.0) || !(min_distance_km > 0.0) || min_distance_km >= cell_radius_km)
        throw DomainError("need 0 < min_distance_km < cell_radius_km");
    if (!(shadow_std_db >= 0.0)) throw DomainError("shadow_std_db must be non-negative");
    if (!std::isfinite(noise_psd_dbm_hz) || !std::isfinite(p_total_dbm))
        throw DomainError("noise and power levels must be finite");
    if (!(b_total_hz >= channel::kBandwidthFloorHz * static_cast<double>(n_users)))
        throw DomainError("b_total_hz must leave every user at least 1 Hz");
    if (!(eve_snr_ratio >= 0.0 && eve_snr_ratio <= 1.0))
        throw DomainError("eve_snr_ratio must lie in [0, 1]");
    if (!distances_km.empty() && distances_km.size() != n_users)
        throw DomainError("distances_km needs one entry per user");
    if (!shadows_db.empty() && shadows_db.size() != n_users)
        throw DomainError("shadows_db needs one entry per user");
    for (double d : distances_km)
        if (!(d > 0.0)) throw DomainError("user distances must be positive");
    cost.validate();
}

double noise_psd_w_per_hz(double dbm_per_hz) noexcept { return channel::dbm_to_watts(dbm_per_hz); }

Scenario generate_scenario(const ScenarioSpec& spec) {
    spec.validate();
    detail::Rng rng(spec.seed);
    const double n0 = noise_psd_w_per_hz(spec.noise_psd_dbm_hz);
    const double r0_sq = spec.min_distance_km * spec.min_distance_km;
    const double r1_sq = spec.cell_radius_km * spec.cell_radius_km;

    Scenario sc;
    sc.p_total_w = channel::dbm_to_watts(spec.p_total_dbm);
    sc.b_total_hz = spec.b_total_hz;
    sc.weights = spec.weights;
    sc.users.reserve(spec.n_users);
    for (std::size_t i = 0; i < spec.n_users; ++i) {
        // Draws are consumed even when overridden so the remaining users keep their values.
        double d_km = std::sqrt(r0_sq + rng.uniform() * (r1_sq - r0_sq));
        double shadow_db = rng.normal(0.0, spec.shadow_std_db);
        if (!spec.distances_km.empty()) d_km = spec.distances_km[i];
        if (!spec.shadows_db.empty()) shadow_db = spec.shadows_db[i];
        const double h = channel::gain_from_loss(channel::path_loss_db(d_km), shadow_db);

        UserProfile u;
        u.cost = spec.cost;
        u.link.h = h;
        u.link.noise_var = n0;
        u.link.eve_p = spec.cost.p_min_w;
        u.link.eve_h = spec.eve_snr_ratio * h;
        u.link.eve_noise_var = n0;
        sc.users.push_back(u);
    }
    sc.validate();
    return sc;
}

}  // namespace secomm::harness
