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

#include "secomm/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "secomm/errors.hpp"

namespace secomm::channel {
namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_bandwidth(double b, const char* op) {
    if (!(b >= kBandwidthFloorHz) || !std::isfinite(b)) {
        throw DomainError(std::string(op) + ": bandwidth must be >= " + std::to_string(kBandwidthFloorHz) +
                          " Hz, got " + std::to_string(b));
    }
}

void require_power(double p, const char* op) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
        throw DomainError(std::string(op) + ": power must be finite and >= 0, got " + std::to_string(p));
    }
}

// B*log2(1 + c/B) for an SNR density c.
double capacity(double density, double b) { return b * std::log1p(density / b) / kLn2; }

// d/dB of capacity(c, B): log2(1+x) - x/(ln2 (1+x)), x = c/B. Depends on x only.
double capacity_slope(double density, double b) {
    const double x = density / b;
    return (std::log1p(x) - x / (1.0 + x)) / kLn2;
}

}  // namespace

void LinkParams::validate() const {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    auto non_negative = [](double v) { return v >= 0.0 && std::isfinite(v); };
    if (!positive(h)) throw DomainError("link: channel gain must be positive");
    if (!positive(noise_var)) throw DomainError("link: noise density must be positive");
    if (!non_negative(eve_p)) throw DomainError("link: eavesdropper power must be >= 0");
    if (!non_negative(eve_h)) throw DomainError("link: eavesdropper gain must be >= 0");
    if (!positive(eve_noise_var)) throw DomainError("link: eavesdropper noise density must be positive");
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) {
    if (!(linear > 0.0)) throw DomainError("linear_to_db: value must be positive");
    return 10.0 * std::log10(linear);
}

double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double watts_to_dbm(double watts) {
    if (!(watts > 0.0)) throw DomainError("watts_to_dbm: power must be positive");
    return 10.0 * std::log10(watts * 1e3);
}

double path_loss_db(double distance_km) {
    if (!(distance_km > 0.0)) {
        throw DomainError("path_loss_db: distance must be positive, got " + std::to_string(distance_km));
    }
    return 128.1 + 37.6 * std::log10(distance_km);
}

double gain_from_loss(double loss_db, double shadow_db) noexcept {
    return std::pow(10.0, -(loss_db + shadow_db) / 10.0);
}

double rate(double p, double b, const LinkParams& link) {
    require_bandwidth(b, "rate");
    require_power(p, "rate");
    return capacity(link.snr_density(p), b);
}

double eavesdrop_rate(double b, const LinkParams& link) {
    require_bandwidth(b, "eavesdrop_rate");
    return capacity(link.eve_snr_density(), b);
}

double secrecy_rate(double p, double b, const LinkParams& link, std::optional<std::size_t> user) {
    require_bandwidth(b, "secrecy_rate");
    require_power(p, "secrecy_rate");
    if (link.snr_density(p) < link.eve_snr_density()) {
        throw PreconditionError("secrecy_rate: power " + std::to_string(p) +
                                    " W is below the minimum secure power " +
                                    std::to_string(link.min_secure_power()) + " W",
                                user);
    }
    return rate(p, b, link) - eavesdrop_rate(b, link);
}

double surrogate_rate(double p, double b, const LinkParams& link, ScaAnchor anchor) {
    require_bandwidth(b, "surrogate_rate");
    require_bandwidth(anchor.b_anchor, "surrogate_rate(anchor)");
    const double ba = anchor.b_anchor;
    const double tangent = eavesdrop_rate(ba, link) + d_eavesdrop_dB(ba, link) * (b - ba);
    return rate(p, b, link) - tangent;
}

double d_rate_dp(double p, double b, const LinkParams& link) {
    require_bandwidth(b, "d_rate_dp");
    require_power(p, "d_rate_dp");
    const double x = link.snr_density(p) / b;
    return link.h / (link.noise_var * kLn2 * (1.0 + x));
}

double d_rate_dB(double p, double b, const LinkParams& link) {
    require_bandwidth(b, "d_rate_dB");
    require_power(p, "d_rate_dB");
    return capacity_slope(link.snr_density(p), b);
}

double d_eavesdrop_dB(double b, const LinkParams& link) {
    require_bandwidth(b, "d_eavesdrop_dB");
    return capacity_slope(link.eve_snr_density(), b);
}

double d_surrogate_dB(double p, double b, const LinkParams& link, ScaAnchor anchor) {
    return d_rate_dB(p, b, link) - d_eavesdrop_dB(anchor.b_anchor, link);
}

double surrogate_peak_bandwidth(double p, const LinkParams& link, ScaAnchor anchor) {
    require_bandwidth(anchor.b_anchor, "surrogate_peak_bandwidth");
    const double eve = link.eve_snr_density();
    if (eve <= 0.0) return std::numeric_limits<double>::infinity();
    // capacity_slope depends on c/B alone and is strictly increasing in it, so the
    // slope of the legitimate rate meets the tangent slope where c/B = c_eve/B_anchor.
    return anchor.b_anchor * link.snr_density(p) / eve;
}

}  // namespace secomm::channel
