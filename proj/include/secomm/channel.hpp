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

namespace secomm::channel {

/// Smallest bandwidth (Hz) any rate expression is evaluated at.
inline constexpr double kBandwidthFloorHz = 1.0;

/// Link constants for one user and its dedicated eavesdropper.
/// All arithmetic is in linear SI units: W, Hz, W/Hz.
struct LinkParams {
    double h = 0.0;              ///< legitimate channel power gain
    double noise_var = 0.0;      ///< legitimate noise PSD (W/Hz)
    double eve_p = 0.0;          ///< eavesdropper-link power (W)
    double eve_h = 0.0;          ///< eavesdropper channel gain
    double eve_noise_var = 0.0;  ///< eavesdropper noise PSD (W/Hz)

    /// p*h/noise_var, the legitimate SNR times bandwidth (Hz).
    [[nodiscard]] double snr_density(double p) const noexcept { return p * h / noise_var; }
    [[nodiscard]] double eve_snr_density() const noexcept { return eve_p * eve_h / eve_noise_var; }

    /// Smallest power for which the secrecy rate is non-negative at every bandwidth.
    [[nodiscard]] double min_secure_power() const noexcept { return noise_var * eve_h * eve_p / (eve_noise_var * h); }

    void validate() const;
};

/// Linearization point of the eavesdropping rate.
struct ScaAnchor {
    double b_anchor = 0.0;  ///< Hz
};

// ---- unit conversions ------------------------------------------------------

[[nodiscard]] double db_to_linear(double db) noexcept;
[[nodiscard]] double linear_to_db(double linear);
[[nodiscard]] double dbm_to_watts(double dbm) noexcept;
[[nodiscard]] double watts_to_dbm(double watts);

/// Macro-cell path loss 128.1 + 37.6 log10(d) in dB, d in km.
[[nodiscard]] double path_loss_db(double distance_km);

/// Linear power gain for a path loss plus a shadow-fading sample (both dB).
[[nodiscard]] double gain_from_loss(double loss_db, double shadow_db) noexcept;

// ---- rates (bits/s) --------------------------------------------------------

[[nodiscard]] double rate(double p, double b, const LinkParams& link);
[[nodiscard]] double eavesdrop_rate(double b, const LinkParams& link);

/// rate - eavesdrop_rate. Throws PreconditionError when p is below the power
/// that keeps it non-negative; `user` is only used for the message.
[[nodiscard]] double secrecy_rate(double p, double b, const LinkParams& link,
                                  std::optional<std::size_t> user = std::nullopt);

/// Secrecy rate with the eavesdropping term replaced by its tangent at the anchor.
/// Concave in (p, b) and never above secrecy_rate.
[[nodiscard]] double surrogate_rate(double p, double b, const LinkParams& link, ScaAnchor anchor);

// ---- analytic partials -----------------------------------------------------

[[nodiscard]] double d_rate_dp(double p, double b, const LinkParams& link);
[[nodiscard]] double d_rate_dB(double p, double b, const LinkParams& link);
[[nodiscard]] double d_eavesdrop_dB(double b, const LinkParams& link);

/// d surrogate / dp equals d_rate_dp; only the bandwidth partial differs.
[[nodiscard]] double d_surrogate_dB(double p, double b, const LinkParams& link, ScaAnchor anchor);

/// Bandwidth at which the surrogate rate peaks (d_surrogate_dB = 0); +inf
/// without an eavesdropper.
[[nodiscard]] double surrogate_peak_bandwidth(double p, const LinkParams& link, ScaAnchor anchor);

}  // namespace secomm::channel
