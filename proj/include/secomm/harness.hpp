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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "secomm/model.hpp"
#include "secomm/solver.hpp"

namespace secomm::harness {

/// Bits in one megabyte (10^6 bytes).
inline constexpr double kBitsPerMegabyte = 8e6;

/// Recipe for a reproducible scenario: same spec (seed included), same scenario.
struct ScenarioSpec {
    std::size_t n_users = 30;
    std::uint64_t seed = 1;
    double cell_radius_km = 0.5;
    double min_distance_km = 0.035;
    double noise_psd_dbm_hz = -174.0;
    double shadow_std_db = 8.0;
    double p_total_dbm = 40.0;
    double b_total_hz = 10e6;
    Weights weights{0.5, 0.5};
    /// Eavesdropper SNR density as a fraction of the legitimate one at p_min.
    double eve_snr_ratio = 0.1;
    /// Constants shared by every user (p_min and s_max included).
    semcost::SemanticCostParams cost;
    /// When non-empty, one entry per user replacing the random draw.
    std::vector<double> distances_km;
    std::vector<double> shadows_db;

    void validate() const;
};

[[nodiscard]] double noise_psd_w_per_hz(double dbm_per_hz) noexcept;

/// Drops users uniformly in an annulus [min_distance, radius], applies path loss
/// and one log-normal shadowing sample per user.
[[nodiscard]] Scenario generate_scenario(const ScenarioSpec& spec);

/// Random S per user, then power and bandwidth shares drawn uniformly from the
/// simplex; powers below p_min are lifted and the rest renormalized.
[[nodiscard]] Allocation baseline_random(const Scenario& scenario, std::uint64_t seed);

/// Even power and bandwidth split, S = s_fraction * S_max.
[[nodiscard]] Allocation baseline_equal(const Scenario& scenario, double s_fraction = 0.5);

enum class Axis { kPowerTotalDbm, kBandwidthTotalMhz, kSizeMaxMbytes };

[[nodiscard]] std::string_view axis_name(Axis axis) noexcept;
[[nodiscard]] std::optional<Axis> parse_axis(std::string_view name) noexcept;

/// Copy of `spec` with the swept constant replaced; value is in the axis unit.
[[nodiscard]] ScenarioSpec with_axis_value(ScenarioSpec spec, Axis axis, double value);

enum class MethodKind { kProposed, kRandom, kEqual };

[[nodiscard]] std::string_view method_name(MethodKind kind) noexcept;
[[nodiscard]] std::optional<MethodKind> parse_method(std::string_view name) noexcept;

struct Method {
    MethodKind kind = MethodKind::kProposed;
    Weights weights{0.5, 0.5};
};

/// Proposed at (0.3,0.7), (0.5,0.5), (0.7,0.3); random and equal at (0.5,0.5).
[[nodiscard]] std::vector<Method> default_methods();

struct SweepRow {
    Axis axis = Axis::kPowerTotalDbm;
    double axis_value = 0.0;
    MethodKind method = MethodKind::kProposed;
    Weights weights;
    double t_total = 0.0;
    double u_total = 0.0;
    double objective = 0.0;
    bool converged = false;
    int iters_outer = 0;
    int iters_fp_total = 0;
    double wall_ms = 0.0;
};

struct SweepResult {
    Axis axis = Axis::kPowerTotalDbm;
    std::vector<double> values;
    std::vector<SweepRow> rows;  ///< ordered by (axis value, method)
    std::vector<double> wall_ms;  ///< measured per row, always populated
    std::vector<std::string> errors;
};

struct SweepOptions {
    solver::SolverConfig solver;
    std::size_t threads = 0;  ///< 0 uses every hardware thread
    int random_draws = 20;
    double equal_s_fraction = 0.5;
    /// Write measured times into the CSV wall_ms column. Off keeps CSVs byte-stable.
    bool record_timing = false;
};

/// Seed of the i-th random-baseline draw for a scenario seed.
[[nodiscard]] std::uint64_t draw_seed(std::uint64_t scenario_seed, int draw) noexcept;

/// Regenerates the scenario at each axis value (same seed) and runs every method.
/// Per-point failures are recorded in `errors` and the row is marked unconverged.
[[nodiscard]] SweepResult sweep(const ScenarioSpec& spec, Axis axis, std::span<const double> values,
                                std::span<const Method> methods, const SweepOptions& options);

/// Parses "lo:hi:step" (inclusive of hi within half a step) or a comma list.
[[nodiscard]] std::vector<double> parse_values(std::string_view text);

// ---- persistence -----------------------------------------------------------

inline constexpr std::string_view kCsvHeader =
    "axis,axis_value,method,w1,w2,T_total_s,U_total,objective,converged,iters_outer,iters_fp_total,wall_ms";

void write_sweep_csv(const SweepResult& result, std::ostream& out);
[[nodiscard]] SweepResult read_sweep_csv(std::istream& in);

struct RunManifest {
    std::string spec_json;    ///< serialized ScenarioSpec
    std::string config_json;  ///< serialized SolverConfig and sweep options
    std::uint64_t seed = 0;
    std::string version;
    std::string started_utc;
};

[[nodiscard]] std::string version_string();
[[nodiscard]] std::string utc_timestamp();

/// Writes <dir>/sweep.csv and <dir>/manifest.json. Throws std::runtime_error
/// naming the path on IO failure.
void persist(const SweepResult& result, const RunManifest& manifest, const std::filesystem::path& dir);

}  // namespace secomm::harness
