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

#include "secomm/semcost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "secomm/errors.hpp"

namespace secomm::semcost {
namespace {

double ipow(double base, int exp) {
    double out = 1.0;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

void require_extraction_domain(double s, const SemanticCostParams& params, const char* op) {
    const double upper = std::max(params.d_data_bits, params.s_max_bits);
    if (!(s > 0.0) || s > upper) {
        throw DomainError(std::string(op) + ": size must lie in (0, " + std::to_string(upper) + "] bits, got " +
                          std::to_string(s));
    }
}

void require_positive_size(double s, const char* op) {
    if (!(s > 0.0)) throw DomainError(std::string(op) + ": size must be positive, got " + std::to_string(s));
}

}  // namespace

void SemanticCostParams::validate() const {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(d_data_bits)) throw DomainError("semcost: data size must be positive");
    if (!positive(c1)) throw DomainError("semcost: c1 must be positive");
    if (c2 < 2 || c2 % 2 != 0) throw DomainError("semcost: c2 must be an even integer >= 2");
    if (!positive(c3)) throw DomainError("semcost: c3 must be positive");
    if (!positive(c4)) throw DomainError("semcost: c4 must be positive");
    if (!(c5 >= 0.0) || !std::isfinite(c5)) throw DomainError("semcost: c5 must be >= 0");
    if (!(y2_coeff >= 0.0)) throw DomainError("semcost: graph construction coefficient must be >= 0");
    if (!positive(f_server_hz)) throw DomainError("semcost: server compute must be positive");
    if (!positive(g_user_hz)) throw DomainError("semcost: user compute must be positive");
    if (!positive(s_max_bits)) throw DomainError("semcost: s_max must be positive");
    if (!positive(p_min_w)) throw DomainError("semcost: p_min must be positive");
}

double server_cycles(double s, const SemanticCostParams& params) {
    require_extraction_domain(s, params, "server_cycles");
    const double graph = params.y2_coeff * params.d_data_bits;
    return graph + params.c1 * ipow(s / params.d_data_bits - 1.0, params.c2);
}

double d_server_cycles(double s, const SemanticCostParams& params) {
    require_extraction_domain(s, params, "d_server_cycles");
    const double d = params.d_data_bits;
    return params.c1 * params.c2 * ipow(s / d - 1.0, params.c2 - 1) / d;
}

double user_cycles(double s, const SemanticCostParams& params) {
    require_positive_size(s, "user_cycles");
    return params.c3 * std::pow(s, -params.c4);
}

double d_user_cycles(double s, const SemanticCostParams& params) {
    require_positive_size(s, "d_user_cycles");
    return -params.c4 * params.c3 * std::pow(s, -params.c4 - 1.0);
}

double utility(double s, const SemanticCostParams& params) {
    if (!(s >= 0.0)) throw DomainError("utility: size must be >= 0, got " + std::to_string(s));
    return -std::expm1(-params.c5 * s);
}

double d_utility(double s, const SemanticCostParams& params) {
    if (!(s >= 0.0)) throw DomainError("d_utility: size must be >= 0, got " + std::to_string(s));
    return params.c5 * std::exp(-params.c5 * s);
}

double size_cost(double s, const SemanticCostParams& params, Weights weights) {
    const double t1 = server_cycles(s, params) / params.f_server_hz;
    const double t3 = user_cycles(s, params) / params.g_user_hz;
    return weights.latency * (t1 + t3) - weights.utility * utility(s, params);
}

double d_size_cost(double s, const SemanticCostParams& params, Weights weights) {
    const double dt1 = d_server_cycles(s, params) / params.f_server_hz;
    const double dt3 = d_user_cycles(s, params) / params.g_user_hz;
    return weights.latency * (dt1 + dt3) - weights.utility * d_utility(s, params);
}

double selected_rate(double p, double b, const channel::LinkParams& link, const RateModel& model,
                     std::optional<std::size_t> user) {
    if (const auto* anchor = std::get_if<channel::ScaAnchor>(&model)) {
        return channel::surrogate_rate(p, b, link, *anchor);
    }
    return channel::secrecy_rate(p, b, link, user);
}

Latency latency_components(double s, double p, double b, const channel::LinkParams& link, const RateModel& model,
                           const SemanticCostParams& params, std::optional<std::size_t> user) {
    const double r = selected_rate(p, b, link, model, user);
    if (!(r > 0.0)) {
        throw DomainError((user ? "user " + std::to_string(*user) + ": " : std::string()) +
                          "transmission time undefined, rate is " + std::to_string(r) + " bits/s");
    }
    return Latency{
        .t1 = server_cycles(s, params) / params.f_server_hz,
        .t2 = s / r,
        .t3 = user_cycles(s, params) / params.g_user_hz,
    };
}

}  // namespace secomm::semcost
