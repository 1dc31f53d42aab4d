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
#include <cstdint>
#include <numbers>
#include <random>

namespace secomm::detail {

// Distribution transforms are written out so draws are identical across
// standard libraries; only the engine comes from <random>.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open() { return 1.0 - uniform(); }

    double normal(double mean, double stddev) {
        const double r = std::sqrt(-2.0 * std::log(uniform_open()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        return mean + stddev * r * std::cos(theta);
    }

    /// Unit-rate exponential; normalized draws give a uniform simplex point.
    double exponential() { return -std::log(uniform_open()); }

private:
    std::mt19937_64 engine_;
};

}  // namespace secomm::detail
