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

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <optional>

namespace secomm::detail {

struct RootOptions {
    double rel_tol = 1e-10;
    int max_iter = 200;
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

// Grows a bracket [lo, hi] around the sign change of a non-increasing f on the
// positive axis, so that f(lo) > 0 >= f(hi). The step factor is squared after
// each step when `accelerate` is set. Returns nullopt when f keeps its sign
// all the way to x_min or x_max.
template <class F>
std::optional<Bracket> bracket_decreasing(F&& f, double guess, double factor, double x_min = 1e-300,
                                          double x_max = 1e300, bool accelerate = false) {
    auto grow = [&] {
        if (accelerate) factor *= factor;
    };
    Bracket br;
    const double f_guess = f(guess);
    if (f_guess > 0.0) {
        br.lo = guess;
        br.f_lo = f_guess;
        double x = guess;
        for (;;) {
            x *= factor;
            if (x > x_max) return std::nullopt;
            const double fx = f(x);
            if (fx <= 0.0) {
                br.hi = x;
                br.f_hi = fx;
                return br;
            }
            br.lo = x;
            br.f_lo = fx;
            grow();
        }
    }
    br.hi = guess;
    br.f_hi = f_guess;
    double x = guess;
    for (;;) {
        x /= factor;
        if (x < x_min) return std::nullopt;
        const double fx = f(x);
        if (fx > 0.0) {
            br.lo = x;
            br.f_lo = fx;
            return br;
        }
        br.hi = x;
        br.f_hi = fx;
        grow();
    }
}

// Root of a non-increasing f with f(lo) > 0 >= f(hi), searched in log(x) with
// TOMS 748 so the tolerance is relative. Returns the right end of the final
// bracket, i.e. a point with f <= 0. The result is always an x at which f was
// evaluated, bit for bit, so callers may cache by x.
template <class F>
double decreasing_root_log(F&& f, const Bracket& br, const RootOptions& opt) {
    if (br.f_hi == 0.0) return br.hi;
    auto g = [&](double t) { return f(std::exp(t)); };
    auto tol = [&](double a, double b) { return std::abs(b - a) <= opt.rel_tol; };
    std::uintmax_t iters = static_cast<std::uintmax_t>(opt.max_iter);
    const double t_hi = std::log(br.hi);
    const auto [a, b] = boost::math::tools::toms748_solve(g, std::log(br.lo), t_hi, br.f_lo, br.f_hi, tol, iters);
    (void)a;
    return b == t_hi ? br.hi : std::exp(b);
}

}  // namespace secomm::detail
