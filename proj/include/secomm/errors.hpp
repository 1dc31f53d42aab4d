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
#include <stdexcept>
#include <string>

namespace secomm {

/// Argument outside the mathematical domain of an operation (non-positive
/// bandwidth, size beyond the original data, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A modelling precondition does not hold. Carries the offending user when known.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what, std::optional<std::size_t> user = std::nullopt)
        : std::invalid_argument(user ? "user " + std::to_string(*user) + ": " + what : what), user_(user) {}

    [[nodiscard]] std::optional<std::size_t> user() const noexcept { return user_; }

private:
    std::optional<std::size_t> user_;
};

/// The scenario or an intermediate subproblem admits no feasible point.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace secomm
