// SPDX-License-Identifier: Apache-2.0
//
// fd-sic: baseband full-duplex self-interference simulator
// Copyright (C) 2026 The fd-sic authors
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

#include <stdexcept>
#include <string>

namespace fdsic {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller passed data that violates an operation's precondition.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A configuration cannot be realized (infeasible PA targets, unreachable RF
// cancellation, malformed scenario file).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

// Least-squares estimation failed numerically.
class EstimationError : public Error {
public:
    EstimationError(const std::string& what, double condition)
        : Error(what), condition_(condition) {}

    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

} // namespace fdsic
