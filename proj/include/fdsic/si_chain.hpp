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

#include <cstdint>
#include <limits>
#include <vector>

#include "fdsic/dsp.hpp"

namespace fdsic::si {

struct SIChannelSpec {
    std::size_t n_taps = 5;
    double k_factor_db = 35.8;          // +infinity selects the single-path channel
    double antenna_separation_db = 40.0;
    std::uint64_t seed = 0;
};

/// Coupling channel h and RF-canceller response a, both at the simulation rate
/// with the nominal propagation delay removed (tap 0 is the direct path).
struct SIChannel {
    std::vector<cplx> h;
    std::vector<cplx> a;

    /// h - a, the response seen by the receiver after RF cancellation.
    std::vector<cplx> effective() const;
    double total_power() const;    // sum |h|^2
    double residual_power() const; // sum |h - a|^2
};

SIChannel gen_si_channel(const SIChannelSpec& spec);

/// Amplitude-mismatched main-tap canceller: a_0 = (1 - delta) h_0 with delta
/// found by bisection so the residual SI power sits target_reduction_db below
/// the uncancelled power. Throws ConfigurationError past the multipath floor.
SIChannel tune_rf_canceller(const SIChannel& ch, double target_reduction_db);

/// Best reduction a main-tap canceller can reach on `ch`, in dB.
double max_rf_reduction_db(const SIChannel& ch);

ComplexSignal si_path_apply(const SIChannel& ch, const ComplexSignal& x_pa);

} // namespace fdsic::si
