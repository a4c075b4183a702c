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
#include <vector>

#include "fdsic/dsp.hpp"

namespace fdsic::impairments {

struct PAParams {
    double gain_db = 20.0;
    double iip3_dbm = 15.0;          // input-referred, two-tone per-tone power
    double p1db_dbm = 24.5;          // output-referred by small-signal gain; input P1dB = p1db - gain
    std::size_t memory_len = 6;
    double first_tap_energy = 0.99;  // share of memory-FIR energy in tap 0

    void validate() const;
};

/// Wiener-structure PA: unit-energy memory FIR followed by the odd
/// polynomial y = a1*u + a3*|u|^2*u + a5*|u|^4*u.
struct WienerPA {
    std::vector<cplx> memory_fir;
    cplx a1;
    cplx a3;
    cplx a5;

    cplx polynomial(cplx u) const noexcept
    {
        const double m = std::norm(u);
        return (a1 + m * (a3 + m * a5)) * u;
    }

    /// The same PA with its memory FIR replaced by a single unit tap.
    WienerPA memoryless() const;
};

struct AdcParams {
    unsigned bits = 12;
    double vrange = 4.5; // volts, full scale peak-to-peak

    double step() const noexcept { return vrange / static_cast<double>(1ULL << bits); }
    void validate() const;
};

/// Synthesize a PA whose polynomial meets the gain, IIP3 and P1dB targets.
///
/// a1 is real positive with |a1| = 10^(gain/20). a3 = -a1 / P_iip3 places the
/// two-tone intercept at iip3_dbm (per-tone power convention). a5 is found by
/// bisection so the single-tone gain is exactly 1 dB below small signal at the
/// input-referred compression point, and the AM/AM curve is checked not to
/// cross -1 dB earlier. Throws ConfigurationError when no such a5 exists.
WienerPA design_pa(const PAParams& p, std::uint64_t seed);

/// Single-tone AM/AM gain relative to small-signal gain, in dB, for a
/// memoryless input of power `input_dbm`.
double am_am_gain_db(const WienerPA& pa, double input_dbm);

ComplexSignal pa_apply(const WienerPA& pa, const ComplexSignal& x);

/// Adds circular complex Gaussian noise of total power `noise_dbm`.
ComplexSignal awgn(const ComplexSignal& x, double noise_dbm, std::uint64_t seed);

/// Noise only, same length and rate as `like`.
ComplexSignal gaussian_noise(std::size_t n, double sample_rate_hz, double noise_dbm, std::uint64_t seed);

/// Linear VGA gain mapping rms * 10^(papr_db/20) onto vrange / 2.
double agc_gain(const ComplexSignal& x, const AdcParams& adc, double papr_db);

/// Mid-rise uniform quantizer on I and Q independently, clipped at full scale.
ComplexSignal adc_quantize(const ComplexSignal& x, const AdcParams& adc);

} // namespace fdsic::impairments
