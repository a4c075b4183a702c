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

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fdsic {

using cplx = std::complex<double>;

/// Complex baseband samples at a fixed sample rate.
///
/// Power convention used throughout the library: |sample|^2 is the
/// instantaneous power in watts, so a constant amplitude of sqrt(1e-3) is
/// 0 dBm. Construction rejects non-finite samples and non-positive rates.
class ComplexSignal {
public:
    ComplexSignal(std::vector<cplx> samples, double sample_rate_hz);

    static ComplexSignal zeros(std::size_t n, double sample_rate_hz);

    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    double sample_rate_hz() const noexcept { return sample_rate_hz_; }

    std::span<const cplx> samples() const noexcept { return samples_; }
    const cplx& operator[](std::size_t i) const { return samples_[i]; }

    /// Copy of samples [start, start + len). Throws InvalidInput when out of range.
    ComplexSignal slice(std::size_t start, std::size_t len) const;

    ComplexSignal scaled(cplx factor) const;

    friend ComplexSignal operator+(const ComplexSignal& a, const ComplexSignal& b);
    friend ComplexSignal operator-(const ComplexSignal& a, const ComplexSignal& b);

private:
    std::vector<cplx> samples_;
    double sample_rate_hz_;
};

enum class Constellation { Qam16 };

struct OfdmConfig {
    std::size_t n_subcarriers = 64;
    std::size_t n_data_subcarriers = 48;
    std::size_t cp_len_samples = 16; // at the base rate
    std::size_t oversampling = 4;
    double base_rate_hz = 20e6;
    Constellation constellation = Constellation::Qam16;

    std::size_t fft_size() const noexcept { return n_subcarriers * oversampling; }
    std::size_t cp_len_oversampled() const noexcept { return cp_len_samples * oversampling; }
    std::size_t symbol_len() const noexcept { return fft_size() + cp_len_oversampled(); }
    double sample_rate_hz() const noexcept { return base_rate_hz * static_cast<double>(oversampling); }

    /// Throws InvalidInput on a structurally impossible layout.
    void validate() const;
};

namespace dsp {

/// Gray-mapped 16-QAM at unit average power. Each group of four bits
/// (b0 b1 b2 b3) selects the in-phase level from b0 b1 and the quadrature
/// level from b2 b3 with the Gray labeling 00 -> -3, 01 -> -1, 11 -> +1,
/// 10 -> +3, scaled by 1/sqrt(10). Bits are 0/1 bytes.
std::vector<cplx> qam16_map(std::span<const std::uint8_t> bits);

/// Multi-symbol OFDM modulation with cyclic prefix.
///
/// Data symbols fill n_data_subcarriers bins split around a null DC bin
/// (lower half on negative frequencies, upper half on positive ones); the
/// remaining bins of the n_subcarriers * oversampling point IDFT are zero.
/// The output is scaled by fft_size / sqrt(n_data) so unit-power symbols
/// produce unit average output power.
ComplexSignal ofdm_modulate(std::span<const cplx> symbols, const OfdmConfig& cfg);

/// Exact inverse of ofdm_modulate on an ideal channel.
std::vector<cplx> ofdm_demodulate(const ComplexSignal& sig, const OfdmConfig& cfg);

/// Same-length linear convolution with zero pre-history.
ComplexSignal fir_filter(const ComplexSignal& x, std::span<const cplx> h);

/// Delay by `delay` samples (negative advances), zero filled, same length.
ComplexSignal delay(const ComplexSignal& x, long delay);

double mean_power_w(const ComplexSignal& x);

/// 10*log10(mean|x|^2 / 1 mW). Returns -infinity for an all-zero input.
double measure_power_dbm(const ComplexSignal& x);

ComplexSignal set_power_dbm(const ComplexSignal& x, double target_dbm);

double papr_db(const ComplexSignal& x);

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }
inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace dsp
} // namespace fdsic
