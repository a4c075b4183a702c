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

#include "fdsic/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/FFT>

#include "fdsic/error.hpp"

namespace fdsic {

ComplexSignal::ComplexSignal(std::vector<cplx> samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz)
{
    if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_))
        throw InvalidInput("sample rate must be positive and finite");
    for (const auto& s : samples_) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw InvalidInput("signal contains non-finite samples");
    }
}

ComplexSignal ComplexSignal::zeros(std::size_t n, double sample_rate_hz)
{
    return ComplexSignal(std::vector<cplx>(n), sample_rate_hz);
}

ComplexSignal ComplexSignal::slice(std::size_t start, std::size_t len) const
{
    if (start > samples_.size() || len > samples_.size() - start)
        throw InvalidInput("slice [" + std::to_string(start) + ", +" + std::to_string(len) +
                           ") out of range for " + std::to_string(samples_.size()) + " samples");
    return ComplexSignal({samples_.begin() + static_cast<std::ptrdiff_t>(start),
                          samples_.begin() + static_cast<std::ptrdiff_t>(start + len)},
                         sample_rate_hz_);
}

ComplexSignal ComplexSignal::scaled(cplx factor) const
{
    std::vector<cplx> out(samples_);
    for (auto& s : out)
        s *= factor;
    return ComplexSignal(std::move(out), sample_rate_hz_);
}

namespace {

void require_compatible(const ComplexSignal& a, const ComplexSignal& b)
{
    if (a.size() != b.size())
        throw InvalidInput("signal length mismatch: " + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()));
    if (a.sample_rate_hz() != b.sample_rate_hz())
        throw InvalidInput("signal sample-rate mismatch");
}

} // namespace

ComplexSignal operator+(const ComplexSignal& a, const ComplexSignal& b)
{
    require_compatible(a, b);
    std::vector<cplx> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a.samples_[i] + b.samples_[i];
    return ComplexSignal(std::move(out), a.sample_rate_hz_);
}

ComplexSignal operator-(const ComplexSignal& a, const ComplexSignal& b)
{
    require_compatible(a, b);
    std::vector<cplx> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a.samples_[i] - b.samples_[i];
    return ComplexSignal(std::move(out), a.sample_rate_hz_);
}

void OfdmConfig::validate() const
{
    if (n_subcarriers == 0 || n_data_subcarriers == 0)
        throw InvalidInput("OFDM subcarrier counts must be positive");
    if (n_data_subcarriers > n_subcarriers - 1)
        throw InvalidInput("n_data_subcarriers must leave room for the null DC bin");
    if (oversampling == 0)
        throw InvalidInput("oversampling must be >= 1");
    if (!(base_rate_hz > 0.0))
        throw InvalidInput("base rate must be positive");
}

namespace dsp {

std::vector<cplx> qam16_map(std::span<const std::uint8_t> bits)
{
    if (bits.size() % 4 != 0)
        throw InvalidInput("16-QAM mapping needs a multiple of 4 bits, got " +
                           std::to_string(bits.size()));
    // Gray order along each axis: 00 01 11 10 -> -3 -1 +1 +3
    constexpr double level[4] = {-3.0, -1.0, 3.0, 1.0}; // indexed by (b_hi << 1) | b_lo
    const double scale = 1.0 / std::sqrt(10.0);

    std::vector<cplx> out;
    out.reserve(bits.size() / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        const unsigned ii = ((bits[i] & 1u) << 1) | (bits[i + 1] & 1u);
        const unsigned qq = ((bits[i + 2] & 1u) << 1) | (bits[i + 3] & 1u);
        out.emplace_back(level[ii] * scale, level[qq] * scale);
    }
    return out;
}

namespace {

// FFT bin of the j-th data symbol within one OFDM symbol.
std::size_t data_bin(std::size_t j, const OfdmConfig& cfg)
{
    const std::size_t n_fft = cfg.fft_size();
    const std::size_t n_neg = cfg.n_data_subcarriers / 2;
    if (j < n_neg)
        return n_fft - n_neg + j;   // -n_neg .. -1
    return j - n_neg + 1;           // +1 .. +n_pos
}

double ofdm_scale(const OfdmConfig& cfg)
{
    return static_cast<double>(cfg.fft_size()) / std::sqrt(static_cast<double>(cfg.n_data_subcarriers));
}

} // namespace

ComplexSignal ofdm_modulate(std::span<const cplx> symbols, const OfdmConfig& cfg)
{
    cfg.validate();
    const std::size_t n_data = cfg.n_data_subcarriers;
    if (symbols.size() % n_data != 0)
        throw InvalidInput("symbol count " + std::to_string(symbols.size()) +
                           " is not a multiple of " + std::to_string(n_data) + " data subcarriers");

    const std::size_t n_fft = cfg.fft_size();
    const std::size_t n_cp = cfg.cp_len_oversampled();
    const std::size_t n_sym = symbols.size() / n_data;
    const double scale = ofdm_scale(cfg);

    Eigen::FFT<double> fft;
    std::vector<cplx> freq(n_fft), time(n_fft);
    std::vector<cplx> out;
    out.reserve(n_sym * cfg.symbol_len());

    for (std::size_t s = 0; s < n_sym; ++s) {
        std::fill(freq.begin(), freq.end(), cplx{});
        for (std::size_t j = 0; j < n_data; ++j)
            freq[data_bin(j, cfg)] = symbols[s * n_data + j];
        fft.inv(time, freq);
        for (auto& t : time)
            t *= scale;
        out.insert(out.end(), time.end() - static_cast<std::ptrdiff_t>(n_cp), time.end());
        out.insert(out.end(), time.begin(), time.end());
    }
    return ComplexSignal(std::move(out), cfg.sample_rate_hz());
}

std::vector<cplx> ofdm_demodulate(const ComplexSignal& sig, const OfdmConfig& cfg)
{
    cfg.validate();
    const std::size_t sym_len = cfg.symbol_len();
    if (sig.size() % sym_len != 0)
        throw InvalidInput("signal length " + std::to_string(sig.size()) +
                           " is not a multiple of the OFDM symbol length " + std::to_string(sym_len));

    const std::size_t n_fft = cfg.fft_size();
    const std::size_t n_cp = cfg.cp_len_oversampled();
    const double inv_scale = 1.0 / ofdm_scale(cfg);
    const auto x = sig.samples();

    Eigen::FFT<double> fft;
    std::vector<cplx> time(n_fft), freq(n_fft);
    std::vector<cplx> out;
    out.reserve(sig.size() / sym_len * cfg.n_data_subcarriers);

    for (std::size_t start = 0; start < sig.size(); start += sym_len) {
        std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(start + n_cp), n_fft, time.begin());
        fft.fwd(freq, time);
        for (std::size_t j = 0; j < cfg.n_data_subcarriers; ++j)
            out.push_back(freq[data_bin(j, cfg)] * inv_scale);
    }
    return out;
}

ComplexSignal fir_filter(const ComplexSignal& x, std::span<const cplx> h)
{
    if (h.empty())
        throw InvalidInput("FIR filter needs at least one tap");
    const auto in = x.samples();
    std::vector<cplx> out(in.size());
    for (std::size_t n = 0; n < in.size(); ++n) {
        cplx acc{};
        const std::size_t kmax = std::min(h.size() - 1, n);
        for (std::size_t k = 0; k <= kmax; ++k)
            acc += h[k] * in[n - k];
        out[n] = acc;
    }
    return ComplexSignal(std::move(out), x.sample_rate_hz());
}

ComplexSignal delay(const ComplexSignal& x, long d)
{
    const auto in = x.samples();
    const long n = static_cast<long>(in.size());
    std::vector<cplx> out(in.size());
    for (long i = 0; i < n; ++i) {
        const long src = i - d;
        if (src >= 0 && src < n)
            out[static_cast<std::size_t>(i)] = in[static_cast<std::size_t>(src)];
    }
    return ComplexSignal(std::move(out), x.sample_rate_hz());
}

double mean_power_w(const ComplexSignal& x)
{
    if (x.empty())
        throw InvalidInput("power of an empty signal is undefined");
    double acc = 0.0;
    for (const auto& s : x.samples())
        acc += std::norm(s);
    return acc / static_cast<double>(x.size());
}

double measure_power_dbm(const ComplexSignal& x)
{
    const double p = mean_power_w(x);
    if (p == 0.0)
        return -std::numeric_limits<double>::infinity();
    return watts_to_dbm(p);
}

ComplexSignal set_power_dbm(const ComplexSignal& x, double target_dbm)
{
    const double p = mean_power_w(x);
    if (p == 0.0)
        throw InvalidInput("cannot set the power of a zero-power signal");
    const double factor = std::sqrt(dbm_to_watts(target_dbm) / p);
    if (factor == 1.0)
        return x;
    return x.scaled(factor);
}

double papr_db(const ComplexSignal& x)
{
    const double p = mean_power_w(x);
    if (p == 0.0)
        throw InvalidInput("PAPR of a zero-power signal is undefined");
    double peak = 0.0;
    for (const auto& s : x.samples())
        peak = std::max(peak, std::norm(s));
    return lin_to_db(peak / p);
}

} // namespace dsp
} // namespace fdsic
