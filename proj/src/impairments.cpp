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

#include "fdsic/impairments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fdsic/error.hpp"

namespace fdsic::impairments {

void PAParams::validate() const
{
    if (memory_len < 1)
        throw ConfigurationError("PA memory length must be >= 1");
    if (!(first_tap_energy >= 0.9 && first_tap_energy <= 1.0))
        throw ConfigurationError("PA first-tap energy share must lie in [0.9, 1]");
    if (!std::isfinite(gain_db) || !std::isfinite(iip3_dbm) || !std::isfinite(p1db_dbm))
        throw ConfigurationError("PA gain, IIP3 and P1dB must be finite");
}

void AdcParams::validate() const
{
    if (bits < 1 || bits > 32)
        throw ConfigurationError("ADC bits must lie in [1, 32]");
    if (!(vrange > 0.0))
        throw ConfigurationError("ADC voltage range must be positive");
}

WienerPA WienerPA::memoryless() const
{
    WienerPA pa = *this;
    pa.memory_fir = {cplx{1.0, 0.0}};
    return pa;
}

namespace {

// Real positive taps decaying geometrically (rate r) with seeded jitter.
// Positive decaying taps keep the response low-pass; sum of tail magnitudes
// below the first tap keeps it minimum phase.
std::vector<cplx> design_memory_fir(std::size_t len, double first_tap_energy, std::uint64_t seed)
{
    if (len == 1 || first_tap_energy >= 1.0)
        return std::vector<cplx>(1, cplx{1.0, 0.0});

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.8, 1.0);
    std::vector<double> shape(len, 1.0);
    for (std::size_t k = 1; k < len; ++k)
        shape[k] = jitter(rng);

    auto taps_for = [&](double r) {
        std::vector<double> g(len);
        double w = 1.0;
        for (std::size_t k = 0; k < len; ++k, w *= r)
            g[k] = w * shape[k];
        return g;
    };
    auto first_share = [&](double r) {
        const auto g = taps_for(r);
        double e = 0.0;
        for (double v : g)
            e += v * v;
        return g[0] * g[0] / e;
    };

    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (first_share(mid) > first_tap_energy)
            lo = mid;
        else
            hi = mid;
    }
    auto g = taps_for(0.5 * (lo + hi));
    double e = 0.0;
    for (double v : g)
        e += v * v;
    std::vector<cplx> fir(len);
    for (std::size_t k = 0; k < len; ++k)
        fir[k] = g[k] / std::sqrt(e);
    return fir;
}

} // namespace

WienerPA design_pa(const PAParams& p, std::uint64_t seed)
{
    p.validate();

    const double a1 = std::pow(10.0, p.gain_db / 20.0);
    const double p3 = dsp::dbm_to_watts(p.iip3_dbm);
    const double p1 = dsp::dbm_to_watts(p.p1db_dbm - p.gain_db);
    const double target = std::pow(10.0, -1.0 / 20.0);

    // Normalized single-tone gain at input power x: 1 - x/p3 + c*x^2, c = a5/a1.
    auto gain_at = [&](double c, double x) { return 1.0 - x / p3 + c * x * x; };

    const double bound = 4.0 * std::max(1.0, p1 / p3) / (p1 * p1);
    double lo = -bound, hi = bound;
    const double f_lo = gain_at(lo, p1) - target;
    const double f_hi = gain_at(hi, p1) - target;
    auto infeasible = [&](const char* why) {
        std::ostringstream os;
        os << "no PA polynomial realizes IIP3 " << p.iip3_dbm << " dBm with P1dB " << p.p1db_dbm
           << " dBm (" << why << ")";
        return ConfigurationError(os.str());
    };
    if (f_lo * f_hi > 0.0)
        throw infeasible("a5 not bracketed");

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((gain_at(mid, p1) - target) * f_lo > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double c = 0.5 * (lo + hi);

    // The target must be the first -1 dB crossing of the AM/AM curve.
    constexpr int n_scan = 400;
    for (int i = 1; i < n_scan; ++i) {
        const double x = p1 * static_cast<double>(i) / n_scan;
        if (std::abs(gain_at(c, x)) < target)
            throw infeasible("AM/AM curve compresses by 1 dB before the target point");
    }

    WienerPA pa;
    pa.memory_fir = design_memory_fir(p.memory_len, p.first_tap_energy, seed);
    pa.a1 = a1;
    pa.a3 = -a1 / p3;
    pa.a5 = c * a1;
    return pa;
}

double am_am_gain_db(const WienerPA& pa, double input_dbm)
{
    const double amp = std::sqrt(dsp::dbm_to_watts(input_dbm));
    const cplx y = pa.polynomial(cplx{amp, 0.0});
    return 20.0 * std::log10(std::abs(y) / (amp * std::abs(pa.a1)));
}

ComplexSignal pa_apply(const WienerPA& pa, const ComplexSignal& x)
{
    const ComplexSignal u = dsp::fir_filter(x, pa.memory_fir);
    std::vector<cplx> y(u.size());
    for (std::size_t n = 0; n < u.size(); ++n)
        y[n] = pa.polynomial(u[n]);
    return ComplexSignal(std::move(y), x.sample_rate_hz());
}

ComplexSignal gaussian_noise(std::size_t n, double sample_rate_hz, double noise_dbm, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(dsp::dbm_to_watts(noise_dbm) / 2.0));
    std::vector<cplx> w(n);
    for (auto& v : w) {
        const double re = normal(rng);
        const double im = normal(rng);
        v = {re, im};
    }
    return ComplexSignal(std::move(w), sample_rate_hz);
}

ComplexSignal awgn(const ComplexSignal& x, double noise_dbm, std::uint64_t seed)
{
    return x + gaussian_noise(x.size(), x.sample_rate_hz(), noise_dbm, seed);
}

double agc_gain(const ComplexSignal& x, const AdcParams& adc, double papr_db)
{
    adc.validate();
    const double p = dsp::mean_power_w(x);
    if (p == 0.0)
        throw InvalidInput("AGC cannot set a gain for a zero-power signal");
    return 0.5 * adc.vrange / (std::sqrt(p) * std::pow(10.0, papr_db / 20.0));
}

ComplexSignal adc_quantize(const ComplexSignal& x, const AdcParams& adc)
{
    adc.validate();
    const double step = adc.step();
    const double top = 0.5 * adc.vrange - 0.5 * step;
    auto q = [&](double v) { return std::clamp(step * (std::floor(v / step) + 0.5), -top, top); };

    std::vector<cplx> out(x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        out[n] = {q(x[n].real()), q(x[n].imag())};
    return ComplexSignal(std::move(out), x.sample_rate_hz());
}

} // namespace fdsic::impairments
