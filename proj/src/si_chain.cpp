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

#include "fdsic/si_chain.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "fdsic/error.hpp"

namespace fdsic::si {

std::vector<cplx> SIChannel::effective() const
{
    std::vector<cplx> d(h.size());
    for (std::size_t k = 0; k < h.size(); ++k)
        d[k] = h[k] - (k < a.size() ? a[k] : cplx{});
    return d;
}

double SIChannel::total_power() const
{
    double p = 0.0;
    for (const auto& t : h)
        p += std::norm(t);
    return p;
}

double SIChannel::residual_power() const
{
    double p = 0.0;
    for (const auto& t : effective())
        p += std::norm(t);
    return p;
}

SIChannel gen_si_channel(const SIChannelSpec& spec)
{
    if (spec.n_taps < 1)
        throw ConfigurationError("SI channel needs at least one tap");
    if (!(spec.antenna_separation_db > 0.0))
        throw ConfigurationError("antenna separation must be positive");
    const bool single_path = std::isinf(spec.k_factor_db) && spec.k_factor_db > 0.0;
    if (spec.n_taps == 1 && !single_path)
        throw ConfigurationError("a one-tap SI channel cannot have a finite K-factor");
    if (std::isnan(spec.k_factor_db))
        throw ConfigurationError("K-factor must not be NaN");

    std::vector<cplx> h(spec.n_taps);
    h[0] = 1.0;
    if (!single_path) {
        std::mt19937_64 rng(spec.seed);
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        double mp = 0.0;
        for (std::size_t k = 1; k < spec.n_taps; ++k) {
            const double re = normal(rng);
            const double im = normal(rng);
            h[k] = {re, im};
            mp += std::norm(h[k]);
        }
        const double want = std::pow(10.0, -spec.k_factor_db / 10.0);
        const double s = std::sqrt(want / mp);
        for (std::size_t k = 1; k < spec.n_taps; ++k)
            h[k] *= s;
    }

    double total = 0.0;
    for (const auto& t : h)
        total += std::norm(t);
    const double s = std::sqrt(std::pow(10.0, -spec.antenna_separation_db / 10.0) / total);
    for (auto& t : h)
        t *= s;

    return SIChannel{h, std::vector<cplx>(h.size())};
}

double max_rf_reduction_db(const SIChannel& ch)
{
    double mp = 0.0;
    for (std::size_t k = 1; k < ch.h.size(); ++k)
        mp += std::norm(ch.h[k]);
    if (mp == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ch.total_power() / mp);
}

SIChannel tune_rf_canceller(const SIChannel& ch, double target_reduction_db)
{
    if (!(target_reduction_db >= 0.0))
        throw ConfigurationError("RF cancellation target must be >= 0 dB");
    if (ch.h.empty() || std::norm(ch.h[0]) == 0.0)
        throw ConfigurationError("RF canceller needs a non-zero main tap");

    const double max_db = max_rf_reduction_db(ch);
    if (target_reduction_db >= max_db) {
        std::ostringstream os;
        os << "RF cancellation of " << target_reduction_db
           << " dB is out of reach of a main-tap canceller; the multipath floor allows at most "
           << max_db << " dB";
        throw ConfigurationError(os.str());
    }

    const double total = ch.total_power();
    const double main = std::norm(ch.h[0]);
    const double mp = total - main;
    const double want = total * std::pow(10.0, -target_reduction_db / 10.0);

    // residual(delta) = delta^2 |h0|^2 + multipath, increasing in delta on (0, 1].
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid * mid * main + mp < want)
            lo = mid;
        else
            hi = mid;
    }
    const double delta = 0.5 * (lo + hi);

    SIChannel out = ch;
    out.a.assign(ch.h.size(), cplx{});
    out.a[0] = (1.0 - delta) * ch.h[0];
    return out;
}

ComplexSignal si_path_apply(const SIChannel& ch, const ComplexSignal& x_pa)
{
    return dsp::fir_filter(x_pa, ch.effective());
}

} // namespace fdsic::si
