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

#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "fdsic/dsp.hpp"
#include "fdsic/error.hpp"
#include "fdsic/impairments.hpp"
#include "fdsic/ph_canceller.hpp"
#include "fdsic/si_chain.hpp"
#include "oracles.hpp"

using namespace fdsic;
using namespace fdsic::si;
using Catch::Approx;

namespace {

double k_factor_db(const SIChannel& ch)
{
    double mp = 0.0;
    for (std::size_t k = 1; k < ch.h.size(); ++k)
        mp += std::norm(ch.h[k]);
    return 10.0 * std::log10(std::norm(ch.h[0]) / mp);
}

ComplexSignal ofdm_block(std::size_t n_symbols, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bits(4 * 48 * n_symbols);
    for (auto& b : bits)
        b = static_cast<std::uint8_t>(rng() & 1U);
    return dsp::ofdm_modulate(dsp::qam16_map(bits), OfdmConfig{});
}

} // namespace

TEST_CASE("channel meets K-factor and separation exactly", "[si]")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (double sep : {30.0, 40.0, 50.0}) {
            const auto ch = gen_si_channel({5, 35.8, sep, seed});
            CHECK(10.0 * std::log10(ch.total_power()) == Approx(-sep).margin(0.01));
            CHECK(k_factor_db(ch) == Approx(35.8).margin(0.01));
            CHECK(ch.h[0].imag() == 0.0);
            CHECK(ch.h[0].real() > 0.0);
            for (const auto& a : ch.a)
                CHECK(a == cplx{});
        }
    }
    const auto ch = gen_si_channel({5, 35.8, 40.0, 3});
    CHECK(ch.total_power() == Approx(1e-4).margin(1e-6));
}

TEST_CASE("channel is deterministic per seed", "[si]")
{
    CHECK(gen_si_channel({5, 35.8, 40.0, 9}).h == gen_si_channel({5, 35.8, 40.0, 9}).h);
    CHECK(gen_si_channel({5, 35.8, 40.0, 9}).h != gen_si_channel({5, 35.8, 40.0, 10}).h);
}

TEST_CASE("single-path channel", "[si]")
{
    const double inf = std::numeric_limits<double>::infinity();
    const auto one = gen_si_channel({1, inf, 40.0, 1});
    REQUIRE(one.h.size() == 1);
    CHECK(one.h[0].real() == Approx(1e-2));
    const auto flat = gen_si_channel({5, inf, 40.0, 1});
    for (std::size_t k = 1; k < flat.h.size(); ++k)
        CHECK(flat.h[k] == cplx{});
    CHECK(std::isinf(max_rf_reduction_db(flat)));
    CHECK_THROWS_AS(gen_si_channel({1, 35.8, 40.0, 1}), ConfigurationError);
    CHECK_THROWS_AS(gen_si_channel({5, std::nan(""), 40.0, 1}), ConfigurationError);
    CHECK_THROWS_AS(gen_si_channel({5, 35.8, 0.0, 1}), ConfigurationError);
}

TEST_CASE("RF canceller hits its target", "[si]")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto ch = gen_si_channel({5, 35.8, 40.0, seed});
        for (double target : {0.0, 10.0, 20.0, 30.0, 35.0}) {
            const auto tuned = tune_rf_canceller(ch, target);
            const double got = 10.0 * std::log10(tuned.total_power() / tuned.residual_power());
            CHECK(got == Approx(target).margin(0.01));
            CHECK(tuned.residual_power() <= tuned.total_power() * (1 + 1e-12));
            for (std::size_t k = 1; k < tuned.a.size(); ++k)
                CHECK(tuned.a[k] == cplx{});
            const double ratio = (tuned.a[0] / tuned.h[0]).real();
            CHECK(ratio >= 0.0);
            CHECK(ratio < 1.0 + 1e-12);
            CHECK((tuned.a[0] / tuned.h[0]).imag() == Approx(0.0).margin(1e-15));
        }
    }
}

TEST_CASE("RF canceller refuses targets past the multipath floor", "[si][oracle]")
{
    const auto ch = gen_si_channel({5, 35.8, 40.0, 4});
    // residual at delta = 1 is exactly the multipath power
    double mp = 0.0;
    for (std::size_t k = 1; k < ch.h.size(); ++k)
        mp += std::norm(ch.h[k]);
    const double ceiling = 10.0 * std::log10(ch.total_power() / mp);
    CHECK(max_rf_reduction_db(ch) == Approx(ceiling).epsilon(1e-12));
    CHECK(ceiling == Approx(35.8).margin(0.01));
    CHECK_THROWS_AS(tune_rf_canceller(ch, 40.0), ConfigurationError);
    CHECK_THROWS_AS(tune_rf_canceller(ch, -1.0), ConfigurationError);
}

TEST_CASE("SI path examples", "[si]")
{
    const auto x = ofdm_block(2, 1);
    auto ch = gen_si_channel({5, 35.8, 40.0, 2});

    // a == 0 is plain channel filtering
    const auto plain = si_path_apply(ch, x);
    const auto ref = dsp::fir_filter(x, ch.h);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(plain[i] == ref[i]);

    // a == h cancels everything
    ch.a = ch.h;
    const auto silent = si_path_apply(ch, x);
    for (const auto& v : silent.samples())
        CHECK(v == cplx{});

    // linear in the input
    const auto tuned = tune_rf_canceller(gen_si_channel({5, 35.8, 40.0, 2}), 30.0);
    const cplx alpha{0.3, -1.2};
    const auto a = si_path_apply(tuned, x.scaled(alpha));
    const auto b = si_path_apply(tuned, x).scaled(alpha);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) < 1e-15);
}

TEST_CASE("RF cancellation attenuates linear and nonlinear SI equally", "[si][property]")
{
    // Tuning is defined on tap energy, so the check uses a spectrally flat
    // drive: i.i.d. Gaussian samples through the memoryless PA stay white.
    const auto pa = impairments::design_pa(impairments::PAParams{}, 5).memoryless();
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5e-3)); // 0 dBm total
    std::vector<cplx> xs(400000);
    for (auto& v : xs)
        v = {g(rng), g(rng)};
    const ComplexSignal x(xs, 80e6);
    const auto y = impairments::pa_apply(pa, x);
    const auto y_lin = x.scaled(pa.a1);
    const auto y_nl = y - y_lin;

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto raw = gen_si_channel({5, 35.8, 40.0, seed});
        const auto tuned = tune_rf_canceller(raw, 30.0);
        auto reduction = [&](const ComplexSignal& s) {
            return 10.0 * std::log10(oracle::power_w(si_path_apply(raw, s)) /
                                     oracle::power_w(si_path_apply(tuned, s)));
        };
        CHECK(reduction(y) == Approx(30.0).margin(0.2));
        CHECK(reduction(y_lin) == Approx(30.0).margin(0.2));
        CHECK(reduction(y_nl) == Approx(30.0).margin(0.2));
    }
}

TEST_CASE("PH transmitter through the SI path is again a PH model", "[si][property]")
{
    // PA side: order 5, causal memory of three taps
    ph::PHModel pa = ph::PHModel::zeros({5, 0, 2});
    std::mt19937_64 rng(21);
    std::normal_distribution<double> n;
    for (int p : {1, 3, 5})
        for (long k = 0; k <= 2; ++k)
            pa.at(p, k) = cplx{n(rng), n(rng)} * std::pow(0.2, (p - 1) / 2) * (k == 0 ? 1.0 : 0.1);

    const auto ch = tune_rf_canceller(gen_si_channel({5, 35.8, 40.0, 8}), 30.0);
    const auto d = ch.effective();

    // effective branch filters (h - a) * f_p
    ph::PHModel eff = ph::PHModel::zeros({5, 0, 2 + d.size() - 1});
    for (int p : {1, 3, 5})
        for (long k = 0; k <= 2; ++k)
            for (std::size_t j = 0; j < d.size(); ++j)
                eff.at(p, k + static_cast<long>(j)) += d[j] * pa.at(p, k);

    std::vector<cplx> xs(500);
    for (auto& v : xs)
        v = cplx{n(rng), n(rng)} * 0.5;
    const ComplexSignal x(xs, 1.0);

    const auto pad_pa = ph::PaddedReference::make(x, 2);
    const auto x_pa = ph::regenerate_full(pad_pa, pa);
    const auto via_path = si_path_apply(ch, x_pa);

    const auto pad_eff = ph::PaddedReference::make(x, 2 + d.size());
    const auto via_model = ph::regenerate_full(pad_eff, eff);

    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        err += std::norm(via_path[i] - via_model[i]);
        ref += std::norm(via_path[i]);
    }
    CHECK(std::sqrt(err / ref) < 1e-12);
}
