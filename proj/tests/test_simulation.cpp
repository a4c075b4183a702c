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
#include "fdsic/link_budget.hpp"
#include "fdsic/ph_canceller.hpp"
#include "fdsic/si_chain.hpp"
#include "fdsic/simulation.hpp"
#include "oracles.hpp"

using namespace fdsic;
using namespace fdsic::sim;
using Catch::Approx;

namespace {

ComplexSignal noise(std::size_t n, double sigma, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, sigma / std::sqrt(2.0));
    std::vector<cplx> v(n);
    for (auto& e : v)
        e = {g(rng), g(rng)};
    return ComplexSignal(v, 1.0);
}

double mean_of(const Scenario& sc, std::size_t n, double RealizationMetrics::*field)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += run_realization(sc, i).*field;
    return acc / static_cast<double>(n);
}

} // namespace

TEST_CASE("SINR examples", "[sim]")
{
    const auto s = noise(1000, 1.0, 1);
    CHECK(sinr_db(s, s) == kSinrCapDb);
    CHECK(sinr_db(s.scaled(2.0), s) == kSinrCapDb);

    // orthogonal error of equal energy: alternate-sign copy on a +-1 reference
    std::vector<cplx> ref(1000), err(1000);
    for (std::size_t i = 0; i < ref.size(); ++i) {
        ref[i] = 1.0;
        err[i] = (i % 2 == 0) ? 1.0 : -1.0;
    }
    const ComplexSignal r(ref, 1.0), e(err, 1.0);
    CHECK(sinr_db(r + e, r) == Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(sinr_db(s, ComplexSignal::zeros(1000, 1.0)), InvalidInput);
    CHECK_THROWS_AS(sinr_db(s, noise(999, 1.0, 2)), InvalidInput);
}

TEST_CASE("digital cancellation examples", "[sim]")
{
    const auto s = noise(1000, 1.0, 3);
    CHECK(digital_cancellation_db(s, s) == Approx(0.0).margin(1e-12));
    CHECK(digital_cancellation_db(s, s.scaled(0.5)) == Approx(6.0206).margin(1e-4));
    CHECK(digital_cancellation_db(s, ComplexSignal::zeros(1000, 1.0)) == kCancellationCapDb);
    const auto z = ComplexSignal::zeros(1000, 1.0);
    CHECK(digital_cancellation_db(z, z) == 0.0);
}

TEST_CASE("no-SI reference reaches the ideal SINR", "[sim]")
{
    Scenario sc;
    sc.si_enabled = false;
    sc.canceller_mode = CancellerMode::None;
    const double sinr = mean_of(sc, 5, &RealizationMetrics::sinr_db);
    CHECK(sinr == Approx(15.0).margin(0.5));
    CHECK(run_realization(sc, 0).digital_cancellation_db == 0.0);
}

TEST_CASE("model-matched PH transmitter is cancelled below -80 dB", "[sim][property]")
{
    Scenario sc;
    sc.noise_enabled = false;
    sc.soi_enabled = false;
    sc.quantization_enabled = false;
    sc.canceller = {5, 2, 6};
    ph::PHModel pa = ph::PHModel::zeros({5, 0, 2});
    const double p3 = 1e-3 * std::pow(10.0, 15.0 / 10.0);
    pa.at(1, 0) = 10.0;
    pa.at(1, 1) = cplx{0.8, 0.3};
    pa.at(1, 2) = cplx{-0.2, 0.1};
    pa.at(3, 0) = -10.0 / p3;
    pa.at(3, 1) = cplx{0.4, -0.3} / p3;
    pa.at(5, 0) = cplx{-300.0, 40.0};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto m = run_realization(sc, i, pa);
        CHECK(m.digital_cancellation_db >= 80.0);
        CHECK(std::isnan(m.sinr_db));
    }
}

TEST_CASE("realizations are deterministic", "[sim][property]")
{
    Scenario sc;
    sc.n_realizations = 6;
    const auto a = run_realization(sc, 3);
    const auto b = run_realization(sc, 3);
    CHECK(a.sinr_db == b.sinr_db);
    CHECK(a.digital_cancellation_db == b.digital_cancellation_db);
    CHECK(a.residual_si_dbm == b.residual_si_dbm);

    const auto serial = run(sc, 1);
    const auto parallel = run(sc, 3);
    for (std::size_t i = 0; i < sc.n_realizations; ++i) {
        CHECK(serial.per_realization[i].sinr_db == parallel.per_realization[i].sinr_db);
        CHECK(serial.per_realization[i].digital_cancellation_db ==
              parallel.per_realization[i].digital_cancellation_db);
    }
    CHECK(serial.mean_sinr_db == parallel.mean_sinr_db);
}

TEST_CASE("transmit power is referenced to the PA output", "[sim]")
{
    Scenario sc;
    sc.tx_power_dbm = 5.0;
    const auto pa = build_pa(sc);
    const auto t = trace_realization(sc, 0, pa);
    const double lin = dsp::measure_power_dbm(small_signal_output(pa, t.x));
    CHECK(lin == Approx(5.0).margin(1e-9));
    // at moderate drive the compressed output sits within a few tenths of a dB
    CHECK(dsp::measure_power_dbm(amplify(pa, t.x)) == Approx(5.0).margin(0.3));
}

TEST_CASE("bookkeeping splits the received signal into its parts", "[sim]")
{
    Scenario sc;
    sc.quantization_enabled = false;
    sc.noise_enabled = false;
    sc.canceller_mode = CancellerMode::None;
    const auto t = trace_realization(sc, 1, build_pa(sc));
    const auto rest = t.y - t.soi - t.si;
    CHECK(oracle::power_w(rest) < 1e-24 * oracle::power_w(t.y));
    CHECK(dsp::measure_power_dbm(t.soi) - 20 * std::log10(t.agc_gain) == Approx(-83.9).margin(1e-6));
}

TEST_CASE("low-power regime favours the linear canceller", "[sim][property]")
{
    Scenario sc;
    sc.tx_power_dbm = 0.0;
    sc.canceller_mode = CancellerMode::Linear;
    const double lin = mean_of(sc, 8, &RealizationMetrics::digital_cancellation_db);
    sc.canceller_mode = CancellerMode::Nonlinear;
    const double nl = mean_of(sc, 8, &RealizationMetrics::digital_cancellation_db);
    CHECK(lin >= nl);
}

TEST_CASE("high-power regime favours the nonlinear canceller", "[sim][property]")
{
    Scenario sc;
    sc.tx_power_dbm = 20.0;
    sc.canceller_mode = CancellerMode::Linear;
    const double lin = mean_of(sc, 8, &RealizationMetrics::sinr_db);
    sc.canceller_mode = CancellerMode::Nonlinear;
    const double nl = mean_of(sc, 8, &RealizationMetrics::sinr_db);
    CHECK(nl - lin >= 5.0);
}

TEST_CASE("no-SI reference SINR does not depend on the canceller mode", "[sim][property][limits]")
{
    Scenario sc;
    sc.si_enabled = false;
    double sinr[3];
    int i = 0;
    for (auto mode : {CancellerMode::None, CancellerMode::Linear, CancellerMode::Nonlinear}) {
        sc.canceller_mode = mode;
        sinr[i++] = mean_of(sc, 10, &RealizationMetrics::sinr_db);
    }
    INFO("none " << sinr[0] << " dB, linear " << sinr[1] << " dB, nonlinear " << sinr[2] << " dB");
    CHECK(std::abs(sinr[1] - sinr[0]) <= 0.1);
    CHECK(std::abs(sinr[2] - sinr[0]) <= 0.1);
}

TEST_CASE("simulated nonlinear SI agrees with the link budget", "[sim][property][limits]")
{
    // Nonlinear SI at the receiver input: the part of the SI that no linear
    // filter of the PA input can reproduce, found by a long linear LS fit.
    Scenario sc;
    const auto pa = build_pa(sc);
    for (double tx = 5.0; tx <= 20.0; tx += 2.5) {
        sc.tx_power_dbm = tx;
        double acc_w = 0.0;
        const std::size_t n_real = 4;
        for (std::size_t i = 0; i < n_real; ++i) {
            sc.master_seed = 100 + i;
            const auto t = trace_realization(sc, i, pa);
            const auto si_rx = t.si.scaled(1.0 / t.agc_gain);
            const auto ref = ph::PaddedReference::make(t.x, 24);
            const auto lin = ph::estimate_aligned(ref, si_rx, {1, 8, 8}, si_rx.size() - 16, 0);
            acc_w += oracle::power_w(si_rx - ph::regenerate_full(ref, lin));
        }
        const double measured = dsp::watts_to_dbm(acc_w / static_cast<double>(n_real));
        const double predicted = budget::compute_levels(tx, sc.budget_params()).nonlinear_si_dbm;
        INFO("tx " << tx << " dBm: measured " << measured << " dBm, budget " << predicted << " dBm");
        CHECK(measured == Approx(predicted).margin(3.0));
    }
}
