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

#include "fdsic/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "fdsic/error.hpp"
#include "fdsic/seed.hpp"
#include "fdsic/si_chain.hpp"

namespace fdsic::sim {

namespace {

enum Stream : std::uint64_t { kTxData = 1, kSoiData = 2, kNoise = 3, kChannel = 4, kPa = 5 };

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t ph_pad(const ph::PHModel& m)
{
    return std::max(m.cfg.pre_taps, m.cfg.post_taps) + static_cast<std::size_t>(std::abs(m.delay));
}

ComplexSignal random_ofdm(const OfdmConfig& cfg, std::size_t n_symbols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bits(4 * cfg.n_data_subcarriers * n_symbols);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i % 64 == 0)
            word = rng();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
    }
    const auto symbols = dsp::qam16_map(bits);
    return dsp::ofdm_modulate(symbols, cfg);
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
// thrown by any task is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn)
{
    if (threads == 0)
        threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; !stop && (i = next.fetch_add(1)) < n;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                stop = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

RunMetrics summarize(std::vector<RealizationMetrics> per)
{
    RunMetrics m;
    const double n = static_cast<double>(per.size());
    for (const auto& r : per) {
        m.mean_sinr_db += r.sinr_db / n;
        m.mean_digital_cancellation_db += r.digital_cancellation_db / n;
        m.mean_residual_si_dbm += r.residual_si_dbm / n;
    }
    m.per_realization = std::move(per);
    return m;
}

} // namespace

ComplexSignal amplify(const TxAmplifier& amp, const ComplexSignal& x)
{
    if (const auto* pa = std::get_if<impairments::WienerPA>(&amp))
        return impairments::pa_apply(*pa, x);
    const auto& model = std::get<ph::PHModel>(amp);
    return ph::regenerate_full(ph::PaddedReference::make(x, ph_pad(model)), model);
}

ComplexSignal small_signal_output(const TxAmplifier& amp, const ComplexSignal& x)
{
    if (const auto* pa = std::get_if<impairments::WienerPA>(&amp))
        return dsp::fir_filter(x, pa->memory_fir).scaled(pa->a1);
    auto linear = std::get<ph::PHModel>(amp);
    for (std::size_t i = linear.cfg.taps(); i < linear.coeffs.size(); ++i)
        linear.coeffs[i] = cplx{};
    return ph::regenerate_full(ph::PaddedReference::make(x, ph_pad(linear)), linear);
}

impairments::WienerPA build_pa(const Scenario& sc)
{
    return impairments::design_pa(sc.pa, derive_seed(sc.master_seed, 0, kPa));
}

double sinr_db(const ComplexSignal& s_hat, const ComplexSignal& s_ref)
{
    if (s_hat.size() != s_ref.size())
        throw InvalidInput("SINR needs equal-length signals");
    double ref_energy = 0.0;
    cplx inner{};
    for (std::size_t i = 0; i < s_ref.size(); ++i) {
        ref_energy += std::norm(s_ref[i]);
        inner += std::conj(s_ref[i]) * s_hat[i];
    }
    if (ref_energy == 0.0)
        throw InvalidInput("SINR reference signal has zero power");
    const cplx alpha = inner / ref_energy;
    double err = 0.0;
    for (std::size_t i = 0; i < s_ref.size(); ++i)
        err += std::norm(s_hat[i] - alpha * s_ref[i]);
    const double sig = std::norm(alpha) * ref_energy;
    if (err == 0.0)
        return kSinrCapDb;
    return std::min(kSinrCapDb, dsp::lin_to_db(sig / err));
}

double digital_cancellation_db(const ComplexSignal& si_before, const ComplexSignal& si_after)
{
    if (si_before.size() != si_after.size())
        throw InvalidInput("cancellation needs equal-length signals");
    const double before = dsp::mean_power_w(si_before);
    const double after = dsp::mean_power_w(si_after);
    if (before == 0.0 && after == 0.0)
        return 0.0;
    if (after == 0.0)
        return kCancellationCapDb;
    if (before == 0.0)
        return -kCancellationCapDb;
    return std::clamp(dsp::lin_to_db(before / after), -kCancellationCapDb, kCancellationCapDb);
}

RealizationTrace trace_realization(const Scenario& sc, std::size_t index, const TxAmplifier& amp)
{
    sc.validate();
    const std::size_t n = sc.samples_per_realization();
    const double rate = sc.ofdm.sample_rate_hz();
    const std::uint64_t idx = index;

    // Transmit chain, referenced so the small-signal PA output sits at tx_power.
    const ComplexSignal x0 = random_ofdm(sc.ofdm, sc.n_symbols_per_realization,
                                         derive_seed(sc.master_seed, idx, kTxData));
    const double lin_w = dsp::mean_power_w(small_signal_output(amp, x0));
    if (!(lin_w > 0.0))
        throw ConfigurationError("transmit amplifier has no linear gain");
    const ComplexSignal x = x0.scaled(std::sqrt(dsp::dbm_to_watts(sc.tx_power_dbm) / lin_w));

    ComplexSignal si_rx = ComplexSignal::zeros(n, rate);
    if (sc.si_enabled && std::isfinite(sc.channel.antenna_separation_db)) {
        si::SIChannelSpec spec = sc.channel;
        spec.seed = derive_seed(sc.master_seed, idx, kChannel);
        const auto ch = si::tune_rf_canceller(si::gen_si_channel(spec), sc.rf_cancellation_db);
        si_rx = si::si_path_apply(ch, amplify(amp, x));
    }

    ComplexSignal soi_rx = ComplexSignal::zeros(n, rate);
    if (sc.soi_enabled) {
        const ComplexSignal s = random_ofdm(sc.ofdm, sc.n_symbols_per_realization,
                                            derive_seed(sc.master_seed, idx, kSoiData));
        soi_rx = dsp::set_power_dbm(s, sc.soi_power_dbm);
    }

    ComplexSignal noise = ComplexSignal::zeros(n, rate);
    if (sc.noise_enabled)
        noise = impairments::gaussian_noise(n, rate, sc.thermal_floor_dbm(),
                                            derive_seed(sc.master_seed, idx, kNoise));

    const ComplexSignal r = si_rx + soi_rx + noise;
    const double g = impairments::agc_gain(r, sc.adc, sc.papr_db);
    ComplexSignal y = r.scaled(g);
    if (sc.quantization_enabled)
        y = impairments::adc_quantize(y, sc.adc);

    RealizationTrace t{x,
                       y,
                       soi_rx.scaled(g),
                       si_rx.scaled(g),
                       ComplexSignal::zeros(n, rate),
                       g,
                       {}};

    if (sc.canceller_mode != CancellerMode::None) {
        ph::PHConfig cfg = sc.canceller;
        if (sc.canceller_mode == CancellerMode::Linear)
            cfg.order = 1;
        const std::size_t pad = static_cast<std::size_t>(sc.align_search_samples) +
                                std::max(cfg.pre_taps, cfg.post_taps) + 1;
        const auto ref = ph::PaddedReference::make(x, pad);
        const auto model = ph::estimate_aligned(ref, y, cfg, sc.n_estimation_samples,
                                                sc.align_search_samples);
        t.si_hat = ph::regenerate_full(ref, model);
        t.metrics.delay = model.delay;
    }

    const ComplexSignal s_hat = ph::cancel(y, t.si_hat);
    const ComplexSignal si_after = t.si - t.si_hat;
    t.metrics.sinr_db = sc.soi_enabled ? sinr_db(s_hat, t.soi) : kNaN;
    t.metrics.digital_cancellation_db =
        sc.si_enabled ? digital_cancellation_db(t.si, si_after) : 0.0;
    t.metrics.residual_si_dbm = dsp::measure_power_dbm(si_after) - dsp::lin_to_db(g * g);
    return t;
}

RealizationMetrics run_realization(const Scenario& sc, std::size_t index, const TxAmplifier& amp)
{
    return trace_realization(sc, index, amp).metrics;
}

RealizationMetrics run_realization(const Scenario& sc, std::size_t index)
{
    return run_realization(sc, index, build_pa(sc));
}

RunMetrics run(const Scenario& sc, unsigned threads)
{
    sc.validate();
    const TxAmplifier amp = build_pa(sc);
    std::vector<RealizationMetrics> per(sc.n_realizations);
    parallel_for(per.size(), threads, [&](std::size_t i) { per[i] = run_realization(sc, i, amp); });
    return summarize(std::move(per));
}

const char* to_string(SweepVariable v)
{
    switch (v) {
    case SweepVariable::TxPower: return "tx_power";
    case SweepVariable::Iip3: return "iip3";
    case SweepVariable::AntennaSeparation: return "antenna_separation";
    }
    return "?";
}

SweepVariable parse_sweep_variable(const std::string& s)
{
    for (auto v : {SweepVariable::TxPower, SweepVariable::Iip3, SweepVariable::AntennaSeparation})
        if (s == to_string(v))
            return v;
    throw ConfigurationError("sweep variable must be tx_power, iip3 or antenna_separation, got '" + s + "'");
}

void apply_sweep_value(Scenario& sc, SweepVariable var, double value)
{
    switch (var) {
    case SweepVariable::TxPower: sc.tx_power_dbm = value; break;
    case SweepVariable::Iip3:
        sc.pa.iip3_dbm = value;
        sc.pa.p1db_dbm = value + 9.5;
        break;
    case SweepVariable::AntennaSeparation: sc.channel.antenna_separation_db = value; break;
    }
}

std::vector<SweepRow> run_sweep(const Scenario& base, SweepVariable var, const std::vector<double>& values,
                                unsigned threads)
{
    if (values.empty())
        throw InvalidInput("sweep needs at least one value");

    struct Job {
        Scenario sc;
        TxAmplifier amp;
        std::string mode;
    };
    std::vector<Job> jobs;
    for (double v : values) {
        Scenario sc = base;
        apply_sweep_value(sc, var, v);
        sc.validate();
        const TxAmplifier amp = build_pa(sc);

        Scenario lin = sc;
        lin.canceller_mode = CancellerMode::Linear;
        lin.validate();
        Scenario nl = sc;
        nl.canceller_mode = CancellerMode::Nonlinear;
        nl.validate();
        Scenario ref = sc;
        ref.canceller_mode = CancellerMode::None;
        ref.si_enabled = false;
        jobs.push_back({lin, amp, "linear"});
        jobs.push_back({nl, amp, "nonlinear"});
        jobs.push_back({ref, amp, "reference"});
    }

    const std::size_t r = base.n_realizations;
    std::vector<RealizationMetrics> flat(jobs.size() * r);
    parallel_for(flat.size(), threads, [&](std::size_t i) {
        const Job& j = jobs[i / r];
        flat[i] = run_realization(j.sc, i % r, j.amp);
    });

    std::vector<SweepRow> rows;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        std::vector<RealizationMetrics> per(flat.begin() + static_cast<std::ptrdiff_t>(j * r),
                                            flat.begin() + static_cast<std::ptrdiff_t>((j + 1) * r));
        rows.push_back({values[j / 3], jobs[j].mode, summarize(std::move(per))});
    }
    return rows;
}

} // namespace fdsic::sim
