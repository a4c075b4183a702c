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
#include <string>
#include <variant>
#include <vector>

#include "fdsic/dsp.hpp"
#include "fdsic/impairments.hpp"
#include "fdsic/ph_canceller.hpp"
#include "fdsic/scenario.hpp"

namespace fdsic::sim {

/// Transmit amplifier ground truth. The Wiener PA is the normal case; a PH
/// model with causal memory stands in when the canceller structure must
/// match the truth exactly.
using TxAmplifier = std::variant<impairments::WienerPA, ph::PHModel>;

ComplexSignal amplify(const TxAmplifier& amp, const ComplexSignal& x);

/// Output of the amplifier's first-order (small-signal) branch alone.
ComplexSignal small_signal_output(const TxAmplifier& amp, const ComplexSignal& x);

/// The scenario's fixed PA (same for every realization).
impairments::WienerPA build_pa(const Scenario& sc);

struct RealizationMetrics {
    double sinr_db = 0.0;                 // NaN when the SOI is disabled
    double digital_cancellation_db = 0.0; // 0 when there is no SI
    double residual_si_dbm = 0.0;         // referred to the ADC input, before the AGC
    long delay = 0;                       // selected bulk alignment
};

struct RunMetrics {
    std::vector<RealizationMetrics> per_realization;
    double mean_sinr_db = 0.0;
    double mean_digital_cancellation_db = 0.0;
    double mean_residual_si_dbm = 0.0;
};

/// Signals of one realization kept for inspection; all at the digital
/// (post-AGC) scale except `x`, which is the PA input.
struct RealizationTrace {
    ComplexSignal x;          // PA input reference
    ComplexSignal y;          // quantized receiver output
    ComplexSignal soi;        // AGC-scaled SOI component
    ComplexSignal si;         // AGC-scaled SI component
    ComplexSignal si_hat;     // canceller estimate
    double agc_gain;
    RealizationMetrics metrics;
};

RealizationTrace trace_realization(const Scenario& sc, std::size_t index, const TxAmplifier& amp);

RealizationMetrics run_realization(const Scenario& sc, std::size_t index);
RealizationMetrics run_realization(const Scenario& sc, std::size_t index, const TxAmplifier& amp);

/// Runs sc.n_realizations realizations. threads = 0 uses the hardware count;
/// results do not depend on the thread count.
RunMetrics run(const Scenario& sc, unsigned threads = 1);

/// SINR after least-squares projection of s_hat onto s_ref, capped at 60 dB.
double sinr_db(const ComplexSignal& s_hat, const ComplexSignal& s_ref);

/// 10 log10(P_before / P_after), capped at 100 dB; 0 when both are silent.
double digital_cancellation_db(const ComplexSignal& si_before, const ComplexSignal& si_after);

constexpr double kSinrCapDb = 60.0;
constexpr double kCancellationCapDb = 100.0;

enum class SweepVariable { TxPower, Iip3, AntennaSeparation };

const char* to_string(SweepVariable v);
SweepVariable parse_sweep_variable(const std::string& s);

/// Applies one sweep value. Setting IIP3 also sets P1dB = IIP3 + 9.5 dB.
void apply_sweep_value(Scenario& sc, SweepVariable var, double value);

struct SweepRow {
    double value;
    std::string mode; // "linear", "nonlinear" or "reference"
    RunMetrics metrics;
};

/// For every value: linear and nonlinear canceller runs plus the no-SI,
/// no-canceller reference, all on the same realization seeds.
std::vector<SweepRow> run_sweep(const Scenario& sc, SweepVariable var, const std::vector<double>& values,
                                unsigned threads = 1);

} // namespace fdsic::sim
