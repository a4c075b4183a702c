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
#include <filesystem>
#include <iosfwd>
#include <string>

#include "fdsic/dsp.hpp"
#include "fdsic/impairments.hpp"
#include "fdsic/link_budget.hpp"
#include "fdsic/ph_canceller.hpp"
#include "fdsic/si_chain.hpp"

namespace fdsic {

enum class CancellerMode { None, Linear, Nonlinear };

const char* to_string(CancellerMode m);

/// A complete experiment. Defaults reproduce the reference transceiver.
struct Scenario {
    // receiver and analog front end
    double bandwidth_hz = 12.5e6;
    double noise_figure_db = 4.1;
    double snr_requirement_db = 10.0;
    double soi_power_dbm = -83.9;
    double rf_cancellation_db = 30.0;
    double papr_db = 10.0;

    impairments::PAParams pa;
    impairments::AdcParams adc;
    OfdmConfig ofdm;
    si::SIChannelSpec channel; // seed is ignored, drawn per realization
    ph::PHConfig canceller;
    long align_search_samples = 4;

    // run control
    double tx_power_dbm = 10.0;
    std::size_t n_symbols_per_realization = 20;
    std::size_t n_estimation_samples = 3200;
    std::size_t n_realizations = 50;
    std::uint64_t master_seed = 1;
    CancellerMode canceller_mode = CancellerMode::Nonlinear;
    bool si_enabled = true;
    bool soi_enabled = true;
    bool noise_enabled = true;
    bool quantization_enabled = true;

    std::size_t samples_per_realization() const noexcept
    {
        return n_symbols_per_realization * ofdm.symbol_len();
    }

    double thermal_floor_dbm() const;
    budget::BudgetParams budget_params() const;

    /// Throws ConfigurationError describing the first violated constraint.
    void validate() const;
};

/// Parses `key = value` lines. `#` starts a comment; blank lines are ignored.
/// Unknown or repeated keys and malformed values raise ConfigurationError
/// with the offending line number. Unset keys keep their defaults.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical text form; parse_scenario(format_scenario(s)) reproduces s.
std::string format_scenario(const Scenario& s);

} // namespace fdsic
