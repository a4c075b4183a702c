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

#include "fdsic/link_budget.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdsic/dsp.hpp"
#include "fdsic/error.hpp"

namespace fdsic::budget {

void BudgetParams::validate() const
{
    const double fields[] = {noise_figure_db,   snr_requirement_db, received_signal_power_dbm,
                             antenna_separation_db, rf_cancellation_db, pa_gain_db,
                             pa_iip3_dbm,       papr_db};
    for (double v : fields)
        if (!std::isfinite(v))
            throw ConfigurationError("link budget parameters must be finite");
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw ConfigurationError("bandwidth must be positive, got " + std::to_string(bandwidth_hz));
    if (adc_bits == 0)
        throw ConfigurationError("ADC needs at least one bit");
}

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0))
        throw InvalidInput("bandwidth must be positive");
    return kThermalDensityDbmHz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double sensitivity_dbm(const BudgetParams& p)
{
    return noise_floor_dbm(p.bandwidth_hz, p.noise_figure_db) + p.snr_requirement_db;
}

PowerLevels compute_levels(double p_tx_dbm, const BudgetParams& p)
{
    p.validate();
    using dsp::dbm_to_watts;
    using dsp::watts_to_dbm;

    const double analog = p.antenna_separation_db + p.rf_cancellation_db;
    const double p_in = p_tx_dbm - p.pa_gain_db;

    PowerLevels lv{};
    lv.soi_dbm = p.received_signal_power_dbm;
    lv.thermal_noise_dbm = noise_floor_dbm(p.bandwidth_hz, p.noise_figure_db);
    lv.linear_si_pre_digital_dbm = p_tx_dbm - analog;
    lv.nonlinear_si_dbm = 3.0 * p_in - 2.0 * p.pa_iip3_dbm + p.pa_gain_db - analog;

    // The ADC sees everything before digital cancellation.
    const double total_w = dbm_to_watts(lv.soi_dbm) + dbm_to_watts(lv.thermal_noise_dbm) +
                           dbm_to_watts(lv.linear_si_pre_digital_dbm) +
                           dbm_to_watts(lv.nonlinear_si_dbm);
    const double sqnr_db = 6.02 * p.adc_bits + 1.76 - p.papr_db;
    lv.quantization_noise_dbm = watts_to_dbm(total_w) - sqnr_db;

    lv.digital_linear_cancellation_db =
        std::max(0.0, lv.linear_si_pre_digital_dbm - lv.thermal_noise_dbm);
    lv.linear_si_dbm = lv.linear_si_pre_digital_dbm - lv.digital_linear_cancellation_db;
    return lv;
}

} // namespace fdsic::budget
