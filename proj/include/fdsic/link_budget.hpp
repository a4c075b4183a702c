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

namespace fdsic::budget {

enum class DigitalLinearPolicy { TrackNoiseFloor };

struct BudgetParams {
    double bandwidth_hz = 12.5e6;
    double noise_figure_db = 4.1;
    double snr_requirement_db = 10.0;
    double received_signal_power_dbm = -83.9;
    double antenna_separation_db = 40.0;
    double rf_cancellation_db = 30.0;
    double pa_gain_db = 20.0;
    double pa_iip3_dbm = 15.0;
    unsigned adc_bits = 12;
    double papr_db = 10.0;
    DigitalLinearPolicy digital_linear_policy = DigitalLinearPolicy::TrackNoiseFloor;

    void validate() const;
};

/// Component powers at the detector input, in dBm.
struct PowerLevels {
    double soi_dbm;
    double linear_si_dbm;
    double nonlinear_si_dbm;
    double thermal_noise_dbm;
    double quantization_noise_dbm;

    double linear_si_pre_digital_dbm;
    double digital_linear_cancellation_db;
};

constexpr double kThermalDensityDbmHz = -174.0;

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db);

/// Thermal floor plus the SNR requirement.
double sensitivity_dbm(const BudgetParams& p);

/// Two-tone third-order IM level at the PA output, referred through the same
/// analog attenuation as the linear SI.
PowerLevels compute_levels(double p_tx_dbm, const BudgetParams& p);

} // namespace fdsic::budget
