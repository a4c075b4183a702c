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

#include "fdsic/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "fdsic/error.hpp"

namespace fdsic::report {

namespace {

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

double to_real(const std::string& s, const std::string& context)
{
    const char* b = s.c_str();
    char* e = nullptr;
    const double v = std::strtod(b, &e);
    if (s.empty() || e != b + s.size() || !std::isfinite(v))
        throw ConfigurationError("bad number '" + s + "' in " + context);
    return v;
}

} // namespace

void write_run_csv(std::ostream& out, const sim::RunMetrics& m)
{
    out << "realization,sinr_db,digital_cancellation_db,residual_si_dbm,delay_samples\n";
    for (std::size_t i = 0; i < m.per_realization.size(); ++i) {
        const auto& r = m.per_realization[i];
        out << i << ',' << num(r.sinr_db) << ',' << num(r.digital_cancellation_db) << ','
            << num(r.residual_si_dbm) << ',' << r.delay << '\n';
    }
    out << "mean," << num(m.mean_sinr_db) << ',' << num(m.mean_digital_cancellation_db) << ','
        << num(m.mean_residual_si_dbm) << ",\n";
}

void write_sweep_csv(std::ostream& out, const std::vector<sim::SweepRow>& rows)
{
    out << "variable_value,mode,mean_sinr_db,mean_digital_cancellation_db,residual_si_dbm,n_realizations\n";
    for (const auto& r : rows)
        out << num(r.value) << ',' << r.mode << ',' << num(r.metrics.mean_sinr_db) << ','
            << num(r.metrics.mean_digital_cancellation_db) << ','
            << num(r.metrics.mean_residual_si_dbm) << ',' << r.metrics.per_realization.size()
            << '\n';
}

void write_budget_csv(std::ostream& out, const budget::BudgetParams& p, const std::vector<double>& tx_dbm)
{
    out << "tx_power_dbm,soi_dbm,linear_si_dbm,nonlinear_si_dbm,thermal_noise_dbm,quantization_noise_dbm\n";
    for (double tx : tx_dbm) {
        const auto lv = budget::compute_levels(tx, p);
        out << num(tx) << ',' << num(lv.soi_dbm) << ',' << num(lv.linear_si_dbm) << ','
            << num(lv.nonlinear_si_dbm) << ',' << num(lv.thermal_noise_dbm) << ','
            << num(lv.quantization_noise_dbm) << '\n';
    }
}

std::vector<double> parse_range(const std::string& spec)
{
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw ConfigurationError("range must look like lo:hi:step, got '" + spec + "'");
    const double lo = to_real(spec.substr(0, c1), "range");
    const double hi = to_real(spec.substr(c1 + 1, c2 - c1 - 1), "range");
    const double step = to_real(spec.substr(c2 + 1), "range");
    if (!(step > 0.0) || hi < lo)
        throw ConfigurationError("range needs step > 0 and hi >= lo, got '" + spec + "'");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + static_cast<double>(i) * step;
    return v;
}

std::vector<double> parse_list(const std::string& spec)
{
    std::vector<double> v;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        v.push_back(to_real(item, "value list"));
    if (v.empty())
        throw ConfigurationError("value list is empty");
    return v;
}

} // namespace fdsic::report
