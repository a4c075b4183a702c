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

#include "fdsic/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "fdsic/error.hpp"

namespace fdsic {

const char* to_string(CancellerMode m)
{
    switch (m) {
    case CancellerMode::None: return "none";
    case CancellerMode::Linear: return "linear";
    case CancellerMode::Nonlinear: return "nonlinear";
    }
    return "?";
}

double Scenario::thermal_floor_dbm() const
{
    return budget::noise_floor_dbm(bandwidth_hz, noise_figure_db);
}

budget::BudgetParams Scenario::budget_params() const
{
    budget::BudgetParams b;
    b.bandwidth_hz = bandwidth_hz;
    b.noise_figure_db = noise_figure_db;
    b.snr_requirement_db = snr_requirement_db;
    b.received_signal_power_dbm = soi_power_dbm;
    b.antenna_separation_db = channel.antenna_separation_db;
    b.rf_cancellation_db = rf_cancellation_db;
    b.pa_gain_db = pa.gain_db;
    b.pa_iip3_dbm = pa.iip3_dbm;
    b.adc_bits = adc.bits;
    b.papr_db = papr_db;
    return b;
}

void Scenario::validate() const
{
    auto fail = [](const std::string& m) { throw ConfigurationError(m); };
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        fail("bandwidth_hz must be positive");
    for (double v : {noise_figure_db, snr_requirement_db, soi_power_dbm, rf_cancellation_db, papr_db,
                     tx_power_dbm})
        if (!std::isfinite(v))
            fail("power and gain figures must be finite");
    if (rf_cancellation_db < 0.0)
        fail("rf_cancellation_db must be non-negative");
    pa.validate();
    adc.validate();
    try {
        ofdm.validate();
        canceller.validate();
    } catch (const InvalidInput& e) {
        fail(e.what());
    }
    if (channel.n_taps < 1)
        fail("si_channel_taps must be >= 1");
    if (std::isnan(channel.k_factor_db) || channel.k_factor_db == -INFINITY)
        fail("si_k_factor_db must be a number or inf");
    if (!(channel.antenna_separation_db > 0.0))
        fail("antenna_separation_db must be positive");
    if (align_search_samples < 0)
        fail("align_search_samples must be non-negative");
    if (n_symbols_per_realization < 1)
        fail("n_symbols_per_realization must be >= 1");
    if (n_realizations < 1)
        fail("n_realizations must be >= 1");
    if (n_estimation_samples > samples_per_realization())
        fail("n_estimation_samples (" + std::to_string(n_estimation_samples) +
             ") exceeds the samples per realization (" +
             std::to_string(samples_per_realization()) + ")");
    if (canceller_mode != CancellerMode::None) {
        const std::size_t need = canceller_mode == CancellerMode::Linear
                                     ? canceller.taps()
                                     : canceller.coeff_count();
        if (n_estimation_samples < need)
            fail("n_estimation_samples is smaller than the canceller coefficient count");
    }
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& v)
{
    if (v == "inf" || v == "+inf")
        return INFINITY;
    if (v == "-inf")
        return -INFINITY;
    const char* begin = v.c_str();
    char* end = nullptr;
    const double d = std::strtod(begin, &end);
    if (v.empty() || end != begin + v.size() || !std::isfinite(d))
        throw ConfigurationError("expected a real number, got '" + v + "'");
    return d;
}

template <typename T>
T parse_uint(const std::string& v)
{
    T out{};
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || r.ec != std::errc{} || r.ptr != v.data() + v.size())
        throw ConfigurationError("expected a non-negative integer, got '" + v + "'");
    return out;
}

long parse_long(const std::string& v)
{
    long out{};
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || r.ec != std::errc{} || r.ptr != v.data() + v.size())
        throw ConfigurationError("expected an integer, got '" + v + "'");
    return out;
}

bool parse_bool(const std::string& v)
{
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    throw ConfigurationError("expected true or false, got '" + v + "'");
}

CancellerMode parse_mode(const std::string& v)
{
    for (auto m : {CancellerMode::None, CancellerMode::Linear, CancellerMode::Nonlinear})
        if (v == to_string(m))
            return m;
    throw ConfigurationError("canceller_mode must be none, linear or nonlinear, got '" + v + "'");
}

std::string fmt_real(double d)
{
    if (std::isinf(d))
        return d > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

struct Key {
    const char* name;
    std::function<void(Scenario&, const std::string&)> set;
    std::function<std::string(const Scenario&)> get;
};

#define FDSIC_REAL(key, field)                                                                     \
    Key{key, [](Scenario& s, const std::string& v) { s.field = parse_real(v); },                 \
        [](const Scenario& s) { return fmt_real(s.field); }}
#define FDSIC_UINT(key, field)                                                                     \
    Key{key,                                                                                       \
        [](Scenario& s, const std::string& v) {                                                    \
            s.field = parse_uint<std::remove_cvref_t<decltype(s.field)>>(v);                       \
        },                                                                                         \
        [](const Scenario& s) { return std::to_string(s.field); }}
#define FDSIC_BOOL(key, field)                                                                     \
    Key{key, [](Scenario& s, const std::string& v) { s.field = parse_bool(v); },                 \
        [](const Scenario& s) { return std::string(s.field ? "true" : "false"); }}

const std::vector<Key>& keys()
{
    static const std::vector<Key> table = {
        FDSIC_REAL("bandwidth_hz", bandwidth_hz),
        FDSIC_REAL("noise_figure_db", noise_figure_db),
        FDSIC_REAL("snr_requirement_db", snr_requirement_db),
        FDSIC_REAL("soi_power_dbm", soi_power_dbm),
        FDSIC_REAL("antenna_separation_db", channel.antenna_separation_db),
        FDSIC_REAL("rf_cancellation_db", rf_cancellation_db),
        FDSIC_UINT("adc_bits", adc.bits),
        FDSIC_REAL("adc_vrange_v", adc.vrange),
        FDSIC_REAL("papr_db", papr_db),
        FDSIC_REAL("pa_gain_db", pa.gain_db),
        FDSIC_REAL("pa_iip3_dbm", pa.iip3_dbm),
        FDSIC_REAL("pa_p1db_dbm", pa.p1db_dbm),
        FDSIC_UINT("pa_memory_len", pa.memory_len),
        FDSIC_REAL("pa_first_tap_energy", pa.first_tap_energy),
        FDSIC_UINT("ofdm_subcarriers", ofdm.n_subcarriers),
        FDSIC_UINT("ofdm_data_subcarriers", ofdm.n_data_subcarriers),
        FDSIC_UINT("ofdm_cp_samples", ofdm.cp_len_samples),
        FDSIC_UINT("ofdm_oversampling", ofdm.oversampling),
        FDSIC_REAL("base_rate_hz", ofdm.base_rate_hz),
        FDSIC_UINT("si_channel_taps", channel.n_taps),
        FDSIC_REAL("si_k_factor_db", channel.k_factor_db),
        FDSIC_UINT("ph_order", canceller.order),
        FDSIC_UINT("ph_pre_taps", canceller.pre_taps),
        FDSIC_UINT("ph_post_taps", canceller.post_taps),
        Key{"align_search_samples",
            [](Scenario& s, const std::string& v) { s.align_search_samples = parse_long(v); },
            [](const Scenario& s) { return std::to_string(s.align_search_samples); }},
        FDSIC_REAL("tx_power_dbm", tx_power_dbm),
        FDSIC_UINT("n_symbols_per_realization", n_symbols_per_realization),
        FDSIC_UINT("n_estimation_samples", n_estimation_samples),
        FDSIC_UINT("n_realizations", n_realizations),
        FDSIC_UINT("master_seed", master_seed),
        Key{"canceller_mode",
            [](Scenario& s, const std::string& v) { s.canceller_mode = parse_mode(v); },
            [](const Scenario& s) { return std::string(to_string(s.canceller_mode)); }},
        FDSIC_BOOL("si_enabled", si_enabled),
        FDSIC_BOOL("soi_enabled", soi_enabled),
        FDSIC_BOOL("noise_enabled", noise_enabled),
        FDSIC_BOOL("quantization_enabled", quantization_enabled),
    };
    return table;
}

#undef FDSIC_REAL
#undef FDSIC_UINT
#undef FDSIC_BOOL

} // namespace

Scenario parse_scenario(std::istream& in)
{
    Scenario s;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty())
            continue;
        const auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigurationError(where() + "expected 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const Key* k = nullptr;
        for (const auto& cand : keys())
            if (key == cand.name)
                k = &cand;
        if (k == nullptr)
            throw ConfigurationError(where() + "unknown key '" + key + "'");
        if (!seen.insert(key).second)
            throw ConfigurationError(where() + "key '" + key + "' given twice");
        try {
            k->set(s, value);
        } catch (const ConfigurationError& e) {
            throw ConfigurationError(where() + key + ": " + e.what());
        }
    }
    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigurationError("cannot open scenario file " + path.string());
    return parse_scenario(in);
}

std::string format_scenario(const Scenario& s)
{
    std::ostringstream os;
    for (const auto& k : keys())
        os << k.name << " = " << k.get(s) << '\n';
    return os.str();
}

} // namespace fdsic
