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

#include <sstream>

#include "fdsic/error.hpp"
#include "fdsic/scenario.hpp"

using namespace fdsic;
using Catch::Approx;

namespace {

Scenario parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_scenario(in);
}

} // namespace

TEST_CASE("empty scenario keeps the defaults", "[scenario]")
{
    const auto s = parse("# nothing here\n\n   \n");
    CHECK(s.tx_power_dbm == 10.0);
    CHECK(s.pa.iip3_dbm == 15.0);
    CHECK(s.samples_per_realization() == 6400);
    CHECK(s.thermal_floor_dbm() == Approx(-98.93).margin(0.01));
}

TEST_CASE("keys, comments and special values", "[scenario]")
{
    const auto s = parse("tx_power_dbm = 17.5   # trailing comment\n"
                         "canceller_mode=linear\n"
                         "si_k_factor_db = inf\n"
                         "si_enabled = false\n"
                         "master_seed = 12345678901234\n"
                         "ph_order = 7\n");
    CHECK(s.tx_power_dbm == 17.5);
    CHECK(s.canceller_mode == CancellerMode::Linear);
    CHECK(std::isinf(s.channel.k_factor_db));
    CHECK_FALSE(s.si_enabled);
    CHECK(s.master_seed == 12345678901234ULL);
    CHECK(s.canceller.order == 7);
}

TEST_CASE("malformed scenarios are rejected", "[scenario]")
{
    CHECK_THROWS_AS(parse("bogus_key = 1\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("tx_power_dbm 10\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("tx_power_dbm = ten\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("tx_power_dbm = 1\ntx_power_dbm = 2\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("n_realizations = -3\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("canceller_mode = cubic\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("si_enabled = maybe\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("tx_power_dbm = inf\n"), ConfigurationError);
}

TEST_CASE("invalid combinations are rejected", "[scenario]")
{
    CHECK_THROWS_AS(parse("n_realizations = 0\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("n_estimation_samples = 7000\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("n_estimation_samples = 10\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("ph_order = 4\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("ofdm_data_subcarriers = 64\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("pa_first_tap_energy = 0.5\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("bandwidth_hz = 0\n"), ConfigurationError);
    CHECK_THROWS_AS(parse("antenna_separation_db = -3\n"), ConfigurationError);
}

TEST_CASE("error messages carry the line number", "[scenario]")
{
    try {
        parse("tx_power_dbm = 1\n\nnope = 2\n");
        FAIL("expected an error");
    } catch (const ConfigurationError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        CHECK(std::string(e.what()).find("nope") != std::string::npos);
    }
}

TEST_CASE("formatted scenario parses back to the same scenario", "[scenario]")
{
    auto s = parse("tx_power_dbm = 12.345678901\nsi_k_factor_db = inf\ncanceller_mode = none\n"
                   "noise_enabled = false\n");
    const auto text = format_scenario(s);
    CHECK(format_scenario(parse(text)) == text);
    CHECK(parse(text).tx_power_dbm == s.tx_power_dbm);
}

TEST_CASE("budget parameters mirror the scenario", "[scenario]")
{
    const auto s = parse("antenna_separation_db = 50\npa_iip3_dbm = 12\nadc_bits = 10\n");
    const auto b = s.budget_params();
    CHECK(b.antenna_separation_db == 50.0);
    CHECK(b.pa_iip3_dbm == 12.0);
    CHECK(b.adc_bits == 10);
    CHECK(b.received_signal_power_dbm == -83.9);
}
