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

// fd-sic command line front end.
//
//   fd-sic run    --scenario FILE --out CSV
//   fd-sic sweep  --scenario FILE --variable tx_power|iip3|antenna_separation --values a,b,c --out CSV
//   fd-sic budget --scenario FILE --tx-range lo:hi:step --out CSV
//
// Exit status: 0 success, 2 configuration or input error, 3 estimation error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fdsic/error.hpp"
#include "fdsic/report.hpp"
#include "fdsic/scenario.hpp"
#include "fdsic/simulation.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitEstimation = 3;

template <typename Writer>
void emit(const std::string& path, Writer write)
{
    if (path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw fdsic::ConfigurationError("cannot open output file " + path);
    write(out);
    if (!out)
        throw fdsic::ConfigurationError("failed writing " + path);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Full-duplex self-interference cancellation simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    unsigned threads = 1;

    auto* run = app.add_subcommand("run", "Monte Carlo run of one scenario, one row per realization");
    run->add_option("--scenario", scenario_path, "scenario file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_path, "output CSV, '-' for stdout")->required();
    run->add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();

    std::string variable;
    std::string values;
    auto* sweep = app.add_subcommand("sweep", "sweep one parameter for linear, nonlinear and reference runs");
    sweep->add_option("--scenario", scenario_path, "scenario file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--variable", variable, "tx_power, iip3 or antenna_separation")
        ->required()
        ->check(CLI::IsMember({"tx_power", "iip3", "antenna_separation"}));
    sweep->add_option("--values", values, "comma-separated values")->required();
    sweep->add_option("--out", out_path, "output CSV, '-' for stdout")->required();
    sweep->add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();

    std::string tx_range;
    auto* budget = app.add_subcommand("budget", "closed-form detector-input power levels");
    budget->add_option("--scenario", scenario_path, "scenario file")->required()->check(CLI::ExistingFile);
    budget->add_option("--tx-range", tx_range, "lo:hi:step in dBm")->required();
    budget->add_option("--out", out_path, "output CSV, '-' for stdout")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        const fdsic::Scenario sc = fdsic::load_scenario(scenario_path);
        if (run->parsed()) {
            const auto m = fdsic::sim::run(sc, threads);
            emit(out_path, [&](std::ostream& os) { fdsic::report::write_run_csv(os, m); });
        } else if (sweep->parsed()) {
            const auto var = fdsic::sim::parse_sweep_variable(variable);
            const auto rows = fdsic::sim::run_sweep(sc, var, fdsic::report::parse_list(values), threads);
            emit(out_path, [&](std::ostream& os) { fdsic::report::write_sweep_csv(os, rows); });
        } else if (budget->parsed()) {
            const auto tx = fdsic::report::parse_range(tx_range);
            emit(out_path,
                 [&](std::ostream& os) { fdsic::report::write_budget_csv(os, sc.budget_params(), tx); });
        }
    } catch (const fdsic::EstimationError& e) {
        std::cerr << "fd-sic: estimation error: " << e.what() << '\n';
        return kExitEstimation;
    } catch (const fdsic::Error& e) {
        std::cerr << "fd-sic: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
