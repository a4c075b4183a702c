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

#include <iosfwd>
#include <string>
#include <vector>

#include "fdsic/link_budget.hpp"
#include "fdsic/simulation.hpp"

namespace fdsic::report {

// All numeric fields are written with "%.4f" so identical runs give
// byte-identical files.

void write_run_csv(std::ostream& out, const sim::RunMetrics& m);

void write_sweep_csv(std::ostream& out, const std::vector<sim::SweepRow>& rows);

void write_budget_csv(std::ostream& out, const budget::BudgetParams& p, const std::vector<double>& tx_dbm);

/// "lo:hi:step" with step > 0, inclusive of hi up to rounding.
std::vector<double> parse_range(const std::string& spec);

/// Comma-separated real values.
std::vector<double> parse_list(const std::string& spec);

} // namespace fdsic::report
