//
// Copyright 2026 The SLQBM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SLQBM_CLI_COMMANDS_H_
#define SLQBM_CLI_COMMANDS_H_

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "slqbm/cli/config.h"
#include "slqbm/error.h"

namespace slqbm::cli {

// Schema version stamped into every JSON report.
inline constexpr const char* kReportVersion = "1.0";

// Process exit status for each error class. 0 is success.
int ExitCodeFor(ErrorCode code);
// One line per exit status, for --help.
std::string ExitCodeHelp();

// Each command writes its artifacts under config.output_dir (created when
// missing) and a short human summary to 'log'. Errors surface as Error.

// solve.json with (q, n, p, P_k, objective, epsilon, eta, mu, lambda, grid
// size, evaluation count).
nlohmann::json CmdSolve(const RunConfig& config, std::ostream& log);

enum class SweepAxis { kEpsBar, kPMax, kW, kT, kK };
SweepAxis ParseSweepAxis(const std::string& name);
const char* SweepAxisName(SweepAxis axis);

// sweep.csv: axis_value,objective,q,n,p,epsilon,b_hi,status. Values are in
// file units (dBm for p_max, MHz for W, seconds for T). Infeasible rows carry
// objective inf and the error name in status.
std::string CmdSweep(const RunConfig& config, SweepAxis axis,
                     const std::vector<double>& values, std::ostream& log);

// compare_eps.csv: eps_bar,epsilon_tight,epsilon_baseline,ratio,q,n,p. Rows
// come from explicit (q, n, p) tuples, or from solving once per eps_bar.
// Throws kConfig when both lists are empty.
std::string CmdCompareEps(const RunConfig& config,
                          const std::vector<double>& eps_bars,
                          const std::vector<std::array<double, 3>>& tuples,
                          std::ostream& log);

// qbar.csv: p_max_dbm,qbar,log10_qbar,status.
std::string CmdQbar(const RunConfig& config, const std::vector<double>& p_max_dbm,
                    std::ostream& log);

// trace.csv (privatized run), trace_baseline.csv and simulate.json with the
// communication cost, theoretical bounds and the measured bias.
nlohmann::json CmdSimulate(const RunConfig& config, std::ostream& log);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double x);

}  // namespace slqbm::cli

#endif  // SLQBM_CLI_COMMANDS_H_
