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

// slqbm: batch front end for the privacy accountant, the resource solver and
// the federated-learning simulator.

#include <array>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#if __has_include("CLI11.hpp")
#include "CLI11.hpp"
#else
#include <CLI/CLI.hpp>
#endif
#include "slqbm/cli/commands.h"
#include "slqbm/cli/config.h"
#include "slqbm/error.h"

namespace {

using slqbm::Error;
using slqbm::ErrorCode;

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfig, "cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

// "q:n:p;q:n:p"
std::vector<std::array<double, 3>> ParseTuples(const std::string& text) {
  std::vector<std::array<double, 3>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    for (char& c : item) {
      if (c == ':') c = ',';
    }
    const std::vector<double> parts = ParseList(item);
    if (parts.size() != 3) throw Error(ErrorCode::kConfig, "tuples are q:n:p");
    out.push_back({parts[0], parts[1], parts[2]});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy accounting and resource optimization for quantized "
               "Binomial-mechanism federated learning."};
  app.footer(slqbm::cli::ExitCodeHelp());
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string axis;
  std::string values;
  std::string tuples;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config; omitted keys keep the preset");
    sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { seed = s; seed_set = true; }, "top-level seed");
  };
  CLI::App* solve = app.add_subcommand("solve", "solve for (q, n, p, P_k)");
  common(solve);
  CLI::App* sweep = app.add_subcommand("sweep", "solve along one axis");
  common(sweep);
  sweep->add_option("--axis", axis, "eps_bar | p_max (dBm) | W (MHz) | T (s) | K")->required();
  sweep->add_option("--values", values, "ascending comma-separated values")->required();
  CLI::App* compare = app.add_subcommand("compare-eps", "tight vs baseline budget");
  common(compare);
  compare->add_option("--values", values, "eps_bar values to solve for");
  compare->add_option("--tuples", tuples, "explicit q:n:p tuples separated by ';'");
  CLI::App* qbar = app.add_subcommand("qbar", "level cap along a p_max sweep");
  common(qbar);
  qbar->add_option("--values", values, "ascending p_max values in dBm")->required();
  CLI::App* simulate = app.add_subcommand("simulate", "federated SGD simulation");
  common(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    slqbm::cli::RunConfig config =
        config_path.empty() ? slqbm::cli::ParseRunConfig(nlohmann::json::object())
                            : slqbm::cli::LoadRunConfig(config_path);
    if (seed_set) {
      config.seed = seed;
      slqbm::cli::ResampleGains(&config);
    }
    if (!out_dir.empty()) config.output_dir = out_dir;

    if (*solve) {
      slqbm::cli::CmdSolve(config, std::cout);
    } else if (*sweep) {
      slqbm::cli::CmdSweep(config, slqbm::cli::ParseSweepAxis(axis), ParseList(values),
                           std::cout);
    } else if (*compare) {
      slqbm::cli::CmdCompareEps(config, ParseList(values), ParseTuples(tuples), std::cout);
    } else if (*qbar) {
      slqbm::cli::CmdQbar(config, ParseList(values), std::cout);
    } else if (*simulate) {
      slqbm::cli::CmdSimulate(config, std::cout);
    }
  } catch (const Error& e) {
    std::cerr << "slqbm: " << e.what() << "\n";
    return slqbm::cli::ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "slqbm: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
