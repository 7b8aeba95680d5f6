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

#ifndef SLQBM_CLI_CONFIG_H_
#define SLQBM_CLI_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "slqbm/quantizer.h"
#include "slqbm/solver.h"
#include "slqbm/wireless.h"

namespace slqbm::cli {

struct SimConfig {
  std::string task = "logistic";  // logistic | quadratic
  std::int64_t rounds = 500;
  std::int64_t samples_per_device = 20;
  double feature_scale = 1.0;
  double l2 = 1e-3;
  double D = 1.0;       // gradient element cap, also the bound G
  double gamma = 0.0;   // 0 selects the automatic rate
  double theta = 0.1;
  double capital_lambda = 0.1;
  std::int64_t bias_trials = 200;
  Rescale rescale = Rescale::kClip;
};

// Everything one command needs. Units are already SI here; the JSON file
// speaks dBm, MHz and dB, and ParseRunConfig converts at the boundary.
struct RunConfig {
  SystemParams system;
  // Used to draw the K gains when the file lists none.
  ChannelSampler::Options channel;
  // Gains listed in the file, if any; system.gains is a prefix of them.
  std::vector<double> file_gains;
  SolverConfig solver;
  SimConfig sim;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
};

// Preset mirroring the large-scale experiment: K = 1000 of M = 1e6 devices,
// d = 47710, delta = 1e-10, 900 MHz, powers in [1, 20] dBm, 16-bit cap.
nlohmann::json DefaultConfigJson();

// Overlays 'doc' on the preset, validates, converts units and draws gains
// when needed. Throws Error(kConfig) on any problem.
RunConfig ParseRunConfig(const nlohmann::json& doc);
RunConfig LoadRunConfig(const std::string& path);

// Re-derives system.gains for system.K devices: a prefix of the file's list,
// or a fresh draw from the seeded channel sampler.
void ResampleGains(RunConfig* config);

// Seed for the channel draw, split off the top-level seed.
std::uint64_t ChannelSeed(std::uint64_t seed);

}  // namespace slqbm::cli

#endif  // SLQBM_CLI_CONFIG_H_
