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

#ifndef SLQBM_FSGD_H_
#define SLQBM_FSGD_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "slqbm/privacy.h"
#include "slqbm/quantizer.h"
#include "slqbm/random.h"
#include "slqbm/tasks.h"
#include "slqbm/wireless.h"

namespace slqbm {

struct SimRecord {
  std::int64_t round = 0;
  double loss = 0.0;          // F(w) after the round's update
  double grad_norm_sq = 0.0;  // ||grad F(w)||^2 before the update
  double bias_sample = 0.0;   // ||g - g~||^2 for this round's aggregate
  std::int64_t bits = 0;      // uplink bits this round, all devices
};

struct SimTrace {
  std::vector<SimRecord> records;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  std::int64_t total_bits = 0;

  // Header round,loss,grad_norm_sq,bias_sample,bits then one line per round.
  void WriteCsv(std::ostream& out) const;
};

struct FsgdOptions {
  std::int64_t rounds = 100;
  double gamma = 0.1;  // learning rate
  Rescale rescale = Rescale::kClip;
  std::uint64_t seed = 0;
};

// Federated SGD: each round selects K of M devices uniformly without
// replacement, averages their local gradients, and steps w <- w - gamma g.
// With a mechanism, each device uploads Privatize(gradient) and the server
// steps along Aggregate(...) instead; without one, gradients go up as float32
// and bias_sample is 0. Throws kDiverged when the loss turns non-finite.
SimTrace RunFsgd(const Task& task, const SystemParams& sys,
                 const std::optional<MechanismParams>& mech,
                 const FsgdOptions& options);

// K device indices drawn without replacement, sorted ascending.
std::vector<std::int64_t> SelectDevices(std::int64_t M, std::int64_t K, Rng& rng);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
};

// E ||g - g~||^2 at fixed weights w, where g is the mean of the K selected
// devices' bounded gradients and g~ the aggregate of their privatized
// uploads.
MonteCarloEstimate MeasureBias(const Task& task, std::span<const double> w,
                               const MechanismParams& mech, std::int64_t K,
                               std::int64_t trials, Rng& rng,
                               Rescale rescale = Rescale::kClip);

// E ||g - grad F(w)||^2 from device sampling alone. Exactly 0 at K = M.
MonteCarloEstimate MeasureSamplingVariance(const Task& task,
                                           std::span<const double> w,
                                           std::int64_t K, std::int64_t trials,
                                           Rng& rng);

}  // namespace slqbm

#endif  // SLQBM_FSGD_H_
