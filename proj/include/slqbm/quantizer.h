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

#ifndef SLQBM_QUANTIZER_H_
#define SLQBM_QUANTIZER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "slqbm/privacy.h"
#include "slqbm/random.h"

namespace slqbm {

// How a device brings its gradient into [-D, D] before quantizing.
enum class Rescale {
  kClip,   // clamp each element
  kScale,  // shrink the whole vector when its largest element exceeds D
};

// Stochastic rounding onto the q levels V(j) = -D + j s. For V(r) <= g <
// V(r + 1), returns r + 1 with probability (g - V(r)) / s, otherwise r.
// g = D maps to q - 1. Inputs outside [-D, D] are clamped first.
std::int64_t QuantizeCoord(double g, const MechanismParams& mech, Rng& rng);

// Level value V(j).
double LevelValue(std::int64_t j, const MechanismParams& mech);

std::vector<double> RescaleGradient(std::span<const double> gradient, double D,
                                    Rescale mode);

// One device's upload: per coordinate, quantized level plus a Binomial(n, p)
// draw, each in [0, q - 1 + n].
struct PrivatizedUpdate {
  std::vector<std::int64_t> indices;
  std::int64_t q = 0;
  std::int64_t n = 0;
  double p = 0.0;
  double s = 0.0;
  double D = 0.0;

  // d ceil(log2(q + n)), the payload size.
  std::int64_t Bits() const;
  // s index - D - s n p, the server-side reading of one coordinate.
  double Dequantize(std::size_t j) const;
  std::vector<double> Dequantize() const;
};

PrivatizedUpdate Privatize(std::span<const double> gradient,
                           const MechanismParams& mech, Rng& rng,
                           Rescale mode = Rescale::kClip);

// Coordinate-wise mean of the K dequantized updates. Throws
// kMechanismMismatch when the updates disagree on (q, n, p, s, D) or length,
// and kInvalidArgument when their count is not K.
std::vector<double> Aggregate(std::span<const PrivatizedUpdate> updates,
                              std::int64_t K);

}  // namespace slqbm

#endif  // SLQBM_QUANTIZER_H_
