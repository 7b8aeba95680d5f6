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

#ifndef SLQBM_RANDOM_H_
#define SLQBM_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace slqbm {

using Rng = std::mt19937_64;

// Sub-seed for a named consumer: SplitMix64 of (seed xor FNV-1a(label)).
// Consumers keyed by distinct labels draw from unrelated streams, so adding a
// new consumer never shifts an existing one.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view label);

// Exact Binomial(n, p) draw. Small n uses CDF inversion on the side of 1/2
// nearer zero; larger n defers to std::binomial_distribution, which is an
// exact rejection sampler. Never a normal approximation.
std::int64_t SampleBinomial(std::int64_t n, double p, Rng& rng);

// Uniform in [0, 1).
inline double UniformUnit(Rng& rng) {
  return std::generate_canonical<double, 53>(rng);
}

}  // namespace slqbm

#endif  // SLQBM_RANDOM_H_
