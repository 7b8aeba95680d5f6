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

#include <cmath>

#include "slqbm/error.h"
#include "slqbm/random.h"

namespace slqbm {
namespace {

constexpr std::int64_t kInversionLimit = 64;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Inversion for p <= 1/2. Walks the pmf by the ratio recursion.
std::int64_t InvertBinomial(std::int64_t n, double p, Rng& rng) {
  const double u = UniformUnit(rng);
  const double odds = p / (1.0 - p);
  double pmf = std::pow(1.0 - p, static_cast<double>(n));
  double cdf = pmf;
  std::int64_t k = 0;
  while (u >= cdf && k < n) {
    pmf *= odds * static_cast<double>(n - k) / static_cast<double>(k + 1);
    cdf += pmf;
    ++k;
  }
  return k;
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view label) {
  return SplitMix64(seed ^ Fnv1a(label));
}

std::int64_t SampleBinomial(std::int64_t n, double p, Rng& rng) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Binomial needs n >= 0 and p in [0, 1]");
  }
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (n <= kInversionLimit) {
    if (p > 0.5) return n - InvertBinomial(n, 1.0 - p, rng);
    return InvertBinomial(n, p, rng);
  }
  std::binomial_distribution<std::int64_t> dist(n, p);
  return dist(rng);
}

}  // namespace slqbm
