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

#include "slqbm/quantizer.h"

#include <algorithm>
#include <cmath>

#include "slqbm/error.h"
#include "slqbm/numeric.h"

namespace slqbm {

double LevelValue(std::int64_t j, const MechanismParams& mech) {
  return -mech.D() + static_cast<double>(j) * mech.s();
}

std::int64_t QuantizeCoord(double g, const MechanismParams& mech, Rng& rng) {
  const double D = mech.D();
  const std::int64_t top = mech.q() - 1;
  g = std::clamp(g, -D, D);
  if (g >= D) return top;
  auto r = static_cast<std::int64_t>(std::floor((g + D) / mech.s()));
  r = std::clamp<std::int64_t>(r, 0, top - 1);
  // Repair the floor when (g + D) / s lands a rounding step off a level.
  if (r + 1 <= top - 1 && LevelValue(r + 1, mech) <= g) ++r;
  if (r > 0 && LevelValue(r, mech) > g) --r;
  const double lower = LevelValue(r, mech);
  if (g == lower) return r;
  const double up = (g - lower) / (LevelValue(r + 1, mech) - lower);
  return UniformUnit(rng) < up ? r + 1 : r;
}

std::vector<double> RescaleGradient(std::span<const double> gradient, double D,
                                    Rescale mode) {
  std::vector<double> out(gradient.begin(), gradient.end());
  if (mode == Rescale::kClip) {
    for (double& x : out) x = std::clamp(x, -D, D);
    return out;
  }
  double peak = 0.0;
  for (double x : out) peak = std::max(peak, std::abs(x));
  if (peak > D) {
    const double factor = D / peak;
    for (double& x : out) x = std::clamp(x * factor, -D, D);
  }
  return out;
}

std::int64_t PrivatizedUpdate::Bits() const {
  return static_cast<std::int64_t>(indices.size()) *
         CeilLog2(static_cast<std::uint64_t>(q + n));
}

double PrivatizedUpdate::Dequantize(std::size_t j) const {
  return s * static_cast<double>(indices[j]) - D - s * static_cast<double>(n) * p;
}

std::vector<double> PrivatizedUpdate::Dequantize() const {
  std::vector<double> out(indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) out[j] = Dequantize(j);
  return out;
}

PrivatizedUpdate Privatize(std::span<const double> gradient,
                           const MechanismParams& mech, Rng& rng, Rescale mode) {
  const std::vector<double> bounded = RescaleGradient(gradient, mech.D(), mode);
  PrivatizedUpdate update;
  update.q = mech.q();
  update.n = mech.n();
  update.p = mech.p();
  update.s = mech.s();
  update.D = mech.D();
  update.indices.resize(bounded.size());
  for (std::size_t j = 0; j < bounded.size(); ++j) {
    const std::int64_t level = QuantizeCoord(bounded[j], mech, rng);
    update.indices[j] = level + SampleBinomial(mech.n(), mech.p(), rng);
  }
  return update;
}

std::vector<double> Aggregate(std::span<const PrivatizedUpdate> updates,
                              std::int64_t K) {
  if (K < 1 || static_cast<std::int64_t>(updates.size()) != K) {
    throw Error(ErrorCode::kInvalidArgument, "Aggregate expects exactly K updates");
  }
  const PrivatizedUpdate& first = updates.front();
  for (const PrivatizedUpdate& u : updates) {
    if (u.q != first.q || u.n != first.n || u.p != first.p || u.s != first.s ||
        u.D != first.D || u.indices.size() != first.indices.size()) {
      throw Error(ErrorCode::kMechanismMismatch,
                  "updates were produced by different mechanisms");
    }
  }
  std::vector<double> out(first.indices.size(), 0.0);
  for (const PrivatizedUpdate& u : updates) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += u.Dequantize(j);
  }
  const double inv = 1.0 / static_cast<double>(K);
  for (double& x : out) x *= inv;
  return out;
}

}  // namespace slqbm
