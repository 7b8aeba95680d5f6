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

#include "slqbm/wireless.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "slqbm/error.h"
#include "slqbm/numeric.h"

namespace slqbm {
namespace {

// Relative slack on the capacity comparison. Powers produced by
// ComputeRequiredPower sit exactly on the boundary, where log2/pow round-off
// can otherwise flip the comparison.
constexpr double kCapacityRelTol = 1e-12;

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

void SystemParams::Validate() const {
  Require(K >= 1, "K must be >= 1");
  Require(M >= K, "K must not exceed the population M");
  Require(d >= 1, "d must be >= 1");
  Require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  Require(T > 0.0 && std::isfinite(T), "transmission time T must be positive");
  Require(W > 0.0 && std::isfinite(W), "bandwidth W must be positive");
  Require(omega0 > 0.0 && std::isfinite(omega0), "noise power must be positive");
  Require(p_min > 0.0 && p_min <= p_max && std::isfinite(p_max),
          "power limits must satisfy 0 < p_min <= p_max");
  Require(static_cast<std::int64_t>(gains.size()) == K,
          "one channel gain per selected device is required");
  for (double g : gains) {
    Require(g > 0.0 && std::isfinite(g), "channel gains must be positive");
  }
}

double SystemParams::LinkGain(std::size_t k) const {
  const double h = gains.at(k);
  return gain_semantics == GainSemantics::kAmplitude ? h : h * h;
}

double SystemParams::MinLinkGain() const {
  double out = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < gains.size(); ++k) out = std::min(out, LinkGain(k));
  return out;
}

double ShannonRate(double power, double gain, const SystemParams& sys) {
  Require(power > 0.0, "power must be positive");
  return sys.W * BinaryLog(1.0 + power * gain / sys.omega0);
}

bool CapacityFeasible(std::int64_t q, std::int64_t n, std::span<const double> powers,
                      const SystemParams& sys) {
  Require(q >= 2 && n >= 2, "q and n must be >= 2");
  Require(powers.size() == sys.gains.size(), "one power per selected device is required");
  const double payload =
      static_cast<double>(sys.d) * BinaryLog(static_cast<double>(q + n));
  for (std::size_t k = 0; k < powers.size(); ++k) {
    const double capacity = sys.T * sys.W *
                            BinaryLog(1.0 + powers[k] * sys.LinkGain(k) / sys.omega0);
    if (payload > capacity * (1.0 + kCapacityRelTol)) return false;
  }
  return true;
}

std::optional<RequiredPower> TryRequiredPower(std::int64_t q, std::int64_t n,
                                              double gain, const SystemParams& sys) {
  Require(q + n >= 4, "q + n must be >= 4");
  Require(gain > 0.0, "gain must be positive");
  const double exponent = static_cast<double>(sys.d) / (sys.T * sys.W);
  RequiredPower out;
  out.unclamped =
      sys.omega0 * std::expm1(exponent * NaturalLog(static_cast<double>(q + n))) / gain;
  if (out.unclamped > sys.p_max * (1.0 + kCapacityRelTol)) return std::nullopt;
  if (out.unclamped < sys.p_min) {
    out.power = sys.p_min;
    out.raised_to_min = true;
  } else {
    out.power = std::min(out.unclamped, sys.p_max);
  }
  return out;
}

RequiredPower ComputeRequiredPower(std::int64_t q, std::int64_t n, double gain,
                                   const SystemParams& sys) {
  auto out = TryRequiredPower(q, n, gain, sys);
  if (!out) {
    throw Error(ErrorCode::kCapacityInfeasible,
                "q + n = " + std::to_string(q + n) +
                    " exceeds the channel capacity at maximum power");
  }
  return *out;
}

double CapacityBase(const SystemParams& sys) {
  const double snr = sys.p_max * sys.MinLinkGain() / sys.omega0;
  return std::pow(1.0 + snr, sys.T * sys.W / static_cast<double>(sys.d));
}

std::int64_t DomainBound(double base) {
  // Beyond 2^62 the floor no longer fits; nothing downstream needs that range.
  constexpr double kLimit = 4.611686018427387904e18;
  const double floored = std::floor(std::min(base, kLimit));
  const auto bound = static_cast<std::int64_t>(floored) - 2;
  if (bound < 2) {
    throw Error(ErrorCode::kEmptyDomain,
                "capacity admits no q, n >= 2 (domain bound " +
                    std::to_string(bound) + ")");
  }
  return bound;
}

std::int64_t DomainBound(const SystemParams& sys) { return DomainBound(CapacityBase(sys)); }

ChannelSampler::ChannelSampler(const Options& options)
    : options_(options), rng_(options.seed) {
  Require(options_.d_min > 0.0 && options_.d_min <= options_.d_max,
          "distances must satisfy 0 < d_min <= d_max");
  Require(options_.g0 > 0.0 && options_.d0 > 0.0, "g0 and d0 must be positive");
}

double ChannelSampler::MeanSquaredGainAt(double distance) const {
  const double ratio = options_.d0 / distance;
  return options_.g0 * ratio * ratio * ratio * ratio;
}

double ChannelSampler::SampleSquaredGainAt(double distance) {
  std::exponential_distribution<double> exp(1.0 / MeanSquaredGainAt(distance));
  return exp(rng_);
}

std::vector<double> ChannelSampler::SampleGains(std::int64_t count) {
  Require(count >= 1, "count must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  std::uniform_real_distribution<double> dist(options_.d_min, options_.d_max);
  for (std::int64_t k = 0; k < count; ++k) {
    const double distance =
        options_.d_min == options_.d_max ? options_.d_min : dist(rng_);
    double h2 = SampleSquaredGainAt(distance);
    // An exact zero would make the device unusable; the exponential draw
    // returns 0 with probability ~2^-53.
    while (h2 <= 0.0) h2 = SampleSquaredGainAt(distance);
    out.push_back(std::sqrt(h2));
  }
  return out;
}

}  // namespace slqbm
