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

#ifndef SLQBM_WIRELESS_H_
#define SLQBM_WIRELESS_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "slqbm/privacy.h"

namespace slqbm {

// How a stored channel gain h_k enters P_k h_k / omega0. The sampler draws
// the squared gain and stores its root; kAmplitude uses that root directly,
// kPower uses its square.
enum class GainSemantics { kAmplitude, kPower };

// Wireless and FL population constants. All quantities are SI: seconds,
// hertz, watts.
struct SystemParams {
  std::int64_t K = 1;        // selected devices per round
  std::int64_t M = 1;        // device population
  std::int64_t d = 1;        // gradient dimension
  double delta = 1e-10;
  double T = 1.0;            // transmission time, s
  double W = 1.0;            // bandwidth, Hz
  double omega0 = 1.0;       // receiver noise power, W
  double p_min = 1.0;        // W
  double p_max = 1.0;        // W
  std::vector<double> gains;  // h_k for the K selected devices
  GainSemantics gain_semantics = GainSemantics::kAmplitude;

  // Throws kInvalidArgument on any violated invariant.
  void Validate() const;

  PrivacyContext privacy() const { return PrivacyContext(d, delta, K); }

  // The gain multiplying P_k / omega0 for device k under gain_semantics.
  double LinkGain(std::size_t k) const;
  double MinLinkGain() const;
};

// W log2(1 + P g / omega0), bits per second. 'gain' is a link gain.
double ShannonRate(double power, double gain, const SystemParams& sys);

// d log2(q + n) <= T W log2(1 + P_k g_k / omega0) for every selected device.
bool CapacityFeasible(std::int64_t q, std::int64_t n, std::span<const double> powers,
                      const SystemParams& sys);

struct RequiredPower {
  double power = 0.0;      // clamped into [p_min, p_max]
  double unclamped = 0.0;  // omega0 [(q + n)^{d/TW} - 1] / g
  bool raised_to_min = false;
};

// Minimal transmit power for device link gain 'gain' to carry a (q, n)
// payload. Throws kCapacityInfeasible when the unclamped value exceeds p_max.
RequiredPower ComputeRequiredPower(std::int64_t q, std::int64_t n, double gain,
                                   const SystemParams& sys);
// Non-throwing form; empty when capacity-infeasible.
std::optional<RequiredPower> TryRequiredPower(std::int64_t q, std::int64_t n,
                                              double gain, const SystemParams& sys);

// (1 + min_k p_max g_k / omega0)^{TW/d}: the largest q + n the weakest device
// can carry at full power. May be +inf for very generous channels.
double CapacityBase(const SystemParams& sys);

// floor(CapacityBase) - 2, the shared upper end of the q and n domains.
// Throws kEmptyDomain when the result is below 2.
std::int64_t DomainBound(const SystemParams& sys);
// floor(base) - 2 for a caller-supplied base, e.g. one already clamped by a
// per-element bit budget.
std::int64_t DomainBound(double base);

// Distance-based Rayleigh-style channel draws: distance uniform in
// [d_min, d_max], squared gain exponential with mean g0 (d0 / distance)^4.
class ChannelSampler {
 public:
  struct Options {
    double g0 = 1e-4;  // reference gain (linear); -40 dB
    double d0 = 1.0;   // m
    double d_min = 2.0;
    double d_max = 200.0;
    std::uint64_t seed = 0;
  };

  explicit ChannelSampler(const Options& options);

  // Amplitude gains h_k = sqrt(h_k^2), one per device.
  std::vector<double> SampleGains(std::int64_t count);
  // One squared-gain draw at a fixed distance.
  double SampleSquaredGainAt(double distance);
  double MeanSquaredGainAt(double distance) const;

 private:
  Options options_;
  std::mt19937_64 rng_;
};

}  // namespace slqbm

#endif  // SLQBM_WIRELESS_H_
