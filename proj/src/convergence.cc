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

#include "slqbm/convergence.h"

#include <algorithm>
#include <cmath>

#include "slqbm/error.h"
#include "slqbm/numeric.h"

namespace slqbm {
namespace {

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

void ConvergenceParams::Validate() const {
  Require(L > 0.0 && G > 0.0 && G_f > 0.0, "L, G and G_f must be positive");
  Require(theta > 0.0 && theta <= 1.0, "theta must lie in (0, 1]");
  Require(capital_lambda > 0.0 && capital_lambda < 1.0, "Lambda must lie in (0, 1)");
  Require(gamma >= 0.0, "gamma must be non-negative");
}

TheoreticalBoundsResult TheoreticalBounds(std::int64_t d, std::int64_t M,
                                          std::int64_t K, double G, std::int64_t q,
                                          std::int64_t n, double p) {
  Require(d >= 1 && K >= 1 && M >= K, "need d >= 1 and 1 <= K <= M");
  Require(q >= 2 && n >= 1 && p > 0.0 && p < 1.0, "invalid (q, n, p)");
  const double dg2 = static_cast<double>(d) * G * G;
  const double m = static_cast<double>(M);
  const double k = static_cast<double>(K);
  const double gap = (m - k) / m;
  const double levels = static_cast<double>(q - 1);
  const double v = static_cast<double>(n) * p * (1.0 - p);
  TheoreticalBoundsResult out;
  out.u_hi = 4.0 * gap * gap * dg2;
  out.u_hi_iid = 8.0 * (m - k) / (m * m) * dg2 / k;
  out.b_lo = 4.0 * dg2 * v / (k * levels * levels);
  out.b_hi = 4.0 * dg2 * (1.0 + v) / (k * levels * levels);
  return out;
}

TheoreticalBoundsResult TheoreticalBounds(const SystemParams& sys,
                                          const Solution& sol,
                                          const ConvergenceParams& conv) {
  return TheoreticalBounds(sys.d, sys.M, sys.K, conv.G, sol.q, sol.n, sol.p);
}

IterationEstimate IterationsEstimate(const ConvergenceParams& conv, double sigma_sq) {
  conv.Validate();
  Require(sigma_sq >= 0.0, "sigma^2 must be non-negative");
  const double sigma = std::sqrt(sigma_sq);
  const double lg = conv.L * conv.G_f;
  const double tl = conv.theta * conv.capital_lambda;
  const double root = std::sqrt(lg * lg * sigma_sq + tl * lg * lg);
  const double ratio = (lg * sigma + root) / tl;
  IterationEstimate out;
  out.exact = ratio * ratio;
  out.order = 1.0 / tl + sigma_sq / (tl * tl);
  return out;
}

double AutoLearningRate(const ConvergenceParams& conv, double sigma_sq,
                        std::int64_t rounds) {
  Require(rounds >= 1, "rounds must be >= 1");
  const double inv_l = 1.0 / conv.L;
  if (!(sigma_sq > 0.0)) return inv_l;
  const double noise_rate = std::sqrt(2.0 * conv.G_f) /
                            (std::sqrt(sigma_sq) *
                             std::sqrt(conv.L * static_cast<double>(rounds)));
  return std::min(inv_l, noise_rate);
}

std::int64_t CommCost(std::int64_t rounds, std::int64_t K, std::int64_t d,
                      std::int64_t q, std::int64_t n) {
  Require(rounds >= 1 && K >= 1 && d >= 1 && q >= 1 && n >= 1,
          "communication cost needs positive arguments");
  return rounds * K * d * CeilLog2(static_cast<std::uint64_t>(q + n));
}

std::int64_t FloatCommCost(std::int64_t rounds, std::int64_t K, std::int64_t d) {
  return rounds * K * d * 32;
}

}  // namespace slqbm
