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

#ifndef SLQBM_CONVERGENCE_H_
#define SLQBM_CONVERGENCE_H_

#include <cstdint>

#include "slqbm/solver.h"
#include "slqbm/wireless.h"

namespace slqbm {

struct ConvergenceParams {
  double L = 1.0;               // smoothness constant
  double G = 1.0;               // per-coordinate gradient bound
  double G_f = 1.0;             // initial optimality gap F(w0) - F(w*)
  double theta = 0.1;           // accuracy
  double capital_lambda = 0.1;  // confidence
  double gamma = 0.0;           // learning rate; 0 means auto

  void Validate() const;
};

struct TheoreticalBoundsResult {
  double u_hi = 0.0;      // 4 ((M - K) / M)^2 d G^2
  double u_hi_iid = 0.0;  // 8 (M - K) / M^2 d G^2 / K
  double b_lo = 0.0;      // 4 d G^2 n p (1 - p) / (K (q - 1)^2)
  double b_hi = 0.0;      // 4 d G^2 (1 + n p (1 - p)) / (K (q - 1)^2)
};

TheoreticalBoundsResult TheoreticalBounds(std::int64_t d, std::int64_t M,
                                          std::int64_t K, double G, std::int64_t q,
                                          std::int64_t n, double p);
TheoreticalBoundsResult TheoreticalBounds(const SystemParams& sys,
                                          const Solution& sol,
                                          const ConvergenceParams& conv);

struct IterationEstimate {
  // ((L G_f sigma + sqrt(L^2 G_f^2 sigma^2 + theta Lambda L^2 G_f^2)) / (theta Lambda))^2
  double exact = 0.0;
  // 1 / (theta Lambda) + sigma^2 / (theta Lambda)^2, constants dropped.
  double order = 0.0;
};
IterationEstimate IterationsEstimate(const ConvergenceParams& conv, double sigma_sq);

// min{1 / L, sqrt(2 G_f) / (sigma sqrt(L rounds))}; 1 / L when sigma is 0.
double AutoLearningRate(const ConvergenceParams& conv, double sigma_sq,
                        std::int64_t rounds);

// rounds K d ceil(log2(q + n)) bits.
std::int64_t CommCost(std::int64_t rounds, std::int64_t K, std::int64_t d,
                      std::int64_t q, std::int64_t n);
// rounds K d 32, the float32 upload.
std::int64_t FloatCommCost(std::int64_t rounds, std::int64_t K, std::int64_t d);

}  // namespace slqbm

#endif  // SLQBM_CONVERGENCE_H_
