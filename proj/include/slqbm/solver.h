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

#ifndef SLQBM_SOLVER_H_
#define SLQBM_SOLVER_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "slqbm/privacy.h"
#include "slqbm/wireless.h"

namespace slqbm {

struct SolverConfig {
  double eps_bar = 10.0;      // privacy budget upper bound
  double rho = 0.1;           // target relative error
  double lambda_step = 0.0;   // p-grid pitch; <= 0 derives it from rho
  std::int64_t n_cap = 65534; // largest Binomial trial count searched
  int bit_cap = 0;            // when > 0, log2(q + n) <= bit_cap
  int threads = 1;

  void Validate() const;
};

struct Solution {
  std::int64_t q = 0;
  std::int64_t n = 0;
  double p = 0.0;
  std::vector<double> powers;  // W, one per selected device
  double objective = 0.0;
  double epsilon_achieved = 0.0;
};

struct SolveStats {
  std::int64_t domain_bound = 0;
  std::int64_t qbar = 0;
  std::int64_t q_max = 0;  // min(qbar, domain_bound)
  std::int64_t grid_points = 0;
  std::int64_t budget_evaluations = 0;
  std::int64_t max_evaluations_per_point = 0;
  double lambda = 0.0;
  // NaN when eta >= 1/4 and lambda was supplied explicitly.
  double eta = 0.0;
  double mu = 0.0;
};

struct SolveResult {
  Solution solution;
  SolveStats stats;
};

// (1 + n p (1 - p)) / (q - 1)^2, the bias envelope with 4 d G^2 / K dropped.
double Objective(std::int64_t q, std::int64_t n, double p);

// Smallest n in [2, n_cap] with budget(n) <= eps_bar for a budget that is
// non-increasing in n: doubling from 2, then bisection. Throws
// kPrivacyInfeasible when budget(n_cap) > eps_bar. 'evaluations' (optional)
// receives the number of budget calls.
std::int64_t MinimalTrials(const std::function<double(std::int64_t)>& budget,
                           double eps_bar, std::int64_t n_cap,
                           std::int64_t* evaluations = nullptr);

// MinimalTrials applied to the tight estimate at fixed (q, p).
std::int64_t MinNForPrivacy(std::int64_t q, double p, const SolverConfig& cfg,
                            const PrivacyContext& ctx,
                            std::int64_t* evaluations = nullptr);

// max{ceil(max{23 ln(10d/delta), 2(q+1)} / (K p (1-p))), n1}.
std::int64_t NFromConstraints(std::int64_t q, double p, std::int64_t n1,
                              const PrivacyContext& ctx);

// CapacityBase(sys), further limited to 2^bit_cap when a bit budget is set.
double EffectiveBase(const SystemParams& sys, const SolverConfig& cfg);
std::int64_t EffectiveDomainBound(const SystemParams& sys, const SolverConfig& cfg);

// Lower envelope g(q) = g1 + ... + g5 of the tight budget over every
// capacity-feasible (n, p >= 1/2), with r(q) = (base - q) / 4.
struct LevelBoundTerms {
  double g1, g2, g3, g4, g5;
  double Total() const { return g1 + g2 + g3 + g4 + g5; }
};
LevelBoundTerms LevelBound(std::int64_t q, double base, const PrivacyContext& ctx);

// Largest q in {2, ..., domain bound} with g(q) <= eps_bar, by bisection.
// Throws kAllInfeasible when g(2) > eps_bar.
std::int64_t QBar(const SystemParams& sys, const SolverConfig& cfg);

struct EtaMu {
  double eta;
  double mu;
};
// mu = 2 / (1 - sqrt(1 - 4 eta)), evaluated in a cancellation-free form.
double MuFromEta(double eta);
// eta = min{23 ln(10d/delta), 6} / (K n_cap). Throws kErrorBoundUnavailable
// when eta >= 1/4.
EtaMu EtaAndMu(const SolverConfig& cfg, const PrivacyContext& ctx);
// 0.99 rho / mu, strictly inside the rho < mu lambda guarantee.
double LambdaForRho(double rho, double mu);

// {1/2} followed by i * lambda for every i with 1/2 < i lambda < 1.
std::vector<double> ProbabilityGrid(double lambda);

// Grid search over {2..min(qbar, bound)} x ProbabilityGrid(lambda), with n
// from the n bisection plus the DP-variance floor and powers from the
// clamped minimal-power rule. Throws kEmptyDomain, kPrivacyInfeasible (no
// grid p reaches eps_bar within n_cap even at q = 2), kAllInfeasible,
// kErrorBoundUnavailable (only when lambda must be derived) or kInfeasible.
SolveResult Solve(const SystemParams& sys, const SolverConfig& cfg);

// Exhaustive oracle: every q in the domain, every n, and p on a grid
// fine_factor times denser than the solver's, covering all of (0, 1).
// Shares no search logic with Solve. Throws kInfeasible or, when the scan
// would exceed 1e8 cells, kInvalidArgument.
Solution BruteForceSolve(const SystemParams& sys, const SolverConfig& cfg,
                         int fine_factor);

// Re-checks every constraint of the original problem on 'sol'. On failure
// returns false and, when 'why' is non-null, a description.
bool SatisfiesAllConstraints(const SystemParams& sys, const SolverConfig& cfg,
                             const Solution& sol, std::string* why = nullptr);

}  // namespace slqbm

#endif  // SLQBM_SOLVER_H_
