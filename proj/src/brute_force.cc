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

// Exhaustive reference solver used to audit the grid search. It scans every
// (q, p, n) cell and re-checks each constraint from scratch.

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "slqbm/error.h"
#include "slqbm/solver.h"

namespace slqbm {
namespace {

// Fine grid over all of (0, 1) with pitch lambda / factor. Points that sit on
// the coarse grid are formed exactly as the coarse grid forms them, so the
// coarse grid is a bitwise subset.
std::vector<double> FineGrid(double lambda, int factor) {
  std::vector<double> grid;
  const double pitch = lambda / factor;
  bool has_half = false;
  for (std::int64_t j = 1;; ++j) {
    const double p = (j % factor == 0)
                         ? static_cast<double>(j / factor) * lambda
                         : static_cast<double>(j) * pitch;
    if (!(p < 1.0)) break;
    has_half = has_half || p == 0.5;
    grid.push_back(p);
  }
  if (!has_half) grid.push_back(0.5);
  return grid;
}

}  // namespace

Solution BruteForceSolve(const SystemParams& sys, const SolverConfig& cfg,
                         int fine_factor) {
  sys.Validate();
  cfg.Validate();
  if (fine_factor < 1) throw Error(ErrorCode::kInvalidArgument, "fine_factor must be >= 1");
  const PrivacyContext ctx = sys.privacy();

  double lambda = cfg.lambda_step;
  if (!(lambda > 0.0)) lambda = LambdaForRho(cfg.rho, EtaAndMu(cfg, ctx).mu);
  const double base = EffectiveBase(sys, cfg);
  const std::int64_t bound = DomainBound(base);
  const std::int64_t n_top = std::min(bound, cfg.n_cap);
  const std::vector<double> grid = FineGrid(lambda, fine_factor);

  const double cells = static_cast<double>(bound - 1) *
                       static_cast<double>(grid.size()) *
                       static_cast<double>(n_top - 1);
  if (cells > 1e8) {
    throw Error(ErrorCode::kInvalidArgument, "brute-force scan would exceed 1e8 cells");
  }

  const double min_gain = sys.MinLinkGain();
  Solution best;
  best.objective = std::numeric_limits<double>::infinity();
  bool found = false;
  // Descending q finds small objectives early, which makes the exact
  // objective cut below bite sooner. Visit order does not change the answer.
  for (std::int64_t q = bound; q >= 2; --q) {
    // Capacity and the bit cap depend on q + n only: find the top n once.
    std::int64_t n_hi = 1;
    for (std::int64_t n = 2; n <= n_top; ++n) {
      if (cfg.bit_cap > 0 && static_cast<double>(q + n) > std::ldexp(1.0, cfg.bit_cap)) break;
      if (!TryRequiredPower(q, n, min_gain, sys)) break;
      n_hi = n;
    }
    if (n_hi < 2) continue;
    const double threshold = DpVarianceThreshold(q, ctx);
    const TightBudget budget(q, ctx);
    for (double p : grid) {
      // Jump to the variance threshold, then settle on the exact predicate.
      const double guess = std::ceil(threshold / (static_cast<double>(ctx.K()) * p * (1.0 - p)));
      std::int64_t n = guess > static_cast<double>(n_hi) ? n_hi + 1
                                                         : std::max<std::int64_t>(2, static_cast<std::int64_t>(guess) - 1);
      while (n <= n_hi && !DpVarianceFeasible(q, n, p, ctx)) ++n;
      while (n > 2 && n <= n_hi && DpVarianceFeasible(q, n - 1, p, ctx)) --n;
      // The objective grows with n, so the first admissible n is the best
      // one for this (q, p).
      for (; n <= n_hi; ++n) {
        // Nothing later in this cell can beat or tie the incumbent.
        if (found && Objective(q, n, p) > best.objective) break;
        const double eps = budget(n, p);
        if (!(eps <= cfg.eps_bar)) continue;
        const double objective = Objective(q, n, p);
        if (!found || std::tie(objective, q, p, n) <
                          std::tie(best.objective, best.q, best.p, best.n)) {
          found = true;
          best.q = q;
          best.n = n;
          best.p = p;
          best.objective = objective;
          best.epsilon_achieved = eps;
        }
        break;
      }
    }
  }
  if (!found) throw Error(ErrorCode::kInfeasible, "no feasible (q, n, p) cell");
  best.powers.clear();
  for (std::size_t k = 0; k < sys.gains.size(); ++k) {
    best.powers.push_back(ComputeRequiredPower(best.q, best.n, sys.LinkGain(k), sys).power);
  }
  return best;
}

}  // namespace slqbm
