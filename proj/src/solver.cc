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

#include "slqbm/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

#include "slqbm/error.h"
#include "slqbm/numeric.h"

namespace slqbm {
namespace {

// Largest q range Solve will walk; beyond this the caller almost certainly
// forgot a bit cap.
constexpr std::int64_t kMaxLevels = 10'000'000;

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

// The n bisection without exceptions. Empty when budget(n_cap) > eps_bar.
template <typename Budget>
std::optional<std::int64_t> SearchTrials(const Budget& budget, double eps_bar,
                                         std::int64_t n_cap,
                                         std::int64_t* evaluations) {
  std::int64_t calls = 0;
  auto over = [&](std::int64_t n) {
    ++calls;
    return !(budget(n) <= eps_bar);
  };
  std::optional<std::int64_t> result;
  if (!over(2)) {
    result = 2;
  } else {
    // Doubling keeps 'lo' over budget; 'hi' is the first probe under it.
    std::int64_t lo = 2;
    std::int64_t hi = 2;
    bool found = false;
    while (hi < n_cap) {
      lo = hi;
      hi = std::min(2 * hi, n_cap);
      if (!over(hi)) {
        found = true;
        break;
      }
    }
    if (found) {
      while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (over(mid)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      result = hi;
    }
  }
  if (evaluations != nullptr) *evaluations = calls;
  return result;
}

struct Candidate {
  std::int64_t q = 0;
  std::int64_t n = 0;
  double p = 0.0;
  double objective = std::numeric_limits<double>::infinity();
  double epsilon = 0.0;

  bool valid() const { return q != 0; }
};

// Total order used for the reduction: objective, then q, then p, then n.
bool Better(const Candidate& a, const Candidate& b) {
  if (!b.valid()) return a.valid();
  if (!a.valid()) return false;
  return std::tie(a.objective, a.q, a.p, a.n) < std::tie(b.objective, b.q, b.p, b.n);
}

struct SearchTally {
  Candidate best;
  std::int64_t grid_points = 0;
  std::int64_t evaluations = 0;
  std::int64_t max_evaluations = 0;
};

void SearchLevels(std::int64_t q_begin, std::int64_t q_end, std::int64_t stride,
                  const std::vector<double>& grid, double base,
                  const SolverConfig& cfg, const PrivacyContext& ctx,
                  SearchTally* tally) {
  for (std::int64_t q = q_begin; q <= q_end; q += stride) {
    const TightBudget budget(q, ctx);
    for (double p : grid) {
      ++tally->grid_points;
      std::int64_t calls = 0;
      const auto n1 = SearchTrials([&](std::int64_t n) { return budget(n, p); },
                                   cfg.eps_bar, cfg.n_cap, &calls);
      tally->evaluations += calls;
      tally->max_evaluations = std::max(tally->max_evaluations, calls);
      if (!n1) continue;
      const std::int64_t n = NFromConstraints(q, p, *n1, ctx);
      // The line-5 capacity check on the real-valued bound.
      if (static_cast<double>(n) > base - static_cast<double>(q)) continue;
      if (n > cfg.n_cap) continue;
      Candidate c;
      c.q = q;
      c.n = n;
      c.p = p;
      c.objective = Objective(q, n, p);
      c.epsilon = budget(n, p);
      if (Better(c, tally->best)) tally->best = c;
    }
  }
}

}  // namespace

void SolverConfig::Validate() const {
  Require(eps_bar > 0.0 && std::isfinite(eps_bar), "eps_bar must be positive");
  Require(rho > 0.0 && std::isfinite(rho), "rho must be positive");
  Require(lambda_step < 0.5, "lambda_step must be below 1/2");
  Require(n_cap >= 2, "n_cap must be >= 2");
  Require(bit_cap >= 0 && bit_cap <= 62, "bit_cap must lie in [0, 62]");
  Require(threads >= 1, "threads must be >= 1");
}

double Objective(std::int64_t q, std::int64_t n, double p) {
  const double levels = static_cast<double>(q - 1);
  return (1.0 + static_cast<double>(n) * p * (1.0 - p)) / (levels * levels);
}

std::int64_t MinimalTrials(const std::function<double(std::int64_t)>& budget,
                           double eps_bar, std::int64_t n_cap,
                           std::int64_t* evaluations) {
  Require(n_cap >= 2, "n_cap must be >= 2");
  const auto n1 = SearchTrials(budget, eps_bar, n_cap, evaluations);
  if (!n1) {
    std::ostringstream msg;
    msg << "budget at n_cap = " << n_cap << " still exceeds eps_bar = " << eps_bar;
    throw Error(ErrorCode::kPrivacyInfeasible, msg.str());
  }
  return *n1;
}

std::int64_t MinNForPrivacy(std::int64_t q, double p, const SolverConfig& cfg,
                            const PrivacyContext& ctx, std::int64_t* evaluations) {
  Require(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
  const TightBudget budget(q, ctx);
  return MinimalTrials([&](std::int64_t n) { return budget(n, p); }, cfg.eps_bar,
                       cfg.n_cap, evaluations);
}

std::int64_t NFromConstraints(std::int64_t q, double p, std::int64_t n1,
                              const PrivacyContext& ctx) {
  const double per_trial = static_cast<double>(ctx.K()) * p * (1.0 - p);
  const double threshold = DpVarianceThreshold(q, ctx);
  auto n = static_cast<std::int64_t>(std::ceil(threshold / per_trial));
  // The quotient can round a hair low; nudge until the product clears.
  while (!DpVarianceFeasible(q, n, p, ctx)) ++n;
  return std::max(n, n1);
}

double EffectiveBase(const SystemParams& sys, const SolverConfig& cfg) {
  double base = CapacityBase(sys);
  if (cfg.bit_cap > 0) base = std::min(base, std::ldexp(1.0, cfg.bit_cap));
  return base;
}

std::int64_t EffectiveDomainBound(const SystemParams& sys, const SolverConfig& cfg) {
  return DomainBound(EffectiveBase(sys, cfg));
}

LevelBoundTerms LevelBound(std::int64_t q, double base, const PrivacyContext& ctx) {
  Require(q >= 2, "q must be >= 2");
  const double r = (base - static_cast<double>(q)) / 4.0;
  Require(r > 0.0, "q must lie below the capacity base");
  const SensitivityBounds sens = ComputeSensitivityBounds(q, ctx);
  const double delta = ctx.delta();
  const double ln_125 = NaturalLog(1.25 / delta);
  const double ln_10 = NaturalLog(10.0 / delta);
  const double ln_20d = NaturalLog(20.0 * static_cast<double>(ctx.d()) / delta);
  const double shrink = 1.0 - delta / 10.0;
  const double alpha = Alpha();

  LevelBoundTerms g;
  g.g1 = sens.delta_2 * std::sqrt(2.0 * ln_125) / std::sqrt(r);
  g.g2 = alpha * sens.delta_1 * (r + 1.0) / (2.0 * shrink * r * r);
  g.g3 = sens.delta_2 / std::sqrt(shrink) * std::sqrt((r + 1.0) / (r * r * r) * ln_10);
  const double inner = std::sqrt(2.0 * ln_20d / r) + (3.0 + ln_20d) / (3.0 * r);
  g.g4 = alpha / 3.0 * ln_10 * sens.delta_inf * inner * inner;
  g.g5 = 2.0 * ln_125 * sens.delta_inf / r;
  return g;
}

std::int64_t QBar(const SystemParams& sys, const SolverConfig& cfg) {
  sys.Validate();
  cfg.Validate();
  const PrivacyContext ctx = sys.privacy();
  const double base = EffectiveBase(sys, cfg);
  const std::int64_t bound = DomainBound(base);
  auto fits = [&](std::int64_t q) {
    return LevelBound(q, base, ctx).Total() <= cfg.eps_bar;
  };
  if (!fits(2)) {
    throw Error(ErrorCode::kAllInfeasible,
                "the level bound already exceeds eps_bar at q = 2");
  }
  if (fits(bound)) return bound;
  std::int64_t lo = 2;  // fits
  std::int64_t hi = bound;  // does not fit
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (fits(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double MuFromEta(double eta) {
  Require(eta > 0.0 && eta < 0.25, "eta must lie in (0, 1/4)");
  // 2 / (1 - sqrt(1 - 4 eta)) with the cancellation moved to the numerator.
  return (1.0 + std::sqrt(1.0 - 4.0 * eta)) / (2.0 * eta);
}

EtaMu EtaAndMu(const SolverConfig& cfg, const PrivacyContext& ctx) {
  const double dimension_term =
      23.0 * NaturalLog(10.0 * static_cast<double>(ctx.d()) / ctx.delta());
  const double eta = std::min(dimension_term, 6.0) /
                     (static_cast<double>(ctx.K()) * static_cast<double>(cfg.n_cap));
  if (!(eta < 0.25)) {
    std::ostringstream msg;
    msg << "eta = " << eta << " is not below 1/4; no relative-error guarantee";
    throw Error(ErrorCode::kErrorBoundUnavailable, msg.str());
  }
  return {eta, MuFromEta(eta)};
}

double LambdaForRho(double rho, double mu) {
  Require(rho > 0.0 && mu > 0.0, "rho and mu must be positive");
  return 0.99 * rho / mu;
}

std::vector<double> ProbabilityGrid(double lambda) {
  Require(lambda > 0.0 && lambda < 0.5, "lambda must lie in (0, 1/2)");
  std::vector<double> grid = {0.5};
  auto i = static_cast<std::int64_t>(std::floor(0.5 / lambda));
  while (static_cast<double>(i) * lambda <= 0.5) ++i;
  for (; static_cast<double>(i) * lambda < 1.0; ++i) {
    grid.push_back(static_cast<double>(i) * lambda);
  }
  return grid;
}

SolveResult Solve(const SystemParams& sys, const SolverConfig& cfg) {
  sys.Validate();
  cfg.Validate();
  const PrivacyContext ctx = sys.privacy();
  SolveResult result;
  SolveStats& stats = result.stats;

  if (cfg.lambda_step > 0.0) {
    stats.lambda = cfg.lambda_step;
    try {
      const EtaMu em = EtaAndMu(cfg, ctx);
      stats.eta = em.eta;
      stats.mu = em.mu;
    } catch (const Error&) {
      stats.eta = std::numeric_limits<double>::quiet_NaN();
      stats.mu = std::numeric_limits<double>::quiet_NaN();
    }
  } else {
    const EtaMu em = EtaAndMu(cfg, ctx);
    stats.eta = em.eta;
    stats.mu = em.mu;
    stats.lambda = LambdaForRho(cfg.rho, em.mu);
  }

  const double base = EffectiveBase(sys, cfg);
  stats.domain_bound = DomainBound(base);
  const std::vector<double> grid = ProbabilityGrid(stats.lambda);

  // The budget grows with q, so when n_cap misses eps_bar at q = 2 for every
  // grid p, the n bisection fails in every cell.
  {
    const TightBudget at_two(2, ctx);
    bool reachable = false;
    for (double p : grid) reachable = reachable || at_two(cfg.n_cap, p) <= cfg.eps_bar;
    if (!reachable) {
      throw Error(ErrorCode::kPrivacyInfeasible,
                  "eps_bar is out of reach within n_cap for every grid probability");
    }
  }
  stats.qbar = QBar(sys, cfg);
  stats.q_max = std::min(stats.qbar, stats.domain_bound);
  if (stats.q_max - 1 > kMaxLevels) {
    throw Error(ErrorCode::kInvalidArgument,
                "q range too large to search; set a bit cap");
  }
  // Interleaved q assignment balances the per-q cost, which grows with q.
  const int workers = static_cast<int>(
      std::min<std::int64_t>(cfg.threads, stats.q_max - 1));
  std::vector<SearchTally> tallies(std::max(workers, 1));
  if (workers <= 1) {
    SearchLevels(2, stats.q_max, 1, grid, base, cfg, ctx, &tallies[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(SearchLevels, 2 + w, stats.q_max, workers, std::cref(grid),
                        base, std::cref(cfg), std::cref(ctx), &tallies[w]);
    }
    for (auto& t : pool) t.join();
  }

  Candidate best;
  for (const SearchTally& t : tallies) {
    if (Better(t.best, best)) best = t.best;
    stats.grid_points += t.grid_points;
    stats.budget_evaluations += t.evaluations;
    stats.max_evaluations_per_point =
        std::max(stats.max_evaluations_per_point, t.max_evaluations);
  }
  if (!best.valid()) {
    throw Error(ErrorCode::kInfeasible, "no feasible grid point");
  }

  Solution& sol = result.solution;
  sol.q = best.q;
  sol.n = best.n;
  sol.p = best.p;
  sol.objective = best.objective;
  sol.epsilon_achieved = best.epsilon;
  sol.powers.reserve(sys.gains.size());
  for (std::size_t k = 0; k < sys.gains.size(); ++k) {
    sol.powers.push_back(ComputeRequiredPower(sol.q, sol.n, sys.LinkGain(k), sys).power);
  }
  return result;
}

bool SatisfiesAllConstraints(const SystemParams& sys, const SolverConfig& cfg,
                             const Solution& sol, std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why != nullptr) *why = reason;
    return false;
  };
  const PrivacyContext ctx = sys.privacy();
  const std::int64_t bound = EffectiveDomainBound(sys, cfg);
  if (sol.q < 2 || sol.q > bound) return fail("q outside {2..bound}");
  if (sol.n < 2 || sol.n > bound) return fail("n outside {2..bound}");
  if (sol.n > cfg.n_cap) return fail("n above n_cap");
  if (!(sol.p > 0.0 && sol.p < 1.0)) return fail("p outside (0, 1)");
  if (cfg.bit_cap > 0 &&
      CeilLog2(static_cast<std::uint64_t>(sol.q + sol.n)) > cfg.bit_cap) {
    return fail("payload exceeds the per-element bit cap");
  }
  if (!DpVarianceFeasible(sol.q, sol.n, sol.p, ctx)) {
    return fail("DP variance condition violated");
  }
  const double eps = EpsilonTight(MechanismParams(sol.q, sol.n, sol.p), ctx);
  if (!(eps <= cfg.eps_bar)) return fail("privacy budget exceeds eps_bar");
  if (sol.powers.size() != sys.gains.size()) return fail("one power per device required");
  for (double power : sol.powers) {
    if (!(power >= sys.p_min && power <= sys.p_max)) {
      return fail("transmit power outside [p_min, p_max]");
    }
  }
  if (!CapacityFeasible(sol.q, sol.n, sol.powers, sys)) {
    return fail("capacity constraint violated");
  }
  if (std::abs(sol.objective - Objective(sol.q, sol.n, sol.p)) >
      1e-12 * std::abs(sol.objective)) {
    return fail("objective does not match (q, n, p)");
  }
  return true;
}

}  // namespace slqbm
