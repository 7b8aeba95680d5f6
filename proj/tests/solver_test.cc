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

#include <cmath>
#include <functional>
#include <random>

#include "gtest/gtest.h"
#include "slqbm/error.h"
#include "slqbm/numeric.h"
#include "test_systems.h"

namespace slqbm {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(ObjectiveTest, Arithmetic) {
  EXPECT_DOUBLE_EQ(Objective(3, 4, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(Objective(2, 40, 0.25), 1.0 + 40 * 0.25 * 0.75);
  EXPECT_DOUBLE_EQ(Objective(9, 77, 0.3), Objective(9, 77, 0.7));
}

TEST(MinimalTrialsTest, InjectedBudget) {
  auto inverse = [](std::int64_t n) { return 100.0 / static_cast<double>(n); };
  EXPECT_EQ(MinimalTrials(inverse, 4.0, 4096), 25);
  EXPECT_EQ(MinimalTrials(inverse, 50.0, 4096), 2);
  EXPECT_EQ(MinimalTrials(inverse, 100.0 / 4096.0, 4096), 4096);
  EXPECT_EQ(CodeOf([&] { MinimalTrials(inverse, 1e-6, 100); }),
            ErrorCode::kPrivacyInfeasible);
}

TEST(MinimalTrialsTest, MatchesLinearScanAndEvaluationBudget) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t n_cap = 2 + static_cast<std::int64_t>(rng() % 5000);
    const std::int64_t threshold = 2 + static_cast<std::int64_t>(rng() % (n_cap - 1));
    // Step budget: 1 from 'threshold' on, 2 before.
    auto budget = [&](std::int64_t n) { return n >= threshold ? 1.0 : 2.0; };
    std::int64_t evals = 0;
    EXPECT_EQ(MinimalTrials(budget, 1.5, n_cap, &evals), threshold);
    EXPECT_LE(evals, 2 * CeilLog2(static_cast<std::uint64_t>(n_cap)) + 2);
  }
}

TEST(MinNForPrivacyTest, MinimalAndFeasible) {
  const PrivacyContext ctx(1000, 1e-6, 100);
  SolverConfig cfg;
  cfg.eps_bar = 5.0;
  cfg.n_cap = 1 << 20;
  for (std::int64_t q : {2, 8, 33}) {
    for (double p : {0.5, 0.71, 0.93}) {
      const std::int64_t n1 = MinNForPrivacy(q, p, cfg, ctx);
      const TightBudget b(q, ctx);
      EXPECT_LE(b(n1, p), cfg.eps_bar);
      if (n1 > 2) { EXPECT_GT(b(n1 - 1, p), cfg.eps_bar); }
    }
  }
}

TEST(NFromConstraintsTest, TakesTheLargerRequirement) {
  // d = 1, delta = 1/2: 23 ln 20 < 2 (q + 1) = 80 at q = 39.
  const PrivacyContext k32(1, 0.5, 32);  // 80 / 8 = 10
  EXPECT_EQ(NFromConstraints(39, 0.5, 7, k32), 10);
  EXPECT_EQ(NFromConstraints(39, 0.5, 12, k32), 12);
  const PrivacyContext k107(1, 0.5, 107);  // ceil(80 / 26.75) = 3
  EXPECT_EQ(NFromConstraints(39, 0.5, 7, k107), 7);
}

TEST(NFromConstraintsTest, AlwaysVarianceFeasible) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> pd(0.5, 0.999);
  for (int i = 0; i < 2000; ++i) {
    const PrivacyContext ctx(1 + static_cast<std::int64_t>(rng() % 100000),
                             std::pow(10.0, -1.0 - static_cast<double>(rng() % 12)),
                             1 + static_cast<std::int64_t>(rng() % 2000));
    const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 5000);
    const double p = pd(rng);
    const std::int64_t n = NFromConstraints(q, p, 2, ctx);
    EXPECT_TRUE(DpVarianceFeasible(q, n, p, ctx));
    if (n > 2) { EXPECT_FALSE(DpVarianceFeasible(q, n - 1, p, ctx)); }
  }
}

TEST(EtaMuTest, ClosedForms) {
  EXPECT_NEAR(MuFromEta(3.0 / 16.0), 4.0, 1e-14);
  EXPECT_NEAR(MuFromEta(0.09), 10.0, 1e-13);
  for (double eta : {1e-3, 1e-5, 1e-9}) EXPECT_NEAR(MuFromEta(eta) * eta, 1.0, 0.01);
  SolverConfig cfg;
  cfg.n_cap = 24;
  EXPECT_EQ(CodeOf([&] { EtaAndMu(cfg, PrivacyContext(10, 1e-6, 1)); }),
            ErrorCode::kErrorBoundUnavailable);
  cfg.n_cap = 25;
  const EtaMu em = EtaAndMu(cfg, PrivacyContext(10, 1e-6, 1));
  EXPECT_DOUBLE_EQ(em.eta, 6.0 / 25.0);
}

TEST(LambdaTest, SafetyFactor) {
  EXPECT_DOUBLE_EQ(LambdaForRho(0.1, 10.0), 0.0099);
  EXPECT_LT(LambdaForRho(0.3, 7.0), 0.3 / 7.0);
}

TEST(ProbabilityGridTest, HalfThenUpperHalf) {
  const std::vector<double> grid = ProbabilityGrid(0.1);
  ASSERT_EQ(grid.size(), 5u);
  EXPECT_EQ(grid[0], 0.5);
  EXPECT_EQ(grid[1], 6 * 0.1);
  EXPECT_EQ(grid[4], 9 * 0.1);
  const std::vector<double> odd = ProbabilityGrid(0.3);
  ASSERT_EQ(odd.size(), 3u);
  EXPECT_EQ(odd[1], 2 * 0.3);
  EXPECT_EQ(odd[2], 3 * 0.3);
}

TEST(LevelBoundTest, MatchesReference) {
  const PrivacyContext ctx(47710, 1e-10, 1000);
  const LevelBoundTerms g = LevelBound(10, 65536.0, ctx);
  const double expected[] = {3.2003899134870401, 0.045632622593818396,
                             0.018455525555257204, 0.27742068472159293,
                             0.031222896473925017};
  const double actual[] = {g.g1, g.g2, g.g3, g.g4, g.g5};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(actual[i], expected[i], 1e-12 * expected[i]);
}

TEST(QBarTest, BisectionTarget) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    auto inst = testing::RandomSmallInstance(rng);
    const double base = EffectiveBase(inst.sys, inst.cfg);
    const std::int64_t bound = DomainBound(base);
    const PrivacyContext ctx = inst.sys.privacy();
    std::int64_t qbar = 0;
    try {
      qbar = QBar(inst.sys, inst.cfg);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kAllInfeasible);
      EXPECT_GT(LevelBound(2, base, ctx).Total(), inst.cfg.eps_bar);
      continue;
    }
    EXPECT_LE(LevelBound(qbar, base, ctx).Total(), inst.cfg.eps_bar);
    if (qbar < bound) { EXPECT_GT(LevelBound(qbar + 1, base, ctx).Total(), inst.cfg.eps_bar); }
  }
}

TEST(SolveTest, SingleFeasibleTuple) {
  // Domain bound 2 leaves q = n = 2; K = 140 admits only p = 1/2 on a 0.1 grid.
  SystemParams sys;
  sys.K = sys.M = 140;
  sys.d = 1;
  sys.delta = 0.5;
  sys.T = sys.W = sys.omega0 = 1.0;
  sys.p_min = 0.01;
  sys.p_max = 3.5;
  sys.gains.assign(140, 1.0);
  SolverConfig cfg;
  cfg.eps_bar = 1e9;
  cfg.lambda_step = 0.1;
  cfg.n_cap = 2;
  const Solution s = Solve(sys, cfg).solution;
  const Solution b = BruteForceSolve(sys, cfg, 1);
  EXPECT_EQ(std::tie(s.q, s.n, s.p), std::make_tuple(std::int64_t{2}, std::int64_t{2}, 0.5));
  EXPECT_EQ(std::tie(b.q, b.n, b.p), std::make_tuple(std::int64_t{2}, std::int64_t{2}, 0.5));
  EXPECT_TRUE(SatisfiesAllConstraints(sys, cfg, s));
}

TEST(SolveTest, FeasibleDeterministicAndNearOracle) {
  std::mt19937_64 rng(41);
  int solved = 0;
  for (int i = 0; i < 12; ++i) {
    auto inst = testing::RandomSmallInstance(rng);
    inst.cfg.rho = 0.1;
    SolveResult r;
    try {
      r = Solve(inst.sys, inst.cfg);
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::kInfeasible || e.code() == ErrorCode::kAllInfeasible);
      continue;
    }
    ++solved;
    std::string why;
    EXPECT_TRUE(SatisfiesAllConstraints(inst.sys, inst.cfg, r.solution, &why)) << why;
    EXPECT_LE(r.solution.epsilon_achieved, inst.cfg.eps_bar);

    SolverConfig threaded = inst.cfg;
    threaded.threads = 3;
    const Solution t = Solve(inst.sys, threaded).solution;
    EXPECT_EQ(t.q, r.solution.q);
    EXPECT_EQ(t.n, r.solution.n);
    EXPECT_EQ(t.p, r.solution.p);
    EXPECT_EQ(t.powers, r.solution.powers);

    const Solution b = BruteForceSolve(inst.sys, inst.cfg, 2);
    const double ratio = r.solution.objective / b.objective;
    EXPECT_GE(ratio, 1.0 - 1e-12);
    EXPECT_LE(ratio, 1.0 + r.stats.mu * r.stats.lambda);

    const double per_point = 1.0 / (2.0 * r.stats.lambda) + 2.0;
    EXPECT_LE(static_cast<double>(r.stats.grid_points),
              static_cast<double>(r.stats.q_max - 1) * per_point);
    EXPECT_LE(r.stats.max_evaluations_per_point,
              2 * CeilLog2(static_cast<std::uint64_t>(inst.cfg.n_cap)) + 2);
  }
  EXPECT_GT(solved, 5);
}

TEST(SolveTest, MirroredProbabilityStaysFeasible) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 20; ++i) {
    auto inst = testing::RandomSmallInstance(rng);
    Solution s;
    try {
      s = Solve(inst.sys, inst.cfg).solution;
    } catch (const Error&) {
      continue;
    }
    Solution mirrored = s;
    mirrored.p = 1.0 - s.p;
    mirrored.objective = Objective(s.q, s.n, mirrored.p);
    EXPECT_NEAR(mirrored.objective, s.objective, 1e-15 * s.objective);
    const PrivacyContext ctx = inst.sys.privacy();
    EXPECT_NEAR(TightBudget(s.q, ctx)(s.n, mirrored.p), TightBudget(s.q, ctx)(s.n, s.p),
                1e-12 * s.epsilon_achieved);
    // The mirrored budget may differ in its last bits; re-check with slack.
    SolverConfig loose = inst.cfg;
    loose.eps_bar *= 1.0 + 1e-12;
    std::string why;
    EXPECT_TRUE(SatisfiesAllConstraints(inst.sys, loose, mirrored, &why)) << why;
  }
}

TEST(SolveTest, RejectsTamperedSolution) {
  std::mt19937_64 rng(47);
  auto inst = testing::RandomSmallInstance(rng);
  Solution s;
  for (;;) {
    try {
      s = Solve(inst.sys, inst.cfg).solution;
      break;
    } catch (const Error&) {
      inst = testing::RandomSmallInstance(rng);
    }
  }
  Solution bad = s;
  bad.objective *= 2.0;
  EXPECT_FALSE(SatisfiesAllConstraints(inst.sys, inst.cfg, bad));
  bad = s;
  bad.powers[0] = inst.sys.p_max * 2.0;
  EXPECT_FALSE(SatisfiesAllConstraints(inst.sys, inst.cfg, bad));
  bad = s;
  bad.n = 1000;
  bad.objective = Objective(bad.q, bad.n, bad.p);
  EXPECT_FALSE(SatisfiesAllConstraints(inst.sys, inst.cfg, bad));
}

TEST(SolveTest, UnreachableBudgetSignals) {
  std::mt19937_64 rng(53);
  auto inst = testing::RandomSmallInstance(rng);
  inst.cfg.eps_bar = 1e-6;
  EXPECT_EQ(CodeOf([&] { Solve(inst.sys, inst.cfg); }), ErrorCode::kPrivacyInfeasible);
  EXPECT_EQ(CodeOf([&] {
              MinNForPrivacy(2, 0.5, inst.cfg, inst.sys.privacy());
            }),
            ErrorCode::kPrivacyInfeasible);
}

TEST(SolveTest, LevelCapBelowTwoIsAllInfeasible) {
  // A huge n_cap keeps the budget reachable in principle, but the channel only
  // carries q + n <= 42, which the level envelope already rules out.
  SystemParams sys = testing::SystemWithBase(4, 20, 1e-4, 42.5, {1.0, 1.0, 1.0, 1.0});
  SolverConfig cfg;
  cfg.n_cap = 1 << 30;
  cfg.lambda_step = 0.01;
  const PrivacyContext ctx = sys.privacy();
  cfg.eps_bar = 0.5 * LevelBound(2, 42.5, ctx).Total();
  ASSERT_LE(TightBudget(2, ctx)(cfg.n_cap, 0.5), cfg.eps_bar);
  EXPECT_EQ(CodeOf([&] { Solve(sys, cfg); }), ErrorCode::kAllInfeasible);
}

TEST(SolveTest, BitCapClampsTheDomain) {
  SystemParams sys = testing::SystemWithBase(4, 2, 0.01, 1000.5, {1.0, 1.0, 1.0, 1.0});
  SolverConfig cfg;
  cfg.bit_cap = 6;
  EXPECT_EQ(EffectiveDomainBound(sys, cfg), 62);
  cfg.bit_cap = 0;
  EXPECT_EQ(EffectiveDomainBound(sys, cfg), 998);
}

}  // namespace
}  // namespace slqbm
