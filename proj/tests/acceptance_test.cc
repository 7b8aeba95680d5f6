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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "slqbm/convergence.h"
#include "slqbm/error.h"
#include "slqbm/fsgd.h"
#include "slqbm/numeric.h"
#include "slqbm/privacy.h"
#include "slqbm/quantizer.h"
#include "slqbm/random.h"
#include "slqbm/solver.h"
#include "slqbm/tasks.h"
#include "slqbm/wireless.h"
#include "test_systems.h"

namespace slqbm {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double LogUniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

std::int64_t LogUniformInt(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const double x = LogUniform(rng, static_cast<double>(lo), static_cast<double>(hi) + 1.0);
  return std::clamp(static_cast<std::int64_t>(std::floor(x)), lo, hi);
}

std::string Fmt(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

// 1. Tight estimate never exceeds the baseline on variance-feasible tuples.
Outcome Tightness() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> pd(0.01, 0.99);
  const int wanted = 2000;
  int accepted = 0, violations = 0;
  double worst = 0.0;
  std::string worst_case;
  while (accepted < wanted) {
    const std::int64_t d = LogUniformInt(rng, 1, 100000);
    const double delta = LogUniform(rng, 1e-12, 1e-2);
    const std::int64_t K = LogUniformInt(rng, 1, 10000);
    const std::int64_t q = LogUniformInt(rng, 2, 1024);
    const std::int64_t n = LogUniformInt(rng, 2, 1 << 20);
    const double p = pd(rng);
    const PrivacyContext ctx(d, delta, K);
    if (!DpVarianceFeasible(q, n, p, ctx)) continue;
    ++accepted;
    const MechanismParams mech(q, n, p);
    const double tight = EpsilonTight(mech, ctx);
    const double baseline = EpsilonBaseline(mech, ctx);
    if (tight > baseline * (1.0 + 1e-9)) {
      ++violations;
      const double excess = tight / baseline;
      if (excess > worst) {
        worst = excess;
        worst_case = Fmt("q=%lld n=%lld p=%.4f d=%lld delta=%.2e K=%lld tight=%.6g baseline=%.6g",
                         static_cast<long long>(q), static_cast<long long>(n), p,
                         static_cast<long long>(d), delta, static_cast<long long>(K), tight,
                         baseline);
      }
    }
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = Fmt("%d/%d tuples with tight > baseline", violations, accepted);
  if (violations > 0) o.detail += "; worst ratio " + Fmt("%.4f", worst) + " at " + worst_case;
  return o;
}

// 2. Symmetry in p, strict decrease in n, strict increase in q.
Outcome MonotonicityAndSymmetry() {
  std::mt19937_64 rng(20260102);
  std::uniform_real_distribution<double> pd(0.01, 0.99);
  int checks = 0, failures = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    ++failures;
    if (first.empty()) first = what;
  };
  for (int t = 0; t < 40; ++t) {
    const PrivacyContext ctx(LogUniformInt(rng, 1, 100000), LogUniform(rng, 1e-12, 1e-2),
                             LogUniformInt(rng, 1, 10000));
    const double p = pd(rng);
    const std::int64_t q0 = LogUniformInt(rng, 2, 1024);
    const std::int64_t n0 = LogUniformInt(rng, 2, 1 << 20);
    // Symmetry over a q x n patch.
    for (std::int64_t q = q0; q < q0 + 4; ++q) {
      const TightBudget b(q, ctx);
      for (std::int64_t n = n0; n < n0 + 4; ++n) {
        const double a = b(n, p), m = b(n, 1.0 - p);
        ++checks;
        if (std::abs(a - m) > 1e-12 * a) fail(Fmt("symmetry q=%lld n=%lld p=%.4f", (long long)q, (long long)n, p));
      }
    }
    const TightBudget bq(q0, ctx);
    for (std::int64_t n = 2; n < 256; ++n) {
      ++checks;
      if (!(bq(n + 1, p) < bq(n, p))) fail(Fmt("n step %lld at q=%lld p=%.4f", (long long)n, (long long)q0, p));
    }
    for (std::int64_t q = 2; q < 64; ++q) {
      ++checks;
      if (!(TightBudget(q + 1, ctx)(n0, p) > TightBudget(q, ctx)(n0, p))) {
        fail(Fmt("q step %lld at n=%lld p=%.4f", (long long)q, (long long)n0, p));
      }
    }
  }
  Outcome o;
  o.pass = failures == 0;
  o.detail = Fmt("%d/%d checks failed", failures, checks);
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

// 3. Doubling-plus-bisection agrees with a linear scan over n in {2..4096}.
Outcome BisectionVsScan() {
  std::mt19937_64 rng(20260103);
  std::uniform_real_distribution<double> pd(0.01, 0.99), nudge(1.0, 1.001);
  const std::int64_t n_cap = 4096;
  int mismatches = 0, infeasible_cases = 0;
  for (int t = 0; t < 200; ++t) {
    const PrivacyContext ctx(LogUniformInt(rng, 1, 100000), LogUniform(rng, 1e-12, 1e-2),
                             LogUniformInt(rng, 1, 10000));
    const std::int64_t q = LogUniformInt(rng, 2, 256);
    const double p = pd(rng);
    const TightBudget b(q, ctx);
    // eps_bar at (or a hair above) the budget of a random target; every
    // tenth case is pushed out of reach.
    const std::int64_t target = LogUniformInt(rng, 2, n_cap);
    double eps_bar = b(target, p);
    if (t % 3 == 1) eps_bar *= nudge(rng);
    if (t % 10 == 9) eps_bar = 0.5 * b(n_cap, p);
    std::optional<std::int64_t> scan;
    for (std::int64_t n = 2; n <= n_cap; ++n) {
      if (b(n, p) <= eps_bar) {
        scan = n;
        break;
      }
    }
    std::optional<std::int64_t> search;
    try {
      search = MinimalTrials([&](std::int64_t n) { return b(n, p); }, eps_bar, n_cap);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPrivacyInfeasible) throw;
    }
    if (!scan) ++infeasible_cases;
    if (scan != search) ++mismatches;
  }
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = Fmt("%d/200 mismatches (%d out-of-reach cases)", mismatches, infeasible_cases);
  return o;
}

// 4. Grid search is within 1 + mu lambda (and 1 + rho) of the exhaustive scan.
Outcome RelativeError() {
  std::mt19937_64 rng(20260104);
  int systems = 0, cases = 0, mu_fail = 0, rho_fail = 0, skipped = 0;
  double worst = 1.0;
  while (systems < 50) {
    testing::SmallInstance inst = testing::RandomSmallInstance(rng);
    // Keep systems the exhaustive scan can solve at the loosest pitch.
    bool usable = true;
    for (double rho : {0.05, 0.1, 0.3}) {
      inst.cfg.rho = rho;
      Solution brute;
      try {
        brute = BruteForceSolve(inst.sys, inst.cfg, 2);
      } catch (const Error&) {
        usable = false;
        break;
      }
      double ratio = std::numeric_limits<double>::infinity();
      SolveStats stats;
      try {
        const SolveResult r = Solve(inst.sys, inst.cfg);
        stats = r.stats;
        ratio = r.solution.objective / brute.objective;
      } catch (const Error&) {
        const EtaMu em = EtaAndMu(inst.cfg, inst.sys.privacy());
        stats.mu = em.mu;
        stats.lambda = LambdaForRho(rho, em.mu);
      }
      ++cases;
      worst = std::max(worst, ratio);
      if (!(ratio <= 1.0 + stats.mu * stats.lambda)) ++mu_fail;
      if (!(ratio <= 1.0 + rho)) ++rho_fail;
    }
    if (usable) {
      ++systems;
    } else {
      ++skipped;
    }
  }
  Outcome o;
  o.pass = mu_fail == 0 && rho_fail == 0;
  o.detail = Fmt("%d systems x 3 rho = %d cases; over 1+mu*lambda: %d, over 1+rho: %d; "
                 "worst ratio %.6f (%d infeasible systems resampled)",
                 systems, cases, mu_fail, rho_fail, worst, skipped);
  return o;
}

// Large-scale preset: K = 1000, M = 1e6, d = 47710, delta = 1e-10, 900 MHz,
// powers in [1, 20] dBm, noise -174 dBm/Hz, T = 0.1 ms, 16-bit cap.
SystemParams Preset(double p_max_dbm = 20.0, double W = 9e8, double T = 1e-4) {
  SystemParams sys;
  sys.K = 1000;
  sys.M = 1000000;
  sys.d = 47710;
  sys.delta = 1e-10;
  sys.T = T;
  sys.W = W;
  sys.omega0 = DbmToWatts(-174.0) * W;
  sys.p_min = DbmToWatts(1.0);
  sys.p_max = DbmToWatts(p_max_dbm);
  ChannelSampler sampler(ChannelSampler::Options{.seed = DeriveSeed(1, "channel")});
  sys.gains = sampler.SampleGains(sys.K);
  return sys;
}

SolverConfig PresetSolver(double eps_bar = 10.0) {
  SolverConfig cfg;
  cfg.eps_bar = eps_bar;
  cfg.lambda_step = 1e-3;
  cfg.n_cap = 65534;
  cfg.bit_cap = 16;
  return cfg;
}

double ObjectiveOrInf(const SystemParams& sys, const SolverConfig& cfg) {
  try {
    return Solve(sys, cfg).solution.objective;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) throw;
    return std::numeric_limits<double>::infinity();
  }
}

// 5. Objective never rises along ascending eps_bar, p_max, W and T sweeps.
Outcome MonotoneSweeps() {
  std::vector<std::pair<std::string, std::vector<double>>> sweeps;
  std::vector<double> eps, pmax, band, time;
  for (int e = 1; e <= 10; ++e) eps.push_back(ObjectiveOrInf(Preset(), PresetSolver(e)));
  for (double dbm = 1.0; dbm <= 20.0; dbm += 1.0) {
    pmax.push_back(ObjectiveOrInf(Preset(dbm), PresetSolver()));
  }
  for (double mhz = 300.0; mhz <= 1500.0; mhz += 100.0) {
    band.push_back(ObjectiveOrInf(Preset(20.0, mhz * 1e6), PresetSolver()));
  }
  for (double t = 5e-5; t <= 2e-4 + 1e-12; t += 1e-5) {
    time.push_back(ObjectiveOrInf(Preset(20.0, 9e8, t), PresetSolver()));
  }
  sweeps = {{"eps_bar", eps}, {"p_max", pmax}, {"W", band}, {"T", time}};
  int increases = 0, finite = 0, rows = 0;
  std::string where;
  for (const auto& [name, values] : sweeps) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      ++rows;
      finite += std::isfinite(values[i]);
      if (i > 0 && values[i] > values[i - 1] * (1.0 + 1e-12)) {
        ++increases;
        where += " " + name + "[" + std::to_string(i) + "]";
      }
    }
  }
  Outcome o;
  o.pass = increases == 0 && finite > rows / 2;
  o.detail = Fmt("%d rising rows over %d rows (%d feasible)", increases, rows, finite) + where;
  return o;
}

// 6. Quantizer and full mechanism are unbiased within 5 standard errors.
Outcome Unbiasedness() {
  std::mt19937_64 pick(20260106);
  Rng rng(DeriveSeed(20260106, "draws"));
  std::uniform_real_distribution<double> unit(-1.0, 1.0), pd(0.05, 0.95);
  const int coords = 1000, draws = 10000;
  int q_fail = 0, m_fail = 0;
  for (int c = 0; c < coords; ++c) {
    const double D = LogUniform(pick, 0.01, 100.0);
    const std::int64_t q = LogUniformInt(pick, 2, 4096);
    const std::int64_t n = LogUniformInt(pick, 2, 2000);
    const MechanismParams mech(q, n, pd(pick), D);
    const double g = D * unit(pick);
    double sum_q = 0.0, sum_m = 0.0;
    const std::vector<double> grad = {g};
    for (int i = 0; i < draws; ++i) {
      sum_q += LevelValue(QuantizeCoord(g, mech, rng), mech);
      sum_m += Privatize(grad, mech, rng).Dequantize(0);
    }
    const double se_q = std::sqrt(mech.s() * mech.s() / 4.0 / draws);
    const double se_m = mech.s() * std::sqrt((mech.Variance() + 0.25) / draws);
    if (std::abs(sum_q / draws - g) > 5.0 * se_q) ++q_fail;
    if (std::abs(sum_m / draws - g) > 5.0 * se_m) ++m_fail;
  }
  Outcome o;
  o.pass = q_fail == 0 && m_fail == 0;
  o.detail = Fmt("quantizer %d/%d, mechanism %d/%d outside 5 SE", q_fail, coords, m_fail, coords);
  return o;
}

// 7. Measured bias sits inside the closed-form envelope.
Outcome BiasSandwich() {
  const std::int64_t d = 10, M = 50, K = 5;
  const double G = 2.0;
  QuadraticBowlTask task(QuadraticBowlTask::Options{.dimension = d, .devices = M, .seed = 7});
  const std::vector<double> w(static_cast<std::size_t>(d), 0.0);
  Rng rng(DeriveSeed(20260107, "bias"));
  const double ps[] = {0.5, 0.7, 0.3, 0.9, 0.6};
  const std::int64_t qs[] = {3, 9, 17, 65, 257};
  int in_sandwich = 0, in_scaled = 0;
  std::string detail;
  for (int i = 0; i < 10; ++i) {
    const double v_target = std::pow(10.0, 1.0 + 3.0 * i / 9.0);  // 10 .. 1e4
    const double p = ps[i % 5];
    const auto n = static_cast<std::int64_t>(std::ceil(v_target / (p * (1.0 - p))));
    const std::int64_t q = qs[i % 5];
    const MechanismParams mech(q, n, p, G);
    const MonteCarloEstimate est = MeasureBias(task, w, mech, K, 3000, rng);
    const auto b = TheoreticalBounds(d, M, K, G, q, n, p);
    const double v = mech.Variance();
    const bool sandwich = est.mean >= b.b_lo - 4.0 * est.std_error &&
                          est.mean <= b.b_hi + 4.0 * est.std_error;
    const double scaled = est.mean * static_cast<double>(K) * static_cast<double>((q - 1) * (q - 1));
    const double dg2 = 4.0 * static_cast<double>(d) * G * G;
    const bool within = scaled >= dg2 * v * 0.9 && scaled <= dg2 * (1.0 + v) * 1.1;
    in_sandwich += sandwich;
    in_scaled += within;
    if (!sandwich || !within) detail += Fmt(" [v=%.0f q=%lld miss]", v, (long long)q);
  }
  Outcome o;
  o.pass = in_sandwich == 10 && in_scaled == 10;
  o.detail = Fmt("%d/10 inside [B_lo-4SE, B_hi+4SE], %d/10 inside scaled band", in_sandwich,
                 in_scaled) + detail;
  return o;
}

// Desk-scale federated setting: d = 100, M = 100, K = 20, 16-bit cap.
struct DeskSetup {
  SystemParams sys;
  SolverConfig cfg;
  LogisticRegressionTask::Options task;
  double D = 0.0;
  double gamma = 0.0;
};

DeskSetup Desk() {
  DeskSetup s;
  s.sys = testing::SystemWithBase(20, 100, 1e-5, 65536.5, std::vector<double>(20, 1.0));
  s.sys.M = 100;
  s.cfg.eps_bar = 30.0;
  s.cfg.lambda_step = 0.01;
  s.cfg.n_cap = 65534;
  s.cfg.bit_cap = 16;
  s.task.dimension = 100;
  s.task.devices = 100;
  s.task.samples_per_device = 20;
  s.task.feature_scale = 1.0;
  s.task.l2 = 1e-3;
  // Clip tight enough that the added noise stays near the gradient scale.
  s.D = 0.3;
  s.gamma = 0.5;
  return s;
}

// 8. Optimized tuple tracks the noiseless run and beats a coarser tuple.
Outcome Convergence() {
  const DeskSetup s = Desk();
  const Solution best = Solve(s.sys, s.cfg).solution;
  // Halving q - 1 at the same (n, p) keeps every constraint and at least
  // quadruples the objective.
  std::int64_t q_bad = (best.q - 1) / 2 + 1;
  while (q_bad > 2 && Objective(q_bad, best.n, best.p) < 4.0 * best.objective) --q_bad;
  Solution bad = best;
  bad.q = q_bad;
  bad.objective = Objective(q_bad, best.n, best.p);
  bad.powers.clear();
  for (std::size_t k = 0; k < s.sys.gains.size(); ++k) {
    bad.powers.push_back(ComputeRequiredPower(q_bad, best.n, s.sys.LinkGain(k), s.sys).power);
  }
  std::string why;
  const bool bad_ok = bad.objective >= 4.0 * best.objective &&
                      SatisfiesAllConstraints(s.sys, s.cfg, bad, &why);

  int close = 0, beats = 0;
  double worst_gap = 0.0;
  std::string losses;
  for (std::uint64_t seed : {1, 2, 3}) {
    LogisticRegressionTask::Options topt = s.task;
    topt.seed = DeriveSeed(seed, "task");
    LogisticRegressionTask task(topt);
    FsgdOptions fo;
    fo.rounds = 500;
    fo.gamma = s.gamma;
    fo.seed = DeriveSeed(seed, "fsgd");
    const double plain = RunFsgd(task, s.sys, std::nullopt, fo).final_loss;
    const double good = RunFsgd(task, s.sys, MechanismParams(best.q, best.n, best.p, s.D), fo).final_loss;
    const double coarse = RunFsgd(task, s.sys, MechanismParams(bad.q, bad.n, bad.p, s.D), fo).final_loss;
    const double gap = std::abs(good - plain) / plain;
    worst_gap = std::max(worst_gap, gap);
    close += gap <= 0.05;
    beats += good < coarse;
    losses += Fmt(" [%.4f/%.4f/%.4f]", plain, good, coarse);
  }
  Outcome o;
  o.pass = bad_ok && close == 3 && beats >= 2;
  o.detail = Fmt("tuple (%lld,%lld,%.2f) vs (%lld,..) obj x%.1f; within 5%%: %d/3 (worst %.2f%%); "
                 "beats coarse: %d/3; loss plain/opt/coarse:",
                 (long long)best.q, (long long)best.n, best.p, (long long)bad.q,
                 bad.objective / best.objective, close, 100.0 * worst_gap, beats) + losses;
  if (!bad_ok) o.detail += " coarse tuple infeasible: " + why;
  return o;
}

// 9. Level cap hits its bisection target, climbs with power, and stays well
// below 2^16 at the large-scale preset.
Outcome LevelCap() {
  std::mt19937_64 rng(20260109);
  int target_fail = 0, tested = 0;
  for (int t = 0; t < 100; ++t) {
    const std::int64_t d = LogUniformInt(rng, 1, 100000);
    const double delta = LogUniform(rng, 1e-12, 1e-2);
    const double base = LogUniform(rng, 100.0, 1e7);
    SystemParams sys = testing::SystemWithBase(LogUniformInt(rng, 1, 1000), d, delta, base,
                                               {1.0});
    sys.gains.assign(static_cast<std::size_t>(sys.K), 1.0);
    SolverConfig cfg;
    const PrivacyContext ctx = sys.privacy();
    // eps_bar between g(2) and g at mid-domain keeps q-bar interior.
    const double eff = EffectiveBase(sys, cfg);
    const std::int64_t bound = DomainBound(eff);
    const double g2 = LevelBound(2, eff, ctx).Total();
    const double gmid = LevelBound(std::max<std::int64_t>(2, bound / 2), eff, ctx).Total();
    cfg.eps_bar = g2 + (gmid - g2) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (t % 10 == 0) cfg.eps_bar = 2.0 * LevelBound(bound, eff, ctx).Total();
    const std::int64_t qbar = QBar(sys, cfg);
    ++tested;
    const bool ok = LevelBound(qbar, eff, ctx).Total() <= cfg.eps_bar &&
                    (qbar == bound || LevelBound(qbar + 1, eff, ctx).Total() > cfg.eps_bar);
    target_fail += !ok;
  }
  int drops = 0;
  std::int64_t last = 0;
  for (double dbm = 1.0; dbm <= 30.0; dbm += 1.0) {
    // Below about 15 dBm the preset has no admissible q; count that as 1.
    std::int64_t qbar = 1;
    try {
      qbar = QBar(Preset(dbm), PresetSolver());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kAllInfeasible && e.code() != ErrorCode::kEmptyDomain) throw;
    }
    drops += qbar < last;
    last = qbar;
  }
  const std::int64_t preset_qbar = QBar(Preset(), PresetSolver());
  const double factor = 65536.0 / static_cast<double>(preset_qbar);
  Outcome o;
  o.pass = target_fail == 0 && drops == 0 && factor >= 10.0;
  o.detail = Fmt("target misses %d/%d; decreases along p_max sweep %d; preset qbar %lld "
                 "(2^16 / qbar = %.0f)",
                 target_fail, tested, drops, (long long)preset_qbar, factor);
  return o;
}

// 10. Trace bit totals follow rounds K d ceil(log2(q + n)) exactly.
Outcome CommAccounting() {
  const DeskSetup s = Desk();
  const Solution best = Solve(s.sys, s.cfg).solution;
  LogisticRegressionTask::Options topt = s.task;
  topt.seed = 5;
  LogisticRegressionTask task(topt);
  FsgdOptions fo;
  fo.rounds = 50;
  fo.gamma = s.gamma;
  const SimTrace trace = RunFsgd(task, s.sys, MechanismParams(best.q, best.n, best.p, s.D), fo);
  const std::int64_t expected = CommCost(50, s.sys.K, s.sys.d, best.q, best.n);
  bool per_round = true;
  for (const SimRecord& r : trace.records) per_round = per_round && r.bits == expected / 50;
  const int bits = CeilLog2(static_cast<std::uint64_t>(best.q + best.n));
  const Solution preset = Solve(Preset(), PresetSolver()).solution;
  const int preset_bits = CeilLog2(static_cast<std::uint64_t>(preset.q + preset.n));
  const bool cheaper = (bits >= 32 || expected < FloatCommCost(50, s.sys.K, s.sys.d)) &&
                       (preset_bits >= 32 ||
                        CommCost(1, 1000, 47710, preset.q, preset.n) < FloatCommCost(1, 1000, 47710));
  Outcome o;
  o.pass = trace.total_bits == expected && per_round && cheaper;
  o.detail = Fmt("trace %lld bits vs formula %lld; %d vs 32 bits per element "
                 "(preset %d bits)",
                 (long long)trace.total_bits, (long long)expected, bits, preset_bits);
  return o;
}

}  // namespace
}  // namespace slqbm

int main() {
  using slqbm::Outcome;
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "tightness", 10, slqbm::Tightness},
      {2, "monotonicity-and-symmetry", 10, slqbm::MonotonicityAndSymmetry},
      {3, "bisection-equals-scan", 30, slqbm::BisectionVsScan},
      {4, "relative-error-guarantee", 300, slqbm::RelativeError},
      {5, "monotone-sweeps", 120, slqbm::MonotoneSweeps},
      {6, "unbiasedness", 60, slqbm::Unbiasedness},
      {7, "bias-sandwich", 300, slqbm::BiasSandwich},
      {8, "convergence", 300, slqbm::Convergence},
      {9, "level-cap", 60, slqbm::LevelCap},
      {10, "communication-accounting", 10, slqbm::CommAccounting},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = slqbm::Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(slqbm::Clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    failed += !pass;
    std::printf("[%s] criterion %d %s (%.1fs of %.0fs): %s%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name, secs, c.budget_s, out.detail.c_str(),
                in_time ? "" : " [over time budget]");
    std::fflush(stdout);
  }
  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
