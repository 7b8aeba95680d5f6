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

#include "slqbm/cli/commands.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "slqbm/convergence.h"
#include "slqbm/fsgd.h"
#include "slqbm/numeric.h"
#include "slqbm/random.h"
#include "slqbm/solver.h"
#include "slqbm/tasks.h"

namespace slqbm::cli {
namespace {

using nlohmann::json;

constexpr std::int64_t kMaxSimDimension = 200;
constexpr std::int64_t kMaxSimDevices = 200;

std::filesystem::path OutputPath(const RunConfig& config, const std::string& name) {
  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kConfig, "cannot create output directory '" +
                                        config.output_dir + "': " + ec.message());
  }
  return dir / name;
}

void WriteText(const RunConfig& config, const std::string& name, const std::string& text) {
  const auto path = OutputPath(config, name);
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::kConfig, "cannot write '" + path.string() + "'");
}

// Finite doubles as numbers; NaN and infinities as null.
json Number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json SolutionJson(const Solution& sol) {
  json powers = json::array();
  json powers_dbm = json::array();
  for (double p : sol.powers) {
    powers.push_back(p);
    powers_dbm.push_back(WattsToDbm(p));
  }
  return json{{"q", sol.q},
              {"n", sol.n},
              {"p", sol.p},
              {"powers_w", powers},
              {"powers_dbm", powers_dbm},
              {"objective", sol.objective},
              {"epsilon_achieved", sol.epsilon_achieved}};
}

void ApplyAxis(RunConfig* cfg, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kEpsBar:
      cfg->solver.eps_bar = value;
      break;
    case SweepAxis::kPMax:
      cfg->system.p_max = DbmToWatts(value);
      break;
    case SweepAxis::kW: {
      // omega0 follows the bandwidth when it came from a noise density.
      const double psd = cfg->system.omega0 / cfg->system.W;
      cfg->system.W = value * 1e6;
      cfg->system.omega0 = psd * cfg->system.W;
      break;
    }
    case SweepAxis::kT:
      cfg->system.T = value;
      break;
    case SweepAxis::kK: {
      const double rounded = std::round(value);
      if (rounded != value || value < 1.0) {
        throw Error(ErrorCode::kConfig, "K sweep values must be positive integers");
      }
      cfg->system.K = static_cast<std::int64_t>(rounded);
      ResampleGains(cfg);
      break;
    }
  }
}

void RequireAscending(const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorCode::kConfig, "--values must list at least one value");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i - 1] < values[i])) {
      throw Error(ErrorCode::kConfig, "--values must be strictly ascending");
    }
  }
}

std::unique_ptr<Task> MakeTask(const RunConfig& config) {
  const SystemParams& sys = config.system;
  if (sys.d > kMaxSimDimension || sys.M > kMaxSimDevices) {
    throw Error(ErrorCode::kConfig,
                "simulate supports d <= 200 and M <= 200; use a simulation config");
  }
  const std::uint64_t seed = DeriveSeed(config.seed, "task");
  if (config.sim.task == "quadratic") {
    QuadraticBowlTask::Options o;
    o.dimension = sys.d;
    o.devices = sys.M;
    o.seed = seed;
    return std::make_unique<QuadraticBowlTask>(o);
  }
  LogisticRegressionTask::Options o;
  o.dimension = sys.d;
  o.devices = sys.M;
  o.samples_per_device = config.sim.samples_per_device;
  o.feature_scale = config.sim.feature_scale;
  o.l2 = config.sim.l2;
  o.seed = seed;
  return std::make_unique<LogisticRegressionTask>(o);
}

}  // namespace

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidArgument:
      return 2;
    case ErrorCode::kInfeasible:
      return 3;
    case ErrorCode::kAllInfeasible:
      return 4;
    case ErrorCode::kErrorBoundUnavailable:
      return 5;
    case ErrorCode::kPrivacyInfeasible:
      return 6;
    case ErrorCode::kDiverged:
      return 7;
    case ErrorCode::kEmptyDomain:
      return 8;
    default:
      return 1;
  }
}

std::string ExitCodeHelp() {
  return "Exit status:\n"
         "  0  success\n"
         "  1  other error\n"
         "  2  invalid config or usage\n"
         "  3  infeasible: no grid point satisfies every constraint\n"
         "  4  all_infeasible: the level cap leaves no admissible q\n"
         "  5  error_bound_unavailable: eta >= 1/4 while lambda is derived from rho\n"
         "  6  privacy_infeasible: eps_bar unreachable within n_cap\n"
         "  7  diverged: simulated loss became non-finite\n"
         "  8  empty_domain: the channel cannot carry q + n >= 4\n";
}

nlohmann::json CmdSolve(const RunConfig& config, std::ostream& log) {
  const SolveResult result = Solve(config.system, config.solver);
  const Solution& sol = result.solution;
  const SolveStats& st = result.stats;
  json report{{"spec_version", kReportVersion},
              {"command", "solve"},
              {"solution", SolutionJson(sol)},
              {"eta", Number(st.eta)},
              {"mu", Number(st.mu)},
              {"lambda", st.lambda},
              {"mu_lambda", Number(st.mu * st.lambda)},
              {"qbar", st.qbar},
              {"domain_bound", st.domain_bound},
              {"grid_points", st.grid_points},
              {"budget_evaluations", st.budget_evaluations},
              {"max_evaluations_per_point", st.max_evaluations_per_point}};
  WriteText(config, "solve.json", report.dump(2) + "\n");

  log << "q        " << sol.q << "\n"
      << "n        " << sol.n << "\n"
      << "p        " << FormatDouble(sol.p) << "\n"
      << "objective " << FormatDouble(sol.objective) << "\n"
      << "epsilon  " << FormatDouble(sol.epsilon_achieved) << " (bound "
      << FormatDouble(config.solver.eps_bar) << ")\n"
      << "lambda   " << FormatDouble(st.lambda) << "  eta " << FormatDouble(st.eta)
      << "  mu " << FormatDouble(st.mu) << "\n"
      << "qbar     " << st.qbar << " of domain " << st.domain_bound << "\n"
      << "grid     " << st.grid_points << " points, " << st.budget_evaluations
      << " budget evaluations\n";
  return report;
}

SweepAxis ParseSweepAxis(const std::string& name) {
  if (name == "eps_bar") return SweepAxis::kEpsBar;
  if (name == "p_max") return SweepAxis::kPMax;
  if (name == "W") return SweepAxis::kW;
  if (name == "T") return SweepAxis::kT;
  if (name == "K") return SweepAxis::kK;
  throw Error(ErrorCode::kConfig, "--axis must be one of eps_bar, p_max, W, T, K");
}

const char* SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kEpsBar: return "eps_bar";
    case SweepAxis::kPMax: return "p_max";
    case SweepAxis::kW: return "W";
    case SweepAxis::kT: return "T";
    case SweepAxis::kK: return "K";
  }
  return "";
}

std::string CmdSweep(const RunConfig& config, SweepAxis axis,
                     const std::vector<double>& values, std::ostream& log) {
  RequireAscending(values);
  std::ostringstream csv;
  csv << "axis_value,objective,q,n,p,epsilon,b_hi,status\n";
  for (double value : values) {
    RunConfig row = config;
    ApplyAxis(&row, axis, value);
    csv << FormatDouble(value) << ',';
    try {
      const Solution sol = Solve(row.system, row.solver).solution;
      const auto bounds = TheoreticalBounds(row.system.d, row.system.M, row.system.K,
                                            row.sim.D, sol.q, sol.n, sol.p);
      csv << FormatDouble(sol.objective) << ',' << sol.q << ',' << sol.n << ','
          << FormatDouble(sol.p) << ',' << FormatDouble(sol.epsilon_achieved) << ','
          << FormatDouble(bounds.b_hi) << ",ok\n";
      log << SweepAxisName(axis) << '=' << FormatDouble(value) << "  objective "
          << FormatDouble(sol.objective) << "  (q, n, p) = (" << sol.q << ", " << sol.n
          << ", " << FormatDouble(sol.p) << ")\n";
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kConfig || e.code() == ErrorCode::kInvalidArgument) throw;
      csv << "inf,,,,,," << ErrorCodeName(e.code()) << '\n';
      log << SweepAxisName(axis) << '=' << FormatDouble(value) << "  "
          << ErrorCodeName(e.code()) << '\n';
    }
  }
  WriteText(config, "sweep.csv", csv.str());
  return csv.str();
}

std::string CmdCompareEps(const RunConfig& config,
                          const std::vector<double>& eps_bars,
                          const std::vector<std::array<double, 3>>& tuples,
                          std::ostream& log) {
  if (eps_bars.empty() && tuples.empty()) {
    throw Error(ErrorCode::kConfig, "compare-eps needs --values or (q, n, p) tuples");
  }
  const PrivacyContext ctx = config.system.privacy();
  std::ostringstream csv;
  csv << "eps_bar,epsilon_tight,epsilon_baseline,ratio,q,n,p\n";
  auto emit = [&](const std::string& eps_bar, std::int64_t q, std::int64_t n, double p) {
    const MechanismParams mech(q, n, p);
    const double tight = EpsilonTight(mech, ctx);
    const double baseline = EpsilonBaseline(mech, ctx);
    csv << eps_bar << ',' << FormatDouble(tight) << ',' << FormatDouble(baseline) << ','
        << FormatDouble(baseline / tight) << ',' << q << ',' << n << ','
        << FormatDouble(p) << '\n';
    log << "(q, n, p) = (" << q << ", " << n << ", " << FormatDouble(p) << ")  tight "
        << FormatDouble(tight) << "  baseline " << FormatDouble(baseline) << '\n';
  };
  for (const auto& t : tuples) {
    const auto q = static_cast<std::int64_t>(t[0]);
    const auto n = static_cast<std::int64_t>(t[1]);
    if (static_cast<double>(q) != t[0] || static_cast<double>(n) != t[1]) {
      throw Error(ErrorCode::kConfig, "tuple q and n must be integers");
    }
    emit("", q, n, t[2]);
  }
  if (!eps_bars.empty()) RequireAscending(eps_bars);
  for (double eps_bar : eps_bars) {
    RunConfig row = config;
    row.solver.eps_bar = eps_bar;
    const Solution sol = Solve(row.system, row.solver).solution;
    emit(FormatDouble(eps_bar), sol.q, sol.n, sol.p);
  }
  WriteText(config, "compare_eps.csv", csv.str());
  return csv.str();
}

std::string CmdQbar(const RunConfig& config, const std::vector<double>& p_max_dbm,
                    std::ostream& log) {
  RequireAscending(p_max_dbm);
  std::ostringstream csv;
  csv << "p_max_dbm,qbar,log10_qbar,status\n";
  for (double dbm : p_max_dbm) {
    RunConfig row = config;
    row.system.p_max = DbmToWatts(dbm);
    csv << FormatDouble(dbm) << ',';
    try {
      if (row.system.p_min > row.system.p_max) {
        throw Error(ErrorCode::kEmptyDomain, "p_max below p_min");
      }
      const std::int64_t qbar = QBar(row.system, row.solver);
      csv << qbar << ',' << FormatDouble(std::log10(static_cast<double>(qbar))) << ",ok\n";
      log << "p_max " << FormatDouble(dbm) << " dBm  qbar " << qbar << '\n';
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyDomain && e.code() != ErrorCode::kAllInfeasible) throw;
      csv << ",," << ErrorCodeName(e.code()) << '\n';
      log << "p_max " << FormatDouble(dbm) << " dBm  " << ErrorCodeName(e.code()) << '\n';
    }
  }
  WriteText(config, "qbar.csv", csv.str());
  return csv.str();
}

nlohmann::json CmdSimulate(const RunConfig& config, std::ostream& log) {
  const SystemParams& sys = config.system;
  const std::unique_ptr<Task> task = MakeTask(config);
  const Solution sol = Solve(sys, config.solver).solution;
  const MechanismParams mech(sol.q, sol.n, sol.p, config.sim.D);

  ConvergenceParams conv;
  conv.L = task->Smoothness();
  conv.G = config.sim.D;
  // The built-in losses are non-negative, so F(w0) bounds the optimality gap.
  conv.G_f = task->Loss(task->InitialWeights());
  conv.theta = config.sim.theta;
  conv.capital_lambda = config.sim.capital_lambda;
  const TheoreticalBoundsResult bounds = TheoreticalBounds(sys, sol, conv);
  const double sigma_sq = bounds.u_hi_iid + bounds.b_hi;
  conv.gamma = config.sim.gamma > 0.0
                   ? config.sim.gamma
                   : AutoLearningRate(conv, sigma_sq, config.sim.rounds);
  const IterationEstimate iterations = IterationsEstimate(conv, sigma_sq);

  FsgdOptions options;
  options.rounds = config.sim.rounds;
  options.gamma = conv.gamma;
  options.rescale = config.sim.rescale;
  options.seed = DeriveSeed(config.seed, "fsgd");
  const SimTrace privatized = RunFsgd(*task, sys, mech, options);
  const SimTrace baseline = RunFsgd(*task, sys, std::nullopt, options);

  Rng bias_rng(DeriveSeed(config.seed, "bias"));
  const std::vector<double> w0 = task->InitialWeights();
  const MonteCarloEstimate bias =
      MeasureBias(*task, w0, mech, sys.K, config.sim.bias_trials, bias_rng, config.sim.rescale);
  const bool sandwich = bias.mean >= bounds.b_lo - 4.0 * bias.std_error &&
                        bias.mean <= bounds.b_hi + 4.0 * bias.std_error;

  const std::int64_t comm = CommCost(config.sim.rounds, sys.K, sys.d, sol.q, sol.n);
  const std::int64_t comm_float = FloatCommCost(config.sim.rounds, sys.K, sys.d);
  const double gap = (privatized.final_loss - baseline.final_loss) / baseline.final_loss;

  {
    std::ostringstream csv;
    privatized.WriteCsv(csv);
    WriteText(config, "trace.csv", csv.str());
  }
  {
    std::ostringstream csv;
    baseline.WriteCsv(csv);
    WriteText(config, "trace_baseline.csv", csv.str());
  }

  json report{{"spec_version", kReportVersion},
              {"command", "simulate"},
              {"task", config.sim.task},
              {"rounds", config.sim.rounds},
              {"gamma", conv.gamma},
              {"solution", SolutionJson(sol)},
              {"comm_cost_bits", comm},
              {"float_baseline_bits", comm_float},
              {"trace_bits", privatized.total_bits},
              {"bounds",
               {{"u_hi", bounds.u_hi},
                {"u_hi_iid", bounds.u_hi_iid},
                {"b_lo", bounds.b_lo},
                {"b_hi", bounds.b_hi}}},
              {"bias",
               {{"mean", bias.mean},
                {"stderr", bias.std_error},
                {"trials", bias.trials},
                {"within_bounds", sandwich}}},
              {"iterations", {{"exact", iterations.exact}, {"order", iterations.order}}},
              {"initial_loss", privatized.initial_loss},
              {"final_loss", privatized.final_loss},
              {"final_loss_baseline", baseline.final_loss},
              {"relative_loss_gap", gap}};
  WriteText(config, "simulate.json", report.dump(2) + "\n");

  log << "(q, n, p) = (" << sol.q << ", " << sol.n << ", " << FormatDouble(sol.p)
      << ")  gamma " << FormatDouble(conv.gamma) << "\n"
      << "final loss " << FormatDouble(privatized.final_loss) << " vs baseline "
      << FormatDouble(baseline.final_loss) << " (gap " << FormatDouble(gap) << ")\n"
      << "bias " << FormatDouble(bias.mean) << " +- " << FormatDouble(bias.std_error)
      << " in [" << FormatDouble(bounds.b_lo) << ", " << FormatDouble(bounds.b_hi)
      << "]: " << (sandwich ? "pass" : "FAIL") << "\n"
      << "uplink " << comm << " bits vs " << comm_float << " float32 bits\n";
  return report;
}

}  // namespace slqbm::cli
