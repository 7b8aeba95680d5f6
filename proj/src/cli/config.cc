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

#include "slqbm/cli/config.h"

#include <fstream>
#include <sstream>

#include "slqbm/error.h"
#include "slqbm/numeric.h"
#include "slqbm/random.h"

namespace slqbm::cli {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& what) { throw Error(ErrorCode::kConfig, what); }

// Copies 'patch' over 'base', refusing keys the preset does not know.
void Overlay(json& base, const json& patch, const std::string& path) {
  if (!patch.is_object()) Fail(path + " must be an object");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string where = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) Fail("unknown key '" + where + "'");
    json& slot = base[it.key()];
    if (slot.is_object()) {
      Overlay(slot, it.value(), where);
    } else {
      slot = it.value();
    }
  }
}

template <typename T>
T Get(const json& section, const char* key, const std::string& path) {
  try {
    return section.at(key).get<T>();
  } catch (const json::exception&) {
    Fail("'" + path + "." + key + "' has the wrong type");
  }
}

}  // namespace

nlohmann::json DefaultConfigJson() {
  return json{
      {"seed", 1},
      {"system",
       {{"K", 1000},
        {"M", 1000000},
        {"d", 47710},
        {"delta", 1e-10},
        {"T_s", 1e-4},
        {"W_mhz", 900.0},
        {"noise_psd_dbm_per_hz", -174.0},
        {"omega0_w", nullptr},
        {"p_min_dbm", 1.0},
        {"p_max_dbm", 20.0},
        {"gain_semantics", "amplitude"},
        {"gains", nullptr}}},
      {"channel", {{"g0_db", -40.0}, {"d0_m", 1.0}, {"d_min_m", 2.0}, {"d_max_m", 200.0}}},
      {"solver",
       {{"eps_bar", 10.0},
        {"rho", 0.1},
        {"lambda_step", 1e-3},
        {"n_cap", 65534},
        {"bit_cap", 16},
        {"threads", 1}}},
      {"sim",
       {{"task", "logistic"},
        {"rounds", 500},
        {"samples_per_device", 20},
        {"feature_scale", 1.0},
        {"l2", 1e-3},
        {"D", 1.0},
        {"gamma", nullptr},
        {"theta", 0.1},
        {"capital_lambda", 0.1},
        {"bias_trials", 200},
        {"rescale", "clip"}}},
      {"output", {{"directory", "out"}}},
  };
}

std::uint64_t ChannelSeed(std::uint64_t seed) { return DeriveSeed(seed, "channel"); }

void ResampleGains(RunConfig* config) {
  const auto k = static_cast<std::size_t>(config->system.K);
  if (!config->file_gains.empty()) {
    if (config->file_gains.size() < k) {
      Fail("system.gains lists fewer entries than K");
    }
    config->system.gains.assign(config->file_gains.begin(),
                                config->file_gains.begin() + static_cast<std::ptrdiff_t>(k));
    return;
  }
  ChannelSampler::Options options = config->channel;
  options.seed = ChannelSeed(config->seed);
  ChannelSampler sampler(options);
  config->system.gains = sampler.SampleGains(config->system.K);
}

RunConfig ParseRunConfig(const nlohmann::json& doc) {
  json merged = DefaultConfigJson();
  Overlay(merged, doc, "");

  RunConfig cfg;
  cfg.seed = Get<std::uint64_t>(merged, "seed", "");

  const json& sys = merged["system"];
  SystemParams& s = cfg.system;
  s.K = Get<std::int64_t>(sys, "K", "system");
  s.M = Get<std::int64_t>(sys, "M", "system");
  s.d = Get<std::int64_t>(sys, "d", "system");
  s.delta = Get<double>(sys, "delta", "system");
  s.T = Get<double>(sys, "T_s", "system");
  s.W = Get<double>(sys, "W_mhz", "system") * 1e6;
  if (sys["omega0_w"].is_null()) {
    s.omega0 = DbmToWatts(Get<double>(sys, "noise_psd_dbm_per_hz", "system")) * s.W;
  } else {
    s.omega0 = Get<double>(sys, "omega0_w", "system");
  }
  s.p_min = DbmToWatts(Get<double>(sys, "p_min_dbm", "system"));
  s.p_max = DbmToWatts(Get<double>(sys, "p_max_dbm", "system"));
  const auto semantics = Get<std::string>(sys, "gain_semantics", "system");
  if (semantics == "amplitude") {
    s.gain_semantics = GainSemantics::kAmplitude;
  } else if (semantics == "power") {
    s.gain_semantics = GainSemantics::kPower;
  } else {
    Fail("system.gain_semantics must be 'amplitude' or 'power'");
  }
  if (!sys["gains"].is_null()) {
    cfg.file_gains = Get<std::vector<double>>(sys, "gains", "system");
    if (cfg.file_gains.empty()) Fail("system.gains must not be empty");
  }

  const json& ch = merged["channel"];
  cfg.channel.g0 = DbToLinear(Get<double>(ch, "g0_db", "channel"));
  cfg.channel.d0 = Get<double>(ch, "d0_m", "channel");
  cfg.channel.d_min = Get<double>(ch, "d_min_m", "channel");
  cfg.channel.d_max = Get<double>(ch, "d_max_m", "channel");

  const json& sol = merged["solver"];
  cfg.solver.eps_bar = Get<double>(sol, "eps_bar", "solver");
  cfg.solver.rho = Get<double>(sol, "rho", "solver");
  cfg.solver.lambda_step =
      sol["lambda_step"].is_null() ? 0.0 : Get<double>(sol, "lambda_step", "solver");
  cfg.solver.n_cap = Get<std::int64_t>(sol, "n_cap", "solver");
  cfg.solver.bit_cap = Get<int>(sol, "bit_cap", "solver");
  cfg.solver.threads = Get<int>(sol, "threads", "solver");

  const json& sim = merged["sim"];
  SimConfig& m = cfg.sim;
  m.task = Get<std::string>(sim, "task", "sim");
  if (m.task != "logistic" && m.task != "quadratic") {
    Fail("sim.task must be 'logistic' or 'quadratic'");
  }
  m.rounds = Get<std::int64_t>(sim, "rounds", "sim");
  m.samples_per_device = Get<std::int64_t>(sim, "samples_per_device", "sim");
  m.feature_scale = Get<double>(sim, "feature_scale", "sim");
  m.l2 = Get<double>(sim, "l2", "sim");
  m.D = Get<double>(sim, "D", "sim");
  m.gamma = sim["gamma"].is_null() ? 0.0 : Get<double>(sim, "gamma", "sim");
  m.theta = Get<double>(sim, "theta", "sim");
  m.capital_lambda = Get<double>(sim, "capital_lambda", "sim");
  m.bias_trials = Get<std::int64_t>(sim, "bias_trials", "sim");
  const auto rescale = Get<std::string>(sim, "rescale", "sim");
  if (rescale == "clip") {
    m.rescale = Rescale::kClip;
  } else if (rescale == "scale") {
    m.rescale = Rescale::kScale;
  } else {
    Fail("sim.rescale must be 'clip' or 'scale'");
  }
  if (m.rounds < 1 || m.samples_per_device < 1 || m.bias_trials < 1 ||
      !(m.D > 0.0) || m.gamma < 0.0 || !(m.feature_scale > 0.0) || m.l2 < 0.0) {
    Fail("sim settings out of range");
  }

  cfg.output_dir = Get<std::string>(merged["output"], "directory", "output");

  try {
    ResampleGains(&cfg);
    cfg.system.Validate();
    cfg.solver.Validate();
    if (!(cfg.channel.d_min > 0.0 && cfg.channel.d_min <= cfg.channel.d_max)) {
      Fail("channel distances need 0 < d_min <= d_max");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    Fail(e.what());
  }
  return cfg;
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    Fail("cannot parse '" + path + "': " + e.what());
  }
  return ParseRunConfig(doc);
}

}  // namespace slqbm::cli
