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

#include "slqbm/fsgd.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "slqbm/error.h"
#include "slqbm/numeric.h"

namespace slqbm {
namespace {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    acc += diff * diff;
  }
  return acc;
}

double SquaredNorm(std::span<const double> a) {
  double acc = 0.0;
  for (double x : a) acc += x * x;
  return acc;
}

// Mean of the selected devices' gradients, optionally bounded to [-D, D].
// Also hands back the per-device vectors for privatization.
std::vector<double> MeanGradient(const Task& task, std::span<const double> w,
                                 const std::vector<std::int64_t>& devices,
                                 const std::optional<std::pair<double, Rescale>>& bound,
                                 std::vector<std::vector<double>>* per_device) {
  const auto d = static_cast<std::size_t>(task.dimension());
  std::vector<double> sum(d, 0.0);
  std::vector<double> local(d);
  per_device->clear();
  for (std::int64_t k : devices) {
    task.LocalGradient(k, w, local);
    if (bound) local = RescaleGradient(local, bound->first, bound->second);
    for (std::size_t j = 0; j < d; ++j) sum[j] += local[j];
    per_device->push_back(local);
  }
  const double inv = 1.0 / static_cast<double>(devices.size());
  for (double& x : sum) x *= inv;
  return sum;
}

MonteCarloEstimate Summarize(const std::vector<double>& samples) {
  MonteCarloEstimate est;
  est.trials = static_cast<std::int64_t>(samples.size());
  if (samples.empty()) return est;
  const double n = static_cast<double>(samples.size());
  est.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - est.mean) * (x - est.mean);
    est.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return est;
}

}  // namespace

void SimTrace::WriteCsv(std::ostream& out) const {
  out << "round,loss,grad_norm_sq,bias_sample,bits\n";
  const auto old_precision = out.precision(17);
  for (const SimRecord& r : records) {
    out << r.round << ',' << r.loss << ',' << r.grad_norm_sq << ','
        << r.bias_sample << ',' << r.bits << '\n';
  }
  out.precision(old_precision);
}

std::vector<std::int64_t> SelectDevices(std::int64_t M, std::int64_t K, Rng& rng) {
  if (K < 1 || K > M) throw Error(ErrorCode::kInvalidArgument, "need 1 <= K <= M");
  std::vector<std::int64_t> pool(static_cast<std::size_t>(M));
  std::iota(pool.begin(), pool.end(), 0);
  // Partial Fisher-Yates: the first K slots end up a uniform K-subset.
  for (std::int64_t i = 0; i < K; ++i) {
    std::uniform_int_distribution<std::int64_t> pick(i, M - 1);
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(pick(rng))]);
  }
  pool.resize(static_cast<std::size_t>(K));
  std::sort(pool.begin(), pool.end());
  return pool;
}

SimTrace RunFsgd(const Task& task, const SystemParams& sys,
                 const std::optional<MechanismParams>& mech,
                 const FsgdOptions& options) {
  if (sys.M != task.devices() || sys.d != task.dimension()) {
    throw Error(ErrorCode::kInvalidArgument,
                "system M and d must match the task's devices and dimension");
  }
  if (sys.K < 1 || sys.K > sys.M) throw Error(ErrorCode::kInvalidArgument, "need 1 <= K <= M");
  if (options.rounds < 1 || !(options.gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rounds and gamma must be positive");
  }
  Rng select_rng(DeriveSeed(options.seed, "fsgd-select"));
  Rng mech_rng(DeriveSeed(options.seed, "fsgd-mechanism"));

  std::vector<double> w = task.InitialWeights();
  const std::int64_t per_round_bits =
      mech ? sys.K * sys.d * CeilLog2(static_cast<std::uint64_t>(mech->q() + mech->n()))
           : sys.K * sys.d * 32;
  std::optional<std::pair<double, Rescale>> bound;
  if (mech) bound.emplace(mech->D(), options.rescale);

  SimTrace trace;
  trace.initial_loss = task.Loss(w);
  trace.records.reserve(static_cast<std::size_t>(options.rounds));
  std::vector<std::vector<double>> per_device;
  std::vector<PrivatizedUpdate> updates;
  for (std::int64_t t = 0; t < options.rounds; ++t) {
    SimRecord rec;
    rec.round = t;
    rec.grad_norm_sq = SquaredNorm(task.FullGradient(w));
    const std::vector<std::int64_t> devices = SelectDevices(sys.M, sys.K, select_rng);
    std::vector<double> step = MeanGradient(task, w, devices, bound, &per_device);
    if (mech) {
      updates.clear();
      for (const auto& g : per_device) updates.push_back(Privatize(g, *mech, mech_rng, options.rescale));
      std::vector<double> noisy = Aggregate(updates, sys.K);
      rec.bias_sample = SquaredDistance(step, noisy);
      step = std::move(noisy);
    }
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= options.gamma * step[j];
    rec.loss = task.Loss(w);
    rec.bits = per_round_bits;
    if (!std::isfinite(rec.loss)) {
      throw Error(ErrorCode::kDiverged,
                  "loss became non-finite at round " + std::to_string(t));
    }
    trace.total_bits += rec.bits;
    trace.records.push_back(rec);
  }
  trace.final_loss = trace.records.back().loss;
  return trace;
}

MonteCarloEstimate MeasureBias(const Task& task, std::span<const double> w,
                               const MechanismParams& mech, std::int64_t K,
                               std::int64_t trials, Rng& rng, Rescale rescale) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  const std::optional<std::pair<double, Rescale>> bound{{mech.D(), rescale}};
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(trials));
  std::vector<std::vector<double>> per_device;
  std::vector<PrivatizedUpdate> updates;
  for (std::int64_t i = 0; i < trials; ++i) {
    const auto devices = SelectDevices(task.devices(), K, rng);
    const std::vector<double> clean = MeanGradient(task, w, devices, bound, &per_device);
    updates.clear();
    for (const auto& g : per_device) updates.push_back(Privatize(g, mech, rng, rescale));
    samples.push_back(SquaredDistance(clean, Aggregate(updates, K)));
  }
  return Summarize(samples);
}

MonteCarloEstimate MeasureSamplingVariance(const Task& task,
                                           std::span<const double> w,
                                           std::int64_t K, std::int64_t trials,
                                           Rng& rng) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  std::vector<std::int64_t> everyone(static_cast<std::size_t>(task.devices()));
  std::iota(everyone.begin(), everyone.end(), 0);
  std::vector<std::vector<double>> scratch;
  // Same summation path for the full gradient and the sampled one, so full
  // participation reproduces it bit for bit.
  const std::vector<double> full = MeanGradient(task, w, everyone, std::nullopt, &scratch);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t i = 0; i < trials; ++i) {
    const auto devices = SelectDevices(task.devices(), K, rng);
    samples.push_back(SquaredDistance(MeanGradient(task, w, devices, std::nullopt, &scratch), full));
  }
  return Summarize(samples);
}

}  // namespace slqbm
