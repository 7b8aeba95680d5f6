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

#include "slqbm/tasks.h"

#include <algorithm>
#include <cmath>

#include "slqbm/error.h"
#include "slqbm/random.h"

namespace slqbm {
namespace {

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Dot(const double* a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) acc += a[j] * b[j];
  return acc;
}

}  // namespace

std::vector<double> Task::FullGradient(std::span<const double> w) const {
  const auto d = static_cast<std::size_t>(dimension());
  std::vector<double> sum(d, 0.0);
  std::vector<double> local(d);
  for (std::int64_t k = 0; k < devices(); ++k) {
    LocalGradient(k, w, local);
    for (std::size_t j = 0; j < d; ++j) sum[j] += local[j];
  }
  const double inv = 1.0 / static_cast<double>(devices());
  for (double& x : sum) x *= inv;
  return sum;
}

std::vector<double> Task::InitialWeights() const {
  return std::vector<double>(static_cast<std::size_t>(dimension()), 0.0);
}

LogisticRegressionTask::LogisticRegressionTask(const Options& options)
    : options_(options) {
  if (options_.dimension < 1 || options_.devices < 1 ||
      options_.samples_per_device < 1 || !(options_.feature_scale > 0.0) ||
      options_.l2 < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid logistic regression options");
  }
  Rng rng(DeriveSeed(options_.seed, "logistic-data"));
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<std::size_t>(options_.dimension);
  std::vector<double> planted(d);
  for (double& x : planted) x = normal(rng);

  const std::size_t rows =
      static_cast<std::size_t>(options_.devices * options_.samples_per_device);
  const double sd = options_.feature_scale / std::sqrt(static_cast<double>(d));
  features_.resize(rows * d);
  labels_.resize(rows);
  double max_norm_sq = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    double* x = &features_[i * d];
    double norm_sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      x[j] = sd * normal(rng);
      norm_sq += x[j] * x[j];
    }
    max_norm_sq = std::max(max_norm_sq, norm_sq);
    labels_[i] = UniformUnit(rng) < Sigmoid(Dot(x, planted)) ? 1.0 : 0.0;
  }
  smoothness_ = 0.25 * max_norm_sq + options_.l2;
}

double LogisticRegressionTask::LocalLoss(std::int64_t device,
                                         std::span<const double> w) const {
  const auto d = static_cast<std::size_t>(options_.dimension);
  const std::int64_t m = options_.samples_per_device;
  double acc = 0.0;
  for (std::int64_t i = 0; i < m; ++i) {
    const std::size_t row = static_cast<std::size_t>(device * m + i);
    const double z = Dot(&features_[row * d], w);
    acc += Softplus(z) - labels_[row] * z;
  }
  double reg = 0.0;
  for (double x : w) reg += x * x;
  return acc / static_cast<double>(m) + 0.5 * options_.l2 * reg;
}

double LogisticRegressionTask::Loss(std::span<const double> w) const {
  double acc = 0.0;
  for (std::int64_t k = 0; k < options_.devices; ++k) acc += LocalLoss(k, w);
  return acc / static_cast<double>(options_.devices);
}

void LogisticRegressionTask::LocalGradient(std::int64_t device,
                                           std::span<const double> w,
                                           std::span<double> out) const {
  const auto d = static_cast<std::size_t>(options_.dimension);
  const std::int64_t m = options_.samples_per_device;
  std::fill(out.begin(), out.end(), 0.0);
  for (std::int64_t i = 0; i < m; ++i) {
    const std::size_t row = static_cast<std::size_t>(device * m + i);
    const double* x = &features_[row * d];
    const double residual = Sigmoid(Dot(x, w)) - labels_[row];
    for (std::size_t j = 0; j < d; ++j) out[j] += residual * x[j];
  }
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t j = 0; j < d; ++j) out[j] = out[j] * inv + options_.l2 * w[j];
}

QuadraticBowlTask::QuadraticBowlTask(const Options& options) : options_(options) {
  if (options_.dimension < 1 || options_.devices < 1 ||
      !(options_.c_min > 0.0 && options_.c_min <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid quadratic bowl options");
  }
  Rng rng(DeriveSeed(options_.seed, "quadratic-data"));
  std::uniform_real_distribution<double> curvature(options_.c_min, 1.0);
  std::normal_distribution<double> normal(0.0, options_.center_spread);
  const auto d = static_cast<std::size_t>(options_.dimension);
  curvature_.resize(d);
  for (double& c : curvature_) c = curvature(rng);
  std::vector<double> common(d);
  for (double& x : common) x = normal(rng);
  centers_.resize(static_cast<std::size_t>(options_.devices) * d);
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    centers_[i] = common[i % d] + 0.5 * normal(rng);
  }
  smoothness_ = *std::max_element(curvature_.begin(), curvature_.end());
}

double QuadraticBowlTask::Loss(std::span<const double> w) const {
  const auto d = static_cast<std::size_t>(options_.dimension);
  double acc = 0.0;
  for (std::int64_t k = 0; k < options_.devices; ++k) {
    const double* b = &centers_[static_cast<std::size_t>(k) * d];
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = w[j] - b[j];
      acc += 0.5 * curvature_[j] * diff * diff;
    }
  }
  return acc / static_cast<double>(options_.devices);
}

void QuadraticBowlTask::LocalGradient(std::int64_t device, std::span<const double> w,
                                      std::span<double> out) const {
  const auto d = static_cast<std::size_t>(options_.dimension);
  const double* b = &centers_[static_cast<std::size_t>(device) * d];
  for (std::size_t j = 0; j < d; ++j) out[j] = curvature_[j] * (w[j] - b[j]);
}

}  // namespace slqbm
