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

#ifndef SLQBM_TASKS_H_
#define SLQBM_TASKS_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace slqbm {

// A federated objective F(w) = (1 / M) sum_k f_k(w) over M devices, each
// holding fixed local data. Local gradients are full-batch and deterministic.
class Task {
 public:
  virtual ~Task() = default;

  virtual std::int64_t dimension() const = 0;
  virtual std::int64_t devices() const = 0;
  // Upper bound on the smoothness constant of F.
  virtual double Smoothness() const = 0;

  virtual double Loss(std::span<const double> w) const = 0;
  // Writes grad f_k(w) into 'out' (length dimension()).
  virtual void LocalGradient(std::int64_t device, std::span<const double> w,
                             std::span<double> out) const = 0;

  // grad F(w), summed over devices in index order.
  std::vector<double> FullGradient(std::span<const double> w) const;
  virtual std::vector<double> InitialWeights() const;
};

// Binary logistic regression with L2 regularization on synthetic Gaussian
// features. Labels come from a planted model through a logistic link.
class LogisticRegressionTask : public Task {
 public:
  struct Options {
    std::int64_t dimension = 100;
    std::int64_t devices = 100;
    std::int64_t samples_per_device = 20;
    double feature_scale = 1.0;  // features ~ N(0, feature_scale^2 / dimension)
    double l2 = 1e-3;
    std::uint64_t seed = 0;
  };

  explicit LogisticRegressionTask(const Options& options);

  std::int64_t dimension() const override { return options_.dimension; }
  std::int64_t devices() const override { return options_.devices; }
  double Smoothness() const override { return smoothness_; }
  double Loss(std::span<const double> w) const override;
  void LocalGradient(std::int64_t device, std::span<const double> w,
                     std::span<double> out) const override;

 private:
  double LocalLoss(std::int64_t device, std::span<const double> w) const;

  Options options_;
  std::vector<double> features_;  // row-major, devices * samples * dimension
  std::vector<double> labels_;    // in {0, 1}
  double smoothness_ = 0.0;
};

// f_k(w) = (1/2) sum_j c_j (w_j - b_kj)^2 with curvatures c_j in [c_min, 1]
// and device centers b_k scattered around a common point.
class QuadraticBowlTask : public Task {
 public:
  struct Options {
    std::int64_t dimension = 20;
    std::int64_t devices = 20;
    double c_min = 0.1;
    double center_spread = 1.0;
    std::uint64_t seed = 0;
  };

  explicit QuadraticBowlTask(const Options& options);

  std::int64_t dimension() const override { return options_.dimension; }
  std::int64_t devices() const override { return options_.devices; }
  double Smoothness() const override { return smoothness_; }
  double Loss(std::span<const double> w) const override;
  void LocalGradient(std::int64_t device, std::span<const double> w,
                     std::span<double> out) const override;

 private:
  Options options_;
  std::vector<double> curvature_;
  std::vector<double> centers_;  // devices * dimension
  double smoothness_ = 0.0;
};

}  // namespace slqbm

#endif  // SLQBM_TASKS_H_
