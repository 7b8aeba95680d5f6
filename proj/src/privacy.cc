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

#include "slqbm/privacy.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "slqbm/error.h"
#include "slqbm/numeric.h"

namespace slqbm {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

PrivacyContext::PrivacyContext(std::int64_t dimension, double delta,
                               std::int64_t selected_devices)
    : d_(dimension), delta_(delta), k_(selected_devices) {
  Require(d_ >= 1, "dimension d must be >= 1");
  Require(delta_ > 0.0 && delta_ < 1.0, "delta must lie in (0, 1)");
  Require(k_ >= 1, "selected device count K must be >= 1");
}

MechanismParams::MechanismParams(std::int64_t q, std::int64_t n, double p,
                                 double D)
    : q_(q), n_(n), p_(p), d_cap_(D) {
  Require(q_ >= 2, "quantization levels q must be >= 2");
  Require(n_ >= 2, "Binomial trials n must be >= 2");
  Require(p_ > 0.0 && p_ < 1.0, "Binomial probability p must lie in (0, 1)");
  Require(d_cap_ > 0.0 && std::isfinite(d_cap_), "gradient cap D must be positive");
  s_ = 2.0 * d_cap_ / static_cast<double>(q_ - 1);
}

double MechanismParams::Variance() const {
  return static_cast<double>(n_) * p_ * (1.0 - p_);
}

double Alpha() { return -3.0 - 9.0 * NaturalLog(2.0 / 3.0); }

SensitivityBounds ComputeSensitivityBounds(std::int64_t q,
                                           const PrivacyContext& ctx) {
  Require(q >= 2, "quantization levels q must be >= 2");
  const double levels = static_cast<double>(q - 1);
  const double sqrt_d = std::sqrt(static_cast<double>(ctx.d()));
  const double ln_2 = NaturalLog(2.0 / ctx.delta());
  const double cross = std::sqrt(2.0 * sqrt_d * levels * ln_2);
  SensitivityBounds out;
  out.delta_1 = sqrt_d * levels + cross + 4.0 / 3.0 * ln_2;
  out.delta_2 = levels + std::sqrt(out.delta_1 + cross);
  out.delta_inf = static_cast<double>(q + 1);
  return out;
}

SensitivityBounds ComputeSensitivityBounds(const MechanismParams& mech,
                                           const PrivacyContext& ctx) {
  return ComputeSensitivityBounds(mech.q(), ctx);
}

double DpVarianceThreshold(std::int64_t q, const PrivacyContext& ctx) {
  const double dimension_term =
      23.0 * NaturalLog(10.0 * static_cast<double>(ctx.d()) / ctx.delta());
  return std::max(dimension_term, 2.0 * static_cast<double>(q + 1));
}

bool DpVarianceFeasible(std::int64_t q, std::int64_t n, double p,
                        const PrivacyContext& ctx) {
  const double lhs = static_cast<double>(ctx.K()) * static_cast<double>(n) * p * (1.0 - p);
  return lhs >= DpVarianceThreshold(q, ctx);
}

bool DpVarianceFeasible(const MechanismParams& mech, const PrivacyContext& ctx) {
  return DpVarianceFeasible(mech.q(), mech.n(), mech.p(), ctx);
}

double S1Term(std::int64_t n, double p) {
  Require(n >= 2, "Binomial trials n must be >= 2");
  Require(p > 0.0 && p < 1.0, "Binomial probability p must lie in (0, 1)");
  const double nd = static_cast<double>(n);
  const double pq = p * (1.0 - p);
  const double numerator = 3.0 * p * p - 3.0 * p + 1.0;
  return numerator / (nd * (nd + 1.0) * (nd + 2.0) * pq * pq) *
         (3.0 * nd + 2.0 + 2.0 / pq);
}

double S2Term(std::int64_t n, double p, const PrivacyContext& ctx) {
  Require(n >= 2, "Binomial trials n must be >= 2");
  Require(p > 0.0 && p < 1.0, "Binomial probability p must lie in (0, 1)");
  const double ln_20d = NaturalLog(20.0 * static_cast<double>(ctx.d()) / ctx.delta());
  const double v = static_cast<double>(n) * p * (1.0 - p);
  const double root = std::sqrt(2.0 * v * ln_20d) + 1.0 +
                      2.0 / 3.0 * std::max(p, 1.0 - p) * ln_20d;
  return root * root;
}

double EpsilonBaselineUnchecked(std::int64_t q, std::int64_t n, double p,
                                const PrivacyContext& ctx) {
  const SensitivityBounds sens = ComputeSensitivityBounds(q, ctx);
  const double delta = ctx.delta();
  const double v = static_cast<double>(n) * p * (1.0 - p);
  const double r = 1.0 - p;
  const double sq = p * p + r * r;
  const double c_p = std::sqrt(2.0) *
                     (3.0 * p * p * p + 3.0 * r * r * r + 2.0 * p * p + 2.0 * r * r);
  const double b_p = 2.0 / 3.0 * sq + (1.0 - 2.0 * p);
  const double d_p = 4.0 / 3.0 * sq;
  const double ln_125 = NaturalLog(1.25 / delta);
  const double ln_10 = NaturalLog(10.0 / delta);
  const double ln_20d = NaturalLog(20.0 * static_cast<double>(ctx.d()) / delta);

  const double first = sens.delta_2 * std::sqrt(2.0 * ln_125) / std::sqrt(v);
  const double second = (sens.delta_2 * c_p * std::sqrt(ln_10) + sens.delta_1 * b_p) /
                        (v * (1.0 - delta / 10.0));
  const double third = (2.0 / 3.0 * sens.delta_inf * ln_125 +
                        sens.delta_inf * d_p * ln_20d * ln_10) /
                       v;
  return first + second + third;
}

double EpsilonBaseline(const MechanismParams& mech, const PrivacyContext& ctx) {
  if (!DpVarianceFeasible(mech, ctx)) {
    throw Error(ErrorCode::kNotApplicable,
                "K n p (1 - p) is below the DP variance threshold; the "
                "baseline estimate is not certified");
  }
  return EpsilonBaselineUnchecked(mech.q(), mech.n(), mech.p(), ctx);
}

TightBudget::TightBudget(std::int64_t q, const PrivacyContext& ctx)
    : q_(q),
      sens_(ComputeSensitivityBounds(q, ctx)),
      ln_125_(NaturalLog(1.25 / ctx.delta())),
      ln_10_(NaturalLog(10.0 / ctx.delta())),
      ln_20d_(NaturalLog(20.0 * static_cast<double>(ctx.d()) / ctx.delta())),
      one_minus_delta_10_(1.0 - ctx.delta() / 10.0),
      alpha_(Alpha()) {}

TightBudgetTerms TightBudget::Terms(std::int64_t n, double p) const {
  const double nd = static_cast<double>(n);
  const double pq = p * (1.0 - p);
  const double v = nd * pq;
  const double sq = p * p + (1.0 - p) * (1.0 - p);

  const double s1 = (3.0 * p * p - 3.0 * p + 1.0) /
                    (nd * (nd + 1.0) * (nd + 2.0) * pq * pq) *
                    (3.0 * nd + 2.0 + 2.0 / pq);
  const double s2_root = std::sqrt(2.0 * v * ln_20d_) + 1.0 +
                         2.0 / 3.0 * std::max(p, 1.0 - p) * ln_20d_;
  const double s2 = s2_root * s2_root;

  TightBudgetTerms t;
  t.gaussian = sens_.delta_2 * std::sqrt(2.0 * ln_125_) / std::sqrt(v);
  t.expectation = alpha_ * sens_.delta_1 * (v + 1.0) / (v * v * one_minus_delta_10_) * sq;
  t.deviation = sens_.delta_2 / std::sqrt(one_minus_delta_10_) * std::sqrt(2.0 * s1 * ln_10_);
  t.range = 2.0 / 3.0 * alpha_ * s2 * sq * ln_10_ * sens_.delta_inf / (v * v);
  t.tail = 2.0 * ln_125_ * sens_.delta_inf / v;
  return t;
}

TightBudgetTerms EpsilonTightTerms(const MechanismParams& mech,
                                   const PrivacyContext& ctx) {
  return TightBudget(mech.q(), ctx).Terms(mech.n(), mech.p());
}

double EpsilonTight(const MechanismParams& mech, const PrivacyContext& ctx) {
  if (!DpVarianceFeasible(mech, ctx)) {
    throw Error(ErrorCode::kNotApplicable,
                "K n p (1 - p) is below the DP variance threshold; the tight "
                "estimate is not certified");
  }
  return EpsilonTightTerms(mech, ctx).Total();
}

}  // namespace slqbm
