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

#ifndef SLQBM_PRIVACY_H_
#define SLQBM_PRIVACY_H_

#include <array>
#include <cstdint>

namespace slqbm {

// Population-level constants that enter the (epsilon, delta) accounting.
class PrivacyContext {
 public:
  // Throws kInvalidArgument unless d >= 1, 0 < delta < 1 and K >= 1.
  PrivacyContext(std::int64_t dimension, double delta,
                 std::int64_t selected_devices);

  std::int64_t d() const { return d_; }
  double delta() const { return delta_; }
  std::int64_t K() const { return k_; }

 private:
  std::int64_t d_;
  double delta_;
  std::int64_t k_;
};

// The quantizer + Binomial mechanism decision variables. The noise scale is
// always derived as s = 2D / (q - 1), never stored independently.
class MechanismParams {
 public:
  // Throws kInvalidArgument unless q >= 2, n >= 2, 0 < p < 1 and D > 0.
  MechanismParams(std::int64_t q, std::int64_t n, double p, double D = 1.0);

  std::int64_t q() const { return q_; }
  std::int64_t n() const { return n_; }
  double p() const { return p_; }
  double D() const { return d_cap_; }
  double s() const { return s_; }

  // n p (1 - p), the Binomial variance.
  double Variance() const;

  friend bool operator==(const MechanismParams&, const MechanismParams&) = default;

 private:
  std::int64_t q_;
  std::int64_t n_;
  double p_;
  double d_cap_;
  double s_;
};

struct SensitivityBounds {
  double delta_1;
  double delta_2;
  double delta_inf;
};

// The five summands of the tight estimate, in the order they are printed.
struct TightBudgetTerms {
  double gaussian;     // Delta_2 sqrt(2 ln(1.25/delta)) / sqrt(v)
  double expectation;  // alpha Delta_1 (v + 1) (p^2 + (1-p)^2) / (v^2 (1 - delta/10))
  double deviation;    // Delta_2 sqrt(2 S_1 ln(10/delta)) / sqrt(1 - delta/10)
  double range;        // (2/3) alpha S_2 (p^2 + (1-p)^2) ln(10/delta) Delta_inf / v^2
  double tail;         // 2 ln(1.25/delta) Delta_inf / v

  double Total() const { return gaussian + expectation + deviation + range + tail; }
  std::array<double, 5> AsArray() const {
    return {gaussian, expectation, deviation, range, tail};
  }
};

// alpha = -3 - 9 ln(2/3), the constant in |ln(1 + z) - z| <= alpha z^2.
double Alpha();

// Sensitivities with 2D/s replaced by q - 1; they depend on q only.
SensitivityBounds ComputeSensitivityBounds(std::int64_t q,
                                           const PrivacyContext& ctx);
SensitivityBounds ComputeSensitivityBounds(const MechanismParams& mech,
                                           const PrivacyContext& ctx);

// K n p (1 - p) >= max{23 ln(10 d / delta), 2 (q + 1)}.
bool DpVarianceFeasible(std::int64_t q, std::int64_t n, double p,
                        const PrivacyContext& ctx);
bool DpVarianceFeasible(const MechanismParams& mech, const PrivacyContext& ctx);

// Right-hand side of max{23 ln(10 d / delta), 2 (q + 1)}.
double DpVarianceThreshold(std::int64_t q, const PrivacyContext& ctx);

double S1Term(std::int64_t n, double p);
double S2Term(std::int64_t n, double p, const PrivacyContext& ctx);

// The earlier (Agarwal et al.) estimate. Throws kNotApplicable when the DP
// variance condition fails.
double EpsilonBaseline(const MechanismParams& mech, const PrivacyContext& ctx);
// Same closed form with no applicability check.
double EpsilonBaselineUnchecked(std::int64_t q, std::int64_t n, double p,
                                const PrivacyContext& ctx);

// The tight estimate. Throws kNotApplicable when the DP variance condition
// fails.
double EpsilonTight(const MechanismParams& mech, const PrivacyContext& ctx);
TightBudgetTerms EpsilonTightTerms(const MechanismParams& mech,
                                   const PrivacyContext& ctx);

// Evaluates the tight estimate for a fixed q across many (n, p). Everything
// that depends only on (q, d, delta) is computed once in the constructor; the
// solver and the brute-force oracle both go through this.
class TightBudget {
 public:
  TightBudget(std::int64_t q, const PrivacyContext& ctx);

  TightBudgetTerms Terms(std::int64_t n, double p) const;
  double operator()(std::int64_t n, double p) const { return Terms(n, p).Total(); }

  std::int64_t q() const { return q_; }
  const SensitivityBounds& sensitivity() const { return sens_; }

 private:
  std::int64_t q_;
  SensitivityBounds sens_;
  double ln_125_;  // ln(1.25 / delta)
  double ln_10_;   // ln(10 / delta)
  double ln_20d_;  // ln(20 d / delta)
  double one_minus_delta_10_;
  double alpha_;
};

}  // namespace slqbm

#endif  // SLQBM_PRIVACY_H_
