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

#ifndef SLQBM_ERROR_H_
#define SLQBM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace slqbm {

// Every failure the library reports carries one of these codes. Callers that
// need to branch (the CLI maps them to exit codes) switch on Error::code().
enum class ErrorCode {
  kInvalidArgument,
  // The DP variance condition fails, so no budget estimate is certified.
  kNotApplicable,
  // The unclamped minimal power exceeds the device's maximum power.
  kCapacityInfeasible,
  // The capacity-derived domain {2, ..., bound} is empty.
  kEmptyDomain,
  // The budget never drops below the target within the trial cap.
  kPrivacyInfeasible,
  // Even q = 2 violates the budget's lower envelope.
  kAllInfeasible,
  // eta >= 1/4, so the relative-error bound is undefined.
  kErrorBoundUnavailable,
  // No grid point passes every constraint.
  kInfeasible,
  kMechanismMismatch,
  kDiverged,
  kConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace slqbm

#endif  // SLQBM_ERROR_H_
