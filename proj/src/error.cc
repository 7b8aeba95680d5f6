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

#include "slqbm/error.h"

#include <string>

namespace slqbm {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kNotApplicable:
      return "not_applicable";
    case ErrorCode::kCapacityInfeasible:
      return "capacity_infeasible";
    case ErrorCode::kEmptyDomain:
      return "empty_domain";
    case ErrorCode::kPrivacyInfeasible:
      return "privacy_infeasible";
    case ErrorCode::kAllInfeasible:
      return "all_infeasible";
    case ErrorCode::kErrorBoundUnavailable:
      return "error_bound_unavailable";
    case ErrorCode::kInfeasible:
      return "infeasible";
    case ErrorCode::kMechanismMismatch:
      return "mechanism_mismatch";
    case ErrorCode::kDiverged:
      return "diverged";
    case ErrorCode::kConfig:
      return "config";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error("[" + std::string(ErrorCodeName(code)) + "] " +
                         message),
      code_(code) {}

}  // namespace slqbm
