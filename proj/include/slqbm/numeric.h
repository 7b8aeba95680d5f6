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

#ifndef SLQBM_NUMERIC_H_
#define SLQBM_NUMERIC_H_

#include <bit>
#include <cmath>
#include <cstdint>

namespace slqbm {

// Privacy accounting works in natural logarithms and channel capacity in
// bits. The two are kept under separate names so a formula never silently
// picks up the wrong base.
inline double NaturalLog(double x) { return std::log(x); }
inline double BinaryLog(double x) { return std::log2(x); }

// ceil(log2(x)) for x >= 1, computed exactly on integers.
inline int CeilLog2(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<int>(std::bit_width(x - 1));
}

inline double DbmToWatts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double WattsToDbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
inline double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace slqbm

#endif  // SLQBM_NUMERIC_H_
