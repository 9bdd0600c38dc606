/**
 * Copyright 2026 The prioritycut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the license.
 */
#pragma once

#include <algorithm>

namespace prioritycut::detail {

// m * a + (1 - m) * b. Both products are exact in double, so the result is
// rounded once from the exact sum: m = 1 gives a, m = 0 gives b, and a == b
// gives a, all bitwise. The clamp keeps the result inside [min(a, b), max(a, b)].
inline float blend(float m, float a, float b) noexcept {
  const double mixed = static_cast<double>(m) * a + (1.0 - static_cast<double>(m)) * b;
  const auto [lo, hi] = std::minmax(a, b);
  return std::clamp(static_cast<float>(mixed), lo, hi);
}

}  // namespace prioritycut::detail
