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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "prioritycut/metrics.hpp"

namespace prioritycut {

struct MetricRecord {
  std::string name;
  metrics::Summary summary;
  std::size_t skipped = 0;  // frames excluded, e.g. for an all-zero mask

  friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

struct MetricReport {
  std::size_t frames = 0;
  std::vector<MetricRecord> metrics;

  const MetricRecord* find(std::string_view name) const;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

/// {"frames": N, "metrics": [{"name", "mean", "n", "ci95", "skipped"}, ...]}
std::string to_json(const MetricReport& report);
MetricReport report_from_json(std::string_view text);

/// Fixed-width table with one row per metric.
std::string to_table(const MetricReport& report);

}  // namespace prioritycut
