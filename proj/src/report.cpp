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

#include "prioritycut/report.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "prioritycut/error.hpp"

namespace prioritycut {

const MetricRecord* MetricReport::find(std::string_view name) const {
  const auto it = std::find_if(metrics.begin(), metrics.end(), [&](const MetricRecord& r) { return r.name == name; });
  return it == metrics.end() ? nullptr : &*it;
}

std::string to_json(const MetricReport& report) {
  nlohmann::ordered_json doc;
  doc["frames"] = report.frames;
  doc["metrics"] = nlohmann::ordered_json::array();
  for (const MetricRecord& r : report.metrics) {
    nlohmann::ordered_json entry;
    entry["name"] = r.name;
    entry["mean"] = r.summary.mean;
    entry["n"] = r.summary.count;
    entry["ci95"] = r.summary.ci95;
    entry["skipped"] = r.skipped;
    doc["metrics"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

MetricReport report_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    MetricReport report;
    report.frames = doc.at("frames").get<std::size_t>();
    for (const auto& entry : doc.at("metrics")) {
      MetricRecord r;
      r.name = entry.at("name").get<std::string>();
      r.summary.mean = entry.at("mean").get<double>();
      r.summary.count = entry.at("n").get<std::size_t>();
      r.summary.ci95 = entry.at("ci95").get<double>();
      r.skipped = entry.value("skipped", std::size_t{0});
      report.metrics.push_back(std::move(r));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("metric report: ") + e.what());
  }
}

std::string to_table(const MetricReport& report) {
  std::size_t name_width = 6;
  for (const MetricRecord& r : report.metrics) name_width = std::max(name_width, r.name.size());

  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-*s %14s %8s %14s %8s\n", static_cast<int>(name_width), "metric", "mean", "n",
                "ci95", "skipped");
  out += line;
  for (const MetricRecord& r : report.metrics) {
    std::snprintf(line, sizeof(line), "%-*s %14.6f %8zu %14.6f %8zu\n", static_cast<int>(name_width), r.name.c_str(),
                  r.summary.mean, r.summary.count, r.summary.ci95, r.skipped);
    out += line;
  }
  std::snprintf(line, sizeof(line), "frames: %zu\n", report.frames);
  out += line;
  return out;
}

}  // namespace prioritycut
