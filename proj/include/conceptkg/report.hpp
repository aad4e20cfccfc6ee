// Copyright 2026 The conceptkg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONCEPTKG_REPORT_HPP_
#define CONCEPTKG_REPORT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "conceptkg/evaluation.hpp"
#include "conceptkg/scenarios.hpp"

namespace ckg {

struct ClusterTableRow {
  ReportRow row;
  std::optional<Percent> improvement;  // set for augmented runs
};

// Columns: LLM name, % incomp. edges, % incons. edges, % incons. paths,
// % incons. property inherit., % all incons., and the improvement column
// when any row carries one. Denominators appear in the header.
std::string render_cluster_markdown(const std::vector<ClusterTableRow> &rows);
std::string render_cluster_csv(const std::vector<ClusterTableRow> &rows);

std::string render_scenario_markdown(const std::vector<ScenarioSummary> &rows);
std::string render_scenario_csv(const std::vector<ScenarioSummary> &rows);

// Raw counts and fractions for machine consumption.
std::string render_report_json(const std::vector<ClusterTableRow> &clusters,
                               const std::vector<ScenarioSummary> &scenarios);

}  // namespace ckg

#endif  // CONCEPTKG_REPORT_HPP_
