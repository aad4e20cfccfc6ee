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

#include "conceptkg/report.hpp"

#include "json_util.hpp"

namespace ckg {

using detail::json;

namespace {

bool any_improvement(const std::vector<ClusterTableRow> &rows) {
  for (const auto &r : rows)
    if (r.improvement) return true;
  return false;
}

std::string den(std::size_t first, const std::vector<ClusterTableRow> &rows,
                std::size_t (*pick)(const ReportRow &)) {
  // Denominators are shared when every row agrees; otherwise left out.
  for (const auto &r : rows)
    if (pick(r.row) != first) return "";
  return " (" + std::to_string(first) + ")";
}

std::string escape_csv(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json percent_json(const Percent &p) {
  return {{"numerator", p.num}, {"denominator", p.den}, {"value", p.value()}, {"rounded", p.str()}};
}

json tally_json(const Tally &t) {
  return {{"consistent", t.consistent}, {"inconsistent", t.inconsistent}, {"incomplete", t.incomplete},
          {"total", t.total()}};
}

}  // namespace

std::string render_cluster_markdown(const std::vector<ClusterTableRow> &rows) {
  const bool imp = any_improvement(rows);
  std::string e, p, pr, a;
  if (!rows.empty()) {
    const ReportRow &f = rows.front().row;
    e = den(f.edges.total(), rows, [](const ReportRow &r) { return r.edges.total(); });
    p = den(f.paths.total(), rows, [](const ReportRow &r) { return r.paths.total(); });
    pr = den(f.property.total(), rows, [](const ReportRow &r) { return r.property.total(); });
    a = den(f.all.total(), rows, [](const ReportRow &r) { return r.all.total(); });
  }
  std::string out = "| LLM name | % incomp. edges" + e + " | % incons. edges" + e + " | % incons. paths" + p +
                    " | % incons. property inherit." + pr + " | % all incons." + a + " |";
  if (imp) out += " % improve. (all incons.) |";
  out += "\n|---|---:|---:|---:|---:|---:|";
  if (imp) out += "---:|";
  out += "\n";
  for (const auto &r : rows) {
    out += "| " + r.row.backend_id + " | " + r.row.pct_incomplete_edges().str() + " | " +
           r.row.pct_inconsistent_edges().str() + " | " + r.row.pct_inconsistent_paths().str() + " | " +
           r.row.pct_inconsistent_property().str() + " | " + r.row.pct_all_inconsistent().str() + " |";
    if (imp) out += " " + (r.improvement ? r.improvement->str() : std::string("")) + " |";
    out += "\n";
  }
  return out;
}

std::string render_cluster_csv(const std::vector<ClusterTableRow> &rows) {
  const bool imp = any_improvement(rows);
  std::string out =
      "backend,pct_incomplete_edges,pct_inconsistent_edges,pct_inconsistent_paths,"
      "pct_inconsistent_property,pct_all_inconsistent";
  if (imp) out += ",pct_improvement_all_inconsistent";
  out += "\n";
  for (const auto &r : rows) {
    out += escape_csv(r.row.backend_id) + "," + r.row.pct_incomplete_edges().str() + "," +
           r.row.pct_inconsistent_edges().str() + "," + r.row.pct_inconsistent_paths().str() + "," +
           r.row.pct_inconsistent_property().str() + "," + r.row.pct_all_inconsistent().str();
    if (imp) out += "," + (r.improvement ? r.improvement->str() : std::string(""));
    out += "\n";
  }
  return out;
}

std::string render_scenario_markdown(const std::vector<ScenarioSummary> &rows) {
  std::string out =
      "| LLM name | % incorrect individual answers | % inconsistent scenarios |\n|---|---:|---:|\n";
  for (const auto &s : rows)
    out += "| " + s.backend_id + " | " + s.pct_incorrect_individual().str() + " | " +
           s.pct_inconsistent_scenarios().str() + " |\n";
  return out;
}

std::string render_scenario_csv(const std::vector<ScenarioSummary> &rows) {
  std::string out = "backend,pct_incorrect_individual,pct_inconsistent_scenarios\n";
  for (const auto &s : rows)
    out += escape_csv(s.backend_id) + "," + s.pct_incorrect_individual().str() + "," +
           s.pct_inconsistent_scenarios().str() + "\n";
  return out;
}

std::string render_report_json(const std::vector<ClusterTableRow> &clusters,
                               const std::vector<ScenarioSummary> &scenarios) {
  json c = json::array();
  for (const auto &r : clusters) {
    json by_type = json::object();
    for (ClusterType t : kAllClusterTypes)
      by_type[std::string(cluster_type_name(t))] = tally_json(r.row.by_type[static_cast<std::size_t>(t)]);
    json j = {{"backend", r.row.backend_id},
              {"by_type", std::move(by_type)},
              {"edges", tally_json(r.row.edges)},
              {"paths", tally_json(r.row.paths)},
              {"property_inheritance", tally_json(r.row.property)},
              {"all", tally_json(r.row.all)},
              {"pct_incomplete_edges", percent_json(r.row.pct_incomplete_edges())},
              {"pct_inconsistent_edges", percent_json(r.row.pct_inconsistent_edges())},
              {"pct_inconsistent_paths", percent_json(r.row.pct_inconsistent_paths())},
              {"pct_inconsistent_property", percent_json(r.row.pct_inconsistent_property())},
              {"pct_all_inconsistent", percent_json(r.row.pct_all_inconsistent())}};
    if (r.improvement) j["pct_improvement_all_inconsistent"] = percent_json(*r.improvement);
    c.push_back(std::move(j));
  }
  json s = json::array();
  for (const auto &x : scenarios)
    s.push_back({{"backend", x.backend_id},
                 {"answers", x.answers},
                 {"incorrect", x.incorrect},
                 {"scenarios", x.scenarios},
                 {"inconsistent", x.inconsistent},
                 {"incomplete_excluded", x.incomplete},
                 {"pct_incorrect_individual", percent_json(x.pct_incorrect_individual())},
                 {"pct_inconsistent_scenarios", percent_json(x.pct_inconsistent_scenarios())}});
  return json{{"clusters", std::move(c)}, {"scenarios", std::move(s)}}.dump(2) + "\n";
}

}  // namespace ckg
