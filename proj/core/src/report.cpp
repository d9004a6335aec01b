// Copyright 2026 The distval Authors.
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

#include "distval/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "distval/error.hpp"

namespace distval {

std::size_t ReportTable::column(const std::string& col) const {
  auto it = std::find(columns.begin(), columns.end(), col);
  if (it == columns.end()) {
    throw InputError("table '" + name + "' has no column '" + col + "'");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

const ReportTable& ExperimentReport::table(const std::string& table_name) const {
  for (const auto& t : tables) {
    if (t.name == table_name) return t;
  }
  throw InputError("report has no table '" + table_name + "'");
}

const AggregateStat& ExperimentReport::aggregate(
    const std::string& table_name, const std::string& statistic,
    const std::string& group) const {
  for (const auto& a : aggregates) {
    if (a.table == table_name && a.statistic == statistic && a.group == group) {
      return a;
    }
  }
  throw InputError("report has no aggregate " + table_name + "/" + statistic +
                   (group.empty() ? "" : " [" + group + "]"));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, res.ptr};
}

std::vector<AggregateStat> aggregate_table(
    const ReportTable& table, const std::vector<std::string>& stat_columns,
    const std::string& group_column) {
  std::vector<double> groups;
  std::size_t group_idx = 0;
  if (!group_column.empty()) {
    group_idx = table.column(group_column);
    for (const auto& row : table.rows) {
      if (std::find(groups.begin(), groups.end(), row[group_idx]) ==
          groups.end()) {
        groups.push_back(row[group_idx]);
      }
    }
  } else {
    groups.push_back(0.0);
  }

  std::vector<AggregateStat> out;
  for (double g : groups) {
    for (const auto& stat : stat_columns) {
      const std::size_t col = table.column(stat);
      std::vector<double> xs;
      for (const auto& row : table.rows) {
        if (!group_column.empty() && row[group_idx] != g) continue;
        if (!std::isnan(row[col])) xs.push_back(row[col]);
      }
      AggregateStat a;
      a.table = table.name;
      a.statistic = stat;
      a.group = group_column.empty() ? ""
                                     : group_column + "=" + format_number(g);
      a.count = xs.size();
      if (!xs.empty()) {
        double sum = 0.0;
        for (double x : xs) sum += x;
        a.mean = sum / static_cast<double>(xs.size());
        if (xs.size() > 1) {
          double ss = 0.0;
          for (double x : xs) ss += (x - a.mean) * (x - a.mean);
          const double var = ss / static_cast<double>(xs.size() - 1);
          a.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
        }
      } else {
        a.mean = std::nan("");
        a.stderr_ = std::nan("");
      }
      out.push_back(std::move(a));
    }
  }
  return out;
}

void write_csv(const ReportTable& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_number(row[i]);
    }
    os << '\n';
  }
}

namespace {

nlohmann::json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::json to_json(const ReportTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (double v : row) r.push_back(number_or_null(v));
    rows.push_back(std::move(r));
  }
  return {{"name", table.name}, {"columns", table.columns}, {"rows", rows}};
}

nlohmann::json to_json(const AggregateStat& stat) {
  return {{"table", stat.table},
          {"statistic", stat.statistic},
          {"group", stat.group},
          {"mean", number_or_null(stat.mean)},
          {"stderr", number_or_null(stat.stderr_)},
          {"count", stat.count}};
}

nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["experiment"] = report.name;
  j["config"] = report.config;
  j["provenance"] = {{"seed", report.seed}, {"version", report.version}};
  j["tables"] = nlohmann::json::array();
  for (const auto& t : report.tables) j["tables"].push_back(to_json(t));
  j["aggregates"] = nlohmann::json::array();
  for (const auto& a : report.aggregates) j["aggregates"].push_back(to_json(a));
  j["flags"] = report.flags;
  if (report.elapsed_seconds) j["elapsed_seconds"] = *report.elapsed_seconds;
  return j;
}

}  // namespace distval
