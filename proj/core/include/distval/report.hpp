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

#ifndef DISTVAL_REPORT_HPP_
#define DISTVAL_REPORT_HPP_

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace distval {

inline constexpr const char* kVersion = "0.1.0";

// Plot-ready numeric table; NaN marks a missing value.
struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& col) const;
};

struct AggregateStat {
  std::string table;
  std::string statistic;
  std::string group;  // "" when ungrouped, else "<column>=<value>"
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(count)
  std::size_t count = 0;
};

struct ExperimentReport {
  std::string name;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::vector<ReportTable> tables;
  std::vector<AggregateStat> aggregates;
  std::vector<std::string> flags;
  std::optional<double> elapsed_seconds;

  const ReportTable& table(const std::string& name) const;
  // Throws InputError when the statistic was not aggregated.
  const AggregateStat& aggregate(const std::string& table,
                                 const std::string& statistic,
                                 const std::string& group = "") const;
};

// Mean and standard error of each stat column, optionally grouped by the
// distinct values of group_column (in first-appearance order). NaN entries
// are skipped.
std::vector<AggregateStat> aggregate_table(
    const ReportTable& table, const std::vector<std::string>& stat_columns,
    const std::string& group_column = "");

// Shortest decimal that round-trips to the same double; "nan" for NaN.
std::string format_number(double v);

void write_csv(const ReportTable& table, std::ostream& os);

nlohmann::json to_json(const ReportTable& table);
nlohmann::json to_json(const AggregateStat& stat);
nlohmann::json to_json(const ExperimentReport& report);

}  // namespace distval

#endif  // DISTVAL_REPORT_HPP_
