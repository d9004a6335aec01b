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

#include "distval/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "distval/error.hpp"
#include "distval/report.hpp"

namespace distval {
namespace {

std::string location(const std::string& source, std::size_t line,
                     std::size_t column) {
  return source + ":" + std::to_string(line) + ":" + std::to_string(column);
}

std::vector<std::string> split_fields(const std::string& line,
                                      const std::string& source,
                                      std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"' && current.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(c);
    }
  }
  if (quoted) {
    throw InputError(location(source, line_no, fields.size() + 1) +
                     ": unterminated quoted field");
  }
  fields.push_back(std::move(current));
  return fields;
}

double parse_real(std::string field, const std::string& source,
                  std::size_t line_no, std::size_t column) {
  const auto first = field.find_first_not_of(" \t");
  const auto last = field.find_last_not_of(" \t");
  if (first == std::string::npos) {
    throw InputError(location(source, line_no, column) + ": empty cell");
  }
  field = field.substr(first, last - first + 1);
  const char* begin = field.data();
  if (*begin == '+') ++begin;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(begin, field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(value)) {
    throw InputError(location(source, line_no, column) +
                     ": not a finite decimal number: '" + field + "'");
  }
  return value;
}

}  // namespace

void VendorManifest::validate() const {
  if (entries.empty()) throw InputError("manifest lists no vendors");
  std::set<std::string> ids;
  for (const auto& e : entries) {
    if (e.id.empty()) throw InputError("manifest: empty vendor id");
    if (!ids.insert(e.id).second) {
      throw InputError("manifest: duplicate vendor id '" + e.id + "'");
    }
  }
}

Dataset read_csv_dataset(std::istream& in, const std::string& id,
                         const std::string& source, bool header,
                         std::size_t expected_dim) {
  std::vector<double> flat;
  std::size_t dim = expected_dim;
  std::string line;
  std::size_t line_no = 0;
  bool skipped_header = !header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    const auto fields = split_fields(line, source, line_no);
    if (dim == 0) dim = fields.size();
    if (fields.size() != dim) {
      throw InputError(location(source, line_no, std::min(fields.size(), dim) + 1) +
                       ": vendor '" + id + "' row has " +
                       std::to_string(fields.size()) + " columns, expected " +
                       std::to_string(dim));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      flat.push_back(parse_real(fields[c], source, line_no, c + 1));
    }
  }
  if (flat.empty()) {
    throw InputError(source + ": vendor '" + id + "' has no data rows");
  }
  return {id, dim, std::move(flat)};
}

Dataset read_csv_file(const std::string& path, const std::string& id,
                      bool header, std::size_t expected_dim) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  return read_csv_dataset(in, id, path, header, expected_dim);
}

void write_csv_dataset(const Dataset& d, std::ostream& out) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto row = d.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out << ',';
      out << format_number(row[k]);
    }
    out << '\n';
  }
}

std::vector<Dataset> ingest(const VendorManifest& manifest) {
  manifest.validate();
  std::vector<Dataset> out;
  out.reserve(manifest.entries.size());
  std::size_t dim = manifest.dim;
  for (const auto& e : manifest.entries) {
    out.push_back(read_csv_file(e.path, e.id, manifest.header, dim));
    if (dim == 0) dim = out.back().dim();
  }
  return out;
}

}  // namespace distval
