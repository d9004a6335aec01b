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

#ifndef DISTVAL_IO_HPP_
#define DISTVAL_IO_HPP_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "distval/dataset.hpp"

namespace distval {

struct VendorEntry {
  std::string id;
  std::string path;
};

struct VendorManifest {
  std::vector<VendorEntry> entries;
  std::size_t dim = 0;  // 0 = infer from the first file
  bool header = false;  // skip the first line of every file
  std::optional<std::string> ground_truth_path;

  // Throws InputError for an empty manifest or duplicate vendor ids.
  void validate() const;
};

// Parses comma-separated decimal reals, one point per line. Double-quoted
// fields and CRLF line endings are accepted; blank lines are skipped.
// Errors name the source, 1-based line and column.
Dataset read_csv_dataset(std::istream& in, const std::string& id,
                         const std::string& source, bool header,
                         std::size_t expected_dim = 0);

Dataset read_csv_file(const std::string& path, const std::string& id,
                      bool header, std::size_t expected_dim = 0);

// Writes every coordinate with the shortest round-trip representation.
void write_csv_dataset(const Dataset& d, std::ostream& out);

// Datasets in manifest order. A dimension mismatch names the vendor.
std::vector<Dataset> ingest(const VendorManifest& manifest);

}  // namespace distval

#endif  // DISTVAL_IO_HPP_
