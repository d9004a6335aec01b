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

// Command-line front end. Kept as a library so end-to-end tests and the
// executable share one code path.
#ifndef DISTVAL_TOOLS_CLI_HPP_
#define DISTVAL_TOOLS_CLI_HPP_

#include <ostream>

namespace distval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitPropertyViolation = 2;

// Parses argv, runs the selected subcommand and returns the process exit
// code. Reports go to `out` (or the --out path); diagnostics and the
// resolved configuration go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace distval::cli

#endif  // DISTVAL_TOOLS_CLI_HPP_
