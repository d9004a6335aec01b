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

#ifndef DISTVAL_PARALLEL_HPP_
#define DISTVAL_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace distval {

// Process-wide worker count used by parallel_for. Zero selects
// DISTVAL_THREADS from the environment, then hardware concurrency.
void set_num_threads(std::size_t n);
std::size_t num_threads();

// Calls body(i) for every i in [0, count). Work is split into contiguous
// blocks; each index is visited exactly once. Nested calls made from a
// worker run serially on that worker. The first exception thrown by any
// body is rethrown after all workers have joined.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body);

}  // namespace distval

#endif  // DISTVAL_PARALLEL_HPP_
