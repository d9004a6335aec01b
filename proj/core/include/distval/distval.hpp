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

// Umbrella header for the distval library.
#ifndef DISTVAL_DISTVAL_HPP_
#define DISTVAL_DISTVAL_HPP_

#include "distval/dataset.hpp"
#include "distval/error.hpp"
#include "distval/experiments.hpp"
#include "distval/game.hpp"
#include "distval/huber.hpp"
#include "distval/io.hpp"
#include "distval/kernel.hpp"
#include "distval/metrics.hpp"
#include "distval/mmd.hpp"
#include "distval/parallel.hpp"
#include "distval/policy.hpp"
#include "distval/report.hpp"
#include "distval/rng.hpp"
#include "distval/valuation.hpp"

#endif  // DISTVAL_DISTVAL_HPP_
