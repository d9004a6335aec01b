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

#ifndef DISTVAL_ERROR_HPP_
#define DISTVAL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace distval {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent caller input (dimension mismatch, empty data,
// invalid pmf, parse failure, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// The operation needs an exact (pmf) handle but received an empirical one.
class UnsupportedModeError : public Error {
 public:
  using Error::Error;
};

// Problem size exceeds what can be materialized.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A numerical property that must hold was found violated.
class PropertyViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace distval

#endif  // DISTVAL_ERROR_HPP_
