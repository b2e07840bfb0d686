// Copyright 2026 The CVQKD Phase Noise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVQKD_ERRORS_H_
#define CVQKD_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cvqkd {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration document (syntax, wrong types, unknown keys).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A configuration value violates a type invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// An argument lies outside the domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The trusted share of the noise exceeds the measured total.
class InconsistentBudget : public Error {
 public:
  using Error::Error;
};

// Inputs produce a covariance matrix that is not a physical state.
class NonPhysical : public Error {
 public:
  using Error::Error;
};

}  // namespace cvqkd

#endif  // CVQKD_ERRORS_H_
