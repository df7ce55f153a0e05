// Copyright 2026 The SciConcept Authors.
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

#ifndef SCICONCEPT_ERROR_HPP_
#define SCICONCEPT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sciconcept {

// Process exit codes shared by every command.
enum class ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kNumerical = 3,
};

class Error : public std::runtime_error {
 public:
  Error(const std::string& what, ExitCode code)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

// Malformed input file. The message carries path and line number.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what)
      : Error(what, ExitCode::kValidation) {}
};

// Input parses but violates a data invariant (overlapping spans, unknown
// domain, misaligned token streams, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(what, ExitCode::kValidation) {}
};

// NaN/Inf during optimisation or an undefined statistic.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(what, ExitCode::kNumerical) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what)
      : Error(what, ExitCode::kUsage) {}
};

}  // namespace sciconcept

#endif  // SCICONCEPT_ERROR_HPP_
