// Copyright 2026 The Rulesel Authors
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

#ifndef RULESEL_ERRORS_H_
#define RULESEL_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "rulesel/fact.h"

namespace rulesel {

enum class ErrorCode {
  kParse,
  kValidation,
  kEvaluation,
  kInfeasible,
  kCapacity,
  kUncoverable,
  kInvalidArgument,
  kInternal,
};

// Machine-readable name, e.g. "fp_infeasible".
const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::string file, int line, int column, std::string message,
             std::string snippet);

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }
  const std::string& snippet() const { return snippet_; }

 private:
  std::string file_;
  int line_;
  int column_;
  std::string detail_;
  std::string snippet_;
};

struct Violation {
  std::string rule;  // empty when the problem is not tied to one rule
  std::string reason;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Raised when the truth instance contains facts no rule can produce while
// the objective forbids false negatives.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(FactSet missing);
  const FactSet& missing() const { return missing_; }

 private:
  FactSet missing_;
};

class CapacityError : public Error {
 public:
  CapacityError(size_t num_rules, size_t max_rules);
};

class UncoverableError : public Error {
 public:
  explicit UncoverableError(std::string element);
  const std::string& element() const { return element_; }

 private:
  std::string element_;
};

}  // namespace rulesel

#endif  // RULESEL_ERRORS_H_
