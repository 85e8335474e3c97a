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

#include "rulesel/errors.h"

#include <string>

namespace rulesel {
namespace {

std::string JoinViolations(const std::vector<Violation>& violations) {
  std::string out;
  for (const Violation& v : violations) {
    if (!out.empty()) out += "; ";
    if (!v.rule.empty()) out += "rule " + v.rule + ": ";
    out += v.reason;
  }
  return out;
}

std::string JoinFacts(const FactSet& facts) {
  std::string out;
  for (const Fact& f : facts) {
    if (!out.empty()) out += ", ";
    out += f.ToString();
  }
  return out;
}

}  // namespace

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kValidation: return "validation_error";
    case ErrorCode::kEvaluation: return "evaluation_error";
    case ErrorCode::kInfeasible: return "fp_infeasible";
    case ErrorCode::kCapacity: return "capacity_exceeded";
    case ErrorCode::kUncoverable: return "uncoverable";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kInternal: return "internal_error";
  }
  return "internal_error";
}

ParseError::ParseError(std::string file, int line, int column,
                       std::string message, std::string snippet)
    : Error(ErrorCode::kParse,
            (file.empty() ? std::string("<input>") : file) + ":" +
                std::to_string(line) + ":" + std::to_string(column) + ": " +
                message),
      file_(std::move(file)),
      line_(line),
      column_(column),
      detail_(std::move(message)),
      snippet_(std::move(snippet)) {}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(ErrorCode::kValidation, JoinViolations(violations)),
      violations_(std::move(violations)) {}

InfeasibleError::InfeasibleError(FactSet missing)
    : Error(ErrorCode::kInfeasible,
            "truth facts produced by no rule: " + JoinFacts(missing)),
      missing_(std::move(missing)) {}

CapacityError::CapacityError(size_t num_rules, size_t max_rules)
    : Error(ErrorCode::kCapacity,
            "exhaustive enumeration over " + std::to_string(num_rules) +
                " rules exceeds the limit of " + std::to_string(max_rules)) {}

UncoverableError::UncoverableError(std::string element)
    : Error(ErrorCode::kUncoverable,
            "blue element " + element + " is in no set"),
      element_(std::move(element)) {}

}  // namespace rulesel
