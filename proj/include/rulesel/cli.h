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


// Command-line driver. Every command prints one JSON RunReport on stdout
// (or a table with --pretty); failures print one JSON error object on
// stderr.
//
// Exit codes: 0 success, 1 usage/parse/validation/io error, 2 FP mode
// infeasible, 3 capacity exceeded.

#ifndef RULESEL_CLI_H_
#define RULESEL_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace rulesel {

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace rulesel

#endif  // RULESEL_CLI_H_
