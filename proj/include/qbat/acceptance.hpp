// Copyright 2026 The qbat Authors
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

// End-to-end acceptance criteria AC-1 .. AC-13, shared by the acceptance
// test binary and `qbat selftest`.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbat {

struct CriterionResult {
  std::string id;     // "AC-1" .. "AC-13"
  std::string title;
  bool passed;
  std::string detail;
};

struct AcceptanceOptions {
  /// Criterion ids to run; empty runs all of them.
  std::vector<std::string> only;
  double omega = 1.0;
  double j_coupling = 1.0;
  unsigned long long seed = 42;
};

/// Ids and titles in order.
std::vector<std::pair<std::string, std::string>> acceptance_criteria();

/// Runs the selected criteria. An exception inside a criterion is caught
/// and reported as a failure of that criterion. Unknown ids in `only`
/// throw ValidationError.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// One "PASS|FAIL  AC-n  title: detail" line per result; returns true when
/// all passed.
bool print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace qbat
