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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace qbat {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Physical and output settings shared by every subcommand. Values come
/// from defaults, then the JSON config file, then flags.
struct RunConfig {
  double omega = 1.0;
  double j_coupling = 1.0;
  unsigned long long seed = 42;
  std::string format = "csv";
  std::string output;  // empty: standard output

  void validate() const;
};

/// Reads a config file holding any of omega, j_coupling, seed, format,
/// output. Unknown keys and wrong types throw ValidationError.
RunConfig load_run_config(const std::string& path, RunConfig base = {});

/// Full command-line entry point; returns the process exit code. Data goes
/// to `out` (or the --output file), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qbat
