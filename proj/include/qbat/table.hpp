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

// Column tables written as CSV or JSON. Numbers use 15 significant digits
// in both formats.

#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qbat {

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> notes;    // "# " lines in CSV, "notes" array in JSON
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws ValidationError when the row width does not match the columns.
  void add_row(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& text);

/// "%.15g"; non-finite values become "nan", "inf" or "-inf".
std::string format_number(double x);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);
void write_table(std::ostream& os, const Table& t, OutputFormat f);

}  // namespace qbat
