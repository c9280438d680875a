// Copyright 2026 The dashmip Authors.
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

// Minimal RFC 4180 style CSV helpers.

#ifndef DASH_CSV_H_
#define DASH_CSV_H_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace dash {

// Quotes the field when it contains a comma, quote or line break.
std::string CsvEscape(std::string_view field);

std::string CsvJoin(const std::vector<std::string>& fields);

// Splits one record. Quoted fields may not span lines.
std::vector<std::string> CsvSplit(std::string_view line);

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name, -1 when absent.
  int Column(std::string_view name) const;
};

// Throws std::runtime_error naming the line when a row has the wrong width.
CsvTable ReadCsv(std::istream& in);
CsvTable ReadCsvFile(const std::string& path);

}  // namespace dash

#endif  // DASH_CSV_H_
