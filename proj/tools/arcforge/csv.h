/** Copyright 2026 The ArcForge Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * 	http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <istream>
#include <string>
#include <vector>

namespace arcforge::cli {

/// Reads delimited records with RFC 4180 quoting: a field wrapped in double
/// quotes may hold the delimiter, line breaks, and doubled quotes.
class CsvReader {
 public:
  CsvReader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

  /// Next record, or false at end of input. Throws InvalidArgument on an
  /// unterminated quoted field.
  bool Next(std::vector<std::string>& fields);
  /// Line number where the last record returned by Next started (1-based).
  size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  char delimiter_;
  size_t line_ = 0;
  size_t record_line_ = 0;
};

std::vector<std::string> SplitCsvLine(const std::string& line, char delimiter);

}  // namespace arcforge::cli
