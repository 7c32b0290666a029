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


#include "csv.h"

#include <sstream>

#include "arcforge/common/error.h"

namespace arcforge::cli {

bool CsvReader::Next(std::vector<std::string>& fields) {
  fields.clear();
  std::string line;
  if (!std::getline(in_, line)) return false;
  record_line_ = ++line_;
  std::string field;
  bool quoted = false;
  size_t i = 0;
  while (true) {
    if (i == line.size()) {
      if (!quoted) break;
      // A quoted field continues on the next physical line.
      if (!std::getline(in_, line)) {
        Throw(ErrorCode::kInvalidArgument,
              "unterminated quoted field starting on line " + std::to_string(record_line_));
      }
      ++line_;
      field += '\n';
      i = 0;
      continue;
    }
    char c = line[i++];
    if (quoted) {
      if (c != '"') {
        field += c;
      } else if (i < line.size() && line[i] == '"') {
        field += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == delimiter_) {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r' && i == line.size()) {
      // CRLF line ending.
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return true;
}

std::vector<std::string> SplitCsvLine(const std::string& line, char delimiter) {
  std::istringstream in(line);
  CsvReader reader(in, delimiter);
  std::vector<std::string> fields;
  reader.Next(fields);
  return fields;
}

}  // namespace arcforge::cli
