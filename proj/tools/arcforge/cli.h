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

#include <iosfwd>
#include <string>
#include <vector>

namespace arcforge::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kQueryError = 2, kDataError = 3 };

/// Entry point of the `arcforge` command. Reads interactive input from `in`.
int Main(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err);

/// Splits a script into statements at semicolons outside quotes and
/// comments. Blank statements are dropped.
std::vector<std::string> SplitStatements(const std::string& text);

}  // namespace arcforge::cli
