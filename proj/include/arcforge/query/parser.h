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

#include <string_view>

#include "arcforge/query/ast.h"

namespace arcforge::query {

/// Parses one statement, optionally prefixed by EXPLAIN and followed by ';'.
/// Throws SyntaxError carrying the offset, line, column, and the set of
/// tokens that would have been accepted at the failure point.
Query Parse(std::string_view text);

}  // namespace arcforge::query
