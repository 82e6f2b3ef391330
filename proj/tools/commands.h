/*
 * Copyright 2026 The laneletml Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LANELETML_TOOLS_COMMANDS_H_
#define LANELETML_TOOLS_COMMANDS_H_

#include <ostream>
#include <span>
#include <string>

namespace laneletml::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitInputError = 2;

// Runs one command line (without the program name). Text output goes to
// `out` unless --out names a file; diagnostics go to `err`.
int runCli(std::span<const std::string> args, std::ostream& out,
           std::ostream& err);

}  // namespace laneletml::cli

#endif  // LANELETML_TOOLS_COMMANDS_H_
