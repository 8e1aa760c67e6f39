/*
 * Copyright 2026 The PPTree Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PPTREE_SERVICE_CLI_H_
#define PPTREE_SERVICE_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace pptree::service {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `pptree` tool. `args` excludes the program name.
// Subcommands: simulate, fit, predict, bench, boundary, serve. Returns 0 on
// success, 2 on usage errors and 1 (with a one-line "error: ..." on `err`)
// when the command itself fails.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pptree::service

#endif  // PPTREE_SERVICE_CLI_H_
