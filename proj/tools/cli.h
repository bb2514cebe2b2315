// Copyright 2026 The tatetower Authors
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

#ifndef TATETOWER_TOOLS_CLI_H_
#define TATETOWER_TOOLS_CLI_H_

#include <iosfwd>

namespace tatetower::cli {

// Process exit statuses.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailed = 2;
inline constexpr int kExitBadInput = 3;
inline constexpr int kExitPrecisionExhausted = 4;

// Parses argv and runs one subcommand, writing the report to `out` and
// diagnostics to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace tatetower::cli

#endif  // TATETOWER_TOOLS_CLI_H_
