// Copyright 2026 The umebh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UMEBH_CLI_H_
#define UMEBH_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace umebh {

// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitMalformed = 2;
inline constexpr int kExitBudget = 3;

// Runs `umebh <generate|verify|complete|search|classify> [flags]`. `args`
// excludes the program name. Files named by --out/--report are written
// directly; everything else goes to `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace umebh

#endif  // UMEBH_CLI_H_
