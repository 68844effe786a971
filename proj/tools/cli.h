// Copyright 2026 The cfq Authors
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


#ifndef CFQ_TOOLS_CLI_H
#define CFQ_TOOLS_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace cfq::cli {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCapExceeded = 3;

/// Environment variable that redirects --out into another directory.
constexpr const char *kOutputDirEnv = "CFQ_OUTPUT_DIR";

/// Parses and runs one invocation. Reports go to `out` unless --out is
/// given; diagnostics go to `err`. Returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Same, with argv[0] supplied.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace cfq::cli

#endif
