// Copyright 2026 The wsc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef WSC_TOOLS_COMMANDS_H_
#define WSC_TOOLS_COMMANDS_H_

#include <iosfwd>

#include "selftest.h"
#include "wsc/config.h"

namespace wsc::cli {

// Exit codes of `wsc certify`; `wsc run` uses 0 / 1 / 3.
enum ExitCode : int {
  kExitCertified = 0,
  kExitRefuted = 1,
  kExitInconclusive = 2,
  kExitInputError = 3,
};

int CmdCertify(const ExperimentConfig& config, bool quiet, std::ostream& out,
               std::ostream& err);
int CmdRun(const ExperimentConfig& config, bool quiet, std::ostream& out,
           std::ostream& err);
int CmdSelftest(const SelfTestOptions& options, bool quiet, std::ostream& out);

// Full command line: `wsc <certify|run|selftest> [flags]`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace wsc::cli

#endif  // WSC_TOOLS_COMMANDS_H_
