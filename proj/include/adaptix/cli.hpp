// Copyright 2026 The adaptix authors.
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
// =============================================================================

#ifndef ADAPTIX_CLI_HPP_
#define ADAPTIX_CLI_HPP_

#include <string>
#include <vector>

namespace adaptix {

// Entry point shared by the binary and the tests. Subcommands:
//   run      --config F --out DIR
//   grid     --config F [--metric final_loss|tail_grad] --out DIR
//   compare  --config F [--config G ...] --out DIR
//   diagnose {smoothness|l0l1|pl|scalefree|histogram} --config F --out DIR
//   plot     --csv F --x COL --y COL [--logx] [--logy] --out F.svg
// Exit codes: 0 success, 1 configuration/usage error, 2 runtime error.
int cli_main(const std::vector<std::string>& args);

}  // namespace adaptix

#endif  // ADAPTIX_CLI_HPP_
