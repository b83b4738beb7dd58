// Copyright 2026 The Morphann Authors.
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

#ifndef MORPHANN_CLI_H_
#define MORPHANN_CLI_H_

#include <iosfwd>

namespace morphann {

// Entry point of the `morphann` tool. Every subcommand becomes one API
// request, sent to --server over HTTP or, with --store, handled in process
// as a lead. Returns the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace morphann

#endif  // MORPHANN_CLI_H_
