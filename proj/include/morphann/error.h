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

#ifndef MORPHANN_ERROR_H_
#define MORPHANN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace morphann {

enum class ErrorCode {
  kInvalidArgument,
  kNotFound,
  kAlreadyExists,
  kVersionConflict,
  kInvalidTransition,
  kValidationFailed,
  kSchemaViolation,
  kUnauthenticated,
  kForbidden,
  kProviderFailure,
  kIo,
};

// Stable lower-case identifier used in API error bodies.
std::string_view ErrorCodeName(ErrorCode code);

// A single located problem. For parse errors `line`/`column` are set;
// for structural problems `path` holds a JSON pointer.
struct Diagnostic {
  std::string path;
  int line = 0;
  int column = 0;
  std::string message;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<Diagnostic> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const { return code_; }
  const std::vector<Diagnostic>& details() const { return details_; }

 private:
  ErrorCode code_;
  std::vector<Diagnostic> details_;
};

}  // namespace morphann

#endif  // MORPHANN_ERROR_H_
