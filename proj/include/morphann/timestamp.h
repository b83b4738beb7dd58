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

#ifndef MORPHANN_TIMESTAMP_H_
#define MORPHANN_TIMESTAMP_H_

#include <chrono>
#include <functional>
#include <string>
#include <string_view>

namespace morphann {

// UTC instant with millisecond resolution.
using Timestamp =
    std::chrono::time_point<std::chrono::system_clock, std::chrono::milliseconds>;

using Clock = std::function<Timestamp()>;

Timestamp Now();

// RFC 3339 in UTC, e.g. "2026-10-16T05:51:00.250Z". Milliseconds are
// always written.
std::string FormatRfc3339(Timestamp t);

// Accepts "Z" or a numeric offset and an optional fraction (truncated to
// milliseconds). Throws Error(kInvalidArgument) on malformed input.
Timestamp ParseRfc3339(std::string_view text);

}  // namespace morphann

#endif  // MORPHANN_TIMESTAMP_H_
