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

#ifndef MORPHANN_UTF8_H_
#define MORPHANN_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace morphann::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Invalid byte sequences decode to U+FFFD, one per offending byte.
std::u32string Decode(std::string_view text);

void Append(std::string& out, char32_t cp);
std::string Encode(std::u32string_view cps);

bool IsWhitespace(char32_t cp);
bool ContainsWhitespace(std::string_view text);

// Splits on runs of whitespace; no empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view text);

size_t Length(std::string_view text);

}  // namespace morphann::utf8

#endif  // MORPHANN_UTF8_H_
