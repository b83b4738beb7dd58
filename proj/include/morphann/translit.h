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

#ifndef MORPHANN_TRANSLIT_H_
#define MORPHANN_TRANSLIT_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace morphann {

// Character not covered by the table; passed through unchanged.
struct TranslitWarning {
  size_t offset = 0;  // codepoint index in the input
  char32_t codepoint = 0;

  friend bool operator==(const TranslitWarning&, const TranslitWarning&) = default;
};

struct TranslitResult {
  std::string text;
  std::vector<TranslitWarning> warnings;
};

// Bijection between Buckwalter ASCII symbols and Arabic codepoints.
//
// Table files are UTF-8 text with one pair per line: the Buckwalter
// symbol, a tab, the Arabic character. Blank lines and lines starting
// with "#" are ignored. Loading rejects duplicates on either side.
class TranslitTable {
 public:
  // The standard scheme, identical to data/buckwalter.tsv.
  static const TranslitTable& Standard();
  static TranslitTable Parse(std::string_view text);
  static TranslitTable Load(const std::filesystem::path& path);

  size_t size() const { return to_arabic_.size(); }
  const std::map<char32_t, char32_t>& to_arabic() const { return to_arabic_; }
  const std::map<char32_t, char32_t>& to_buckwalter() const {
    return to_buckwalter_;
  }

  // Whitespace passes through silently; every other unmapped codepoint
  // passes through with a warning.
  TranslitResult BuckwalterToArabic(std::string_view text) const;
  TranslitResult ArabicToBuckwalter(std::string_view text) const;

 private:
  std::map<char32_t, char32_t> to_arabic_;
  std::map<char32_t, char32_t> to_buckwalter_;
};

std::filesystem::path StandardTablePath();

// Convenience wrappers over the standard table that drop warnings.
std::string BwToAr(std::string_view buckwalter);
std::string ArToBw(std::string_view arabic);

}  // namespace morphann

#endif  // MORPHANN_TRANSLIT_H_
