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

#include "morphann/translit.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "morphann/error.h"
#include "morphann/utf8.h"

namespace morphann {

namespace {

// Kept in sync with data/buckwalter.tsv (checked by a unit test).
constexpr std::pair<char32_t, char32_t> kStandardPairs[] = {
    {U'\'', 0x0621},
    {U'|', 0x0622},
    {U'>', 0x0623},
    {U'&', 0x0624},
    {U'<', 0x0625},
    {U'}', 0x0626},
    {U'A', 0x0627},
    {U'b', 0x0628},
    {U'p', 0x0629},
    {U't', 0x062A},
    {U'v', 0x062B},
    {U'j', 0x062C},
    {U'H', 0x062D},
    {U'x', 0x062E},
    {U'd', 0x062F},
    {U'*', 0x0630},
    {U'r', 0x0631},
    {U'z', 0x0632},
    {U's', 0x0633},
    {U'$', 0x0634},
    {U'S', 0x0635},
    {U'D', 0x0636},
    {U'T', 0x0637},
    {U'Z', 0x0638},
    {U'E', 0x0639},
    {U'g', 0x063A},
    {U'_', 0x0640},
    {U'f', 0x0641},
    {U'q', 0x0642},
    {U'k', 0x0643},
    {U'l', 0x0644},
    {U'm', 0x0645},
    {U'n', 0x0646},
    {U'h', 0x0647},
    {U'w', 0x0648},
    {U'Y', 0x0649},
    {U'y', 0x064A},
    {U'F', 0x064B},
    {U'N', 0x064C},
    {U'K', 0x064D},
    {U'a', 0x064E},
    {U'u', 0x064F},
    {U'i', 0x0650},
    {U'~', 0x0651},
    {U'o', 0x0652},
    {U'`', 0x0670},
    {U'{', 0x0671},
    {U'P', 0x067E},
    {U'J', 0x0686},
    {U'V', 0x06A4},
    {U'G', 0x06AF},
    {U',', 0x060C},
    {U';', 0x061B},
    {U'?', 0x061F},
};

TranslitResult Convert(std::string_view text,
                       const std::map<char32_t, char32_t>& table) {
  TranslitResult result;
  const std::u32string cps = utf8::Decode(text);
  std::u32string out;
  out.reserve(cps.size());
  for (size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    auto it = table.find(cp);
    if (it != table.end()) {
      out.push_back(it->second);
      continue;
    }
    out.push_back(cp);
    if (!utf8::IsWhitespace(cp)) result.warnings.push_back({i, cp});
  }
  result.text = utf8::Encode(out);
  return result;
}

}  // namespace

TranslitTable TranslitTable::Parse(std::string_view text) {
  TranslitTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::kSchemaViolation, "invalid transliteration table",
                {{"", line_no, 0, msg}});
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) fail("expected two tab-separated columns");
    const size_t end = line.find('\t', tab + 1);
    const std::u32string bw = utf8::Decode(line.substr(0, tab));
    const std::u32string ar = utf8::Decode(
        line.substr(tab + 1, end == std::string::npos ? std::string::npos
                                                      : end - tab - 1));
    if (bw.size() != 1 || ar.size() != 1)
      fail("each column must hold exactly one character");
    if (bw[0] >= 0x80) fail("buckwalter symbol must be ASCII");
    if (!table.to_arabic_.emplace(bw[0], ar[0]).second)
      fail("duplicate buckwalter symbol");
    if (!table.to_buckwalter_.emplace(ar[0], bw[0]).second)
      fail("duplicate arabic character");
  }
  return table;
}

TranslitTable TranslitTable::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

const TranslitTable& TranslitTable::Standard() {
  static const TranslitTable table = [] {
    TranslitTable t;
    for (const auto& [bw, ar] : kStandardPairs) {
      t.to_arabic_.emplace(bw, ar);
      t.to_buckwalter_.emplace(ar, bw);
    }
    return t;
  }();
  return table;
}

TranslitResult TranslitTable::BuckwalterToArabic(std::string_view text) const {
  return Convert(text, to_arabic_);
}

TranslitResult TranslitTable::ArabicToBuckwalter(std::string_view text) const {
  return Convert(text, to_buckwalter_);
}

std::filesystem::path StandardTablePath() {
  return std::filesystem::path(MORPHANN_DATA_DIR) / "buckwalter.tsv";
}

std::string BwToAr(std::string_view buckwalter) {
  return TranslitTable::Standard().BuckwalterToArabic(buckwalter).text;
}

std::string ArToBw(std::string_view arabic) {
  return TranslitTable::Standard().ArabicToBuckwalter(arabic).text;
}

}  // namespace morphann
