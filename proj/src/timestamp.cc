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

#include "morphann/timestamp.h"

#include <cctype>
#include <cstdio>

#include "morphann/error.h"

namespace morphann {

using std::chrono::days;
using std::chrono::milliseconds;
using std::chrono::sys_days;

Timestamp Now() {
  return std::chrono::time_point_cast<milliseconds>(
      std::chrono::system_clock::now());
}

std::string FormatRfc3339(Timestamp t) {
  const auto day = std::chrono::floor<days>(t);
  const std::chrono::year_month_day ymd{sys_days{day}};
  auto rem = t - day;
  const auto h = std::chrono::duration_cast<std::chrono::hours>(rem);
  rem -= h;
  const auto m = std::chrono::duration_cast<std::chrono::minutes>(rem);
  rem -= m;
  const auto s = std::chrono::duration_cast<std::chrono::seconds>(rem);
  rem -= s;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(h.count()),
                static_cast<int>(m.count()), static_cast<int>(s.count()),
                static_cast<int>(rem.count()));
  return buf;
}

namespace {

[[noreturn]] void Malformed(std::string_view text) {
  throw Error(ErrorCode::kInvalidArgument,
              "malformed RFC 3339 timestamp: '" + std::string(text) + "'");
}

int Digits(std::string_view text, size_t pos, size_t count) {
  if (pos + count > text.size()) Malformed(text);
  int v = 0;
  for (size_t i = pos; i < pos + count; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) Malformed(text);
    v = v * 10 + (text[i] - '0');
  }
  return v;
}

void Expect(std::string_view text, size_t pos, std::string_view options) {
  if (pos >= text.size() || options.find(text[pos]) == std::string_view::npos)
    Malformed(text);
}

}  // namespace

Timestamp ParseRfc3339(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS[.fff...](Z|+HH:MM|-HH:MM)
  const int year = Digits(text, 0, 4);
  Expect(text, 4, "-");
  const int month = Digits(text, 5, 2);
  Expect(text, 7, "-");
  const int day = Digits(text, 8, 2);
  Expect(text, 10, "Tt ");
  const int hour = Digits(text, 11, 2);
  Expect(text, 13, ":");
  const int minute = Digits(text, 14, 2);
  Expect(text, 16, ":");
  const int second = Digits(text, 17, 2);
  size_t pos = 19;
  int millis = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    int scale = 100;
    size_t start = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      millis += (text[pos] - '0') * scale;
      scale /= 10;
      ++pos;
    }
    if (pos == start) Malformed(text);
  }
  int offset_minutes = 0;
  Expect(text, pos, "Zz+-");
  if (text[pos] == 'Z' || text[pos] == 'z') {
    ++pos;
  } else {
    const int sign = text[pos] == '-' ? -1 : 1;
    const int oh = Digits(text, pos + 1, 2);
    Expect(text, pos + 3, ":");
    const int om = Digits(text, pos + 4, 2);
    offset_minutes = sign * (oh * 60 + om);
    pos += 6;
  }
  if (pos != text.size()) Malformed(text);

  const std::chrono::year_month_day ymd{
      std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
      std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 60) Malformed(text);
  Timestamp t{sys_days{ymd}.time_since_epoch()};
  t += std::chrono::hours{hour} + std::chrono::minutes{minute} +
       std::chrono::seconds{second} + milliseconds{millis};
  t -= std::chrono::minutes{offset_minutes};
  return t;
}

}  // namespace morphann
