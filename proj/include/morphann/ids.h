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

#ifndef MORPHANN_IDS_H_
#define MORPHANN_IDS_H_

#include <compare>
#include <functional>
#include <ostream>
#include <string>

namespace morphann {

// Opaque string identifier, distinct per tag type so that a token id can
// not be passed where a document id is expected.
template <typename Tag>
class Id {
 public:
  Id() = default;
  explicit Id(std::string value) : value_(std::move(value)) {}

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend auto operator<=>(const Id&, const Id&) = default;
  friend bool operator==(const Id&, const Id&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Id& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

using TokenId = Id<struct TokenIdTag>;
using SentenceId = Id<struct SentenceIdTag>;
using DocumentId = Id<struct DocumentIdTag>;
using UserId = Id<struct UserIdTag>;

}  // namespace morphann

template <typename Tag>
struct std::hash<morphann::Id<Tag>> {
  size_t operator()(const morphann::Id<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

#endif  // MORPHANN_IDS_H_
