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

#ifndef MORPHANN_JSON_H_
#define MORPHANN_JSON_H_

// nlohmann::json converters for the domain model. These trust their input
// beyond what nlohmann itself checks; untrusted files go through the
// validating reader in exchange.h instead.

#include "json.hpp"
#include "morphann/model.h"

namespace morphann {

using Json = nlohmann::json;

template <typename Tag>
void to_json(Json& j, const Id<Tag>& id) {
  j = id.str();
}

template <typename Tag>
void from_json(const Json& j, Id<Tag>& id) {
  id = Id<Tag>(j.get<std::string>());
}

void to_json(Json& j, const Token& t);
void from_json(const Json& j, Token& t);
void to_json(Json& j, const EditOp& op);
void from_json(const Json& j, EditOp& op);
void to_json(Json& j, const EditLog& log);
void from_json(const Json& j, EditLog& log);
void to_json(Json& j, const Segment& s);
void from_json(const Json& j, Segment& s);
void to_json(Json& j, const MorphAnnotation& a);
void from_json(const Json& j, MorphAnnotation& a);
void to_json(Json& j, const AnnotationRecord& r);
void from_json(const Json& j, AnnotationRecord& r);
void to_json(Json& j, const Analysis& a);
void from_json(const Json& j, Analysis& a);
void to_json(Json& j, const Sentence& s);
void from_json(const Json& j, Sentence& s);
void to_json(Json& j, const Document& d);
void from_json(const Json& j, Document& d);

// Document metadata without sentences.
Json DocumentSummaryJson(const Document& d);

// One JSON object per line with exactly the fields kind, targets, before,
// after, author, timestamp.
std::string EditLogJsonLines(const EditLog& log, bool applied_only = false);

}  // namespace morphann

#endif  // MORPHANN_JSON_H_
