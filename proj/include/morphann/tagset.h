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

#ifndef MORPHANN_TAGSET_H_
#define MORPHANN_TAGSET_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "morphann/model.h"

namespace morphann {

// Inventory of POS tags and the morphological features each tag admits.
// Loaded from JSON with the fields name, tags, features_per_tag and
// feature_values; see docs/formats.md.
struct TagSet {
  std::string name;
  std::set<std::string> tags;
  std::map<std::string, std::set<std::string>> features_per_tag;
  std::map<std::string, std::set<std::string>> feature_values;

  bool has_tag(std::string_view tag) const;
  bool allows_feature(std::string_view tag, std::string_view key) const;
  // True when the key has no declared value set or the value is in it.
  bool allows_value(std::string_view key, std::string_view value) const;

  // Copy with `tag` removed from tags and features_per_tag.
  TagSet without_tag(std::string_view tag) const;

  friend bool operator==(const TagSet&, const TagSet&) = default;
};

// Throws Error(kSchemaViolation) with JSON-pointer diagnostics.
TagSet ParseTagSet(std::string_view json_text);
TagSet LoadTagSet(const std::filesystem::path& path);
std::string TagSetToJson(const TagSet& tagset);

// The tagset shipped in data/tagset_default.json.
std::filesystem::path DefaultTagSetPath();

enum class ViolationKind {
  kUnknownTag,
  kFeatureNotAllowed,
  kFeatureValueNotAllowed,
  kEmptySegment,
  kSegmentationMismatch,
};

std::string_view ToString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  // Which segment ("proclitics[0]", "baseword", "enclitics[1]") or "" for
  // whole-annotation problems.
  std::string where;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

// Strips the display-only "+" boundary markers from segment surfaces.
MorphAnnotation StripBoundaryMarkers(MorphAnnotation ann);

// Collects every violation; never stops at the first.
ValidationResult ValidateAnnotation(const MorphAnnotation& ann,
                                    std::string_view token_surface,
                                    const TagSet& tagset);

inline ValidationResult ValidateAnnotation(const MorphAnnotation& ann,
                                           const Token& token,
                                           const TagSet& tagset) {
  return ValidateAnnotation(ann, token.surface, tagset);
}

}  // namespace morphann

#endif  // MORPHANN_TAGSET_H_
