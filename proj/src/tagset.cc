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

#include "morphann/tagset.h"

#include <fstream>
#include <sstream>

#include "morphann/error.h"
#include "morphann/json.h"

namespace morphann {

bool TagSet::has_tag(std::string_view tag) const {
  return tags.find(std::string(tag)) != tags.end();
}

bool TagSet::allows_feature(std::string_view tag, std::string_view key) const {
  auto it = features_per_tag.find(std::string(tag));
  if (it == features_per_tag.end()) return false;
  return it->second.count(std::string(key)) > 0;
}

bool TagSet::allows_value(std::string_view key, std::string_view value) const {
  auto it = feature_values.find(std::string(key));
  if (it == feature_values.end()) return true;
  return it->second.count(std::string(value)) > 0;
}

TagSet TagSet::without_tag(std::string_view tag) const {
  TagSet copy = *this;
  copy.tags.erase(std::string(tag));
  copy.features_per_tag.erase(std::string(tag));
  return copy;
}

namespace {

std::set<std::string> StringSet(const Json& j, const std::string& path,
                                std::vector<Diagnostic>& diags) {
  std::set<std::string> out;
  if (!j.is_array()) {
    diags.push_back({path, 0, 0, "expected an array of strings"});
    return out;
  }
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) {
      diags.push_back({path + "/" + std::to_string(i), 0, 0, "expected a string"});
      continue;
    }
    out.insert(j[i].get<std::string>());
  }
  return out;
}

}  // namespace

TagSet ParseTagSet(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchemaViolation, "tagset is not valid JSON",
                {{"", 0, 0, e.what()}});
  }
  std::vector<Diagnostic> diags;
  TagSet ts;
  if (!j.is_object()) {
    throw Error(ErrorCode::kSchemaViolation, "tagset must be a JSON object",
                {{"", 0, 0, "expected object"}});
  }
  if (!j.contains("name") || !j["name"].is_string()) {
    diags.push_back({"/name", 0, 0, "required string"});
  } else {
    ts.name = j["name"].get<std::string>();
  }
  if (!j.contains("tags")) {
    diags.push_back({"/tags", 0, 0, "required"});
  } else {
    ts.tags = StringSet(j["tags"], "/tags", diags);
    if (ts.tags.empty()) diags.push_back({"/tags", 0, 0, "must not be empty"});
  }
  if (j.contains("features_per_tag")) {
    const Json& fpt = j["features_per_tag"];
    if (!fpt.is_object()) {
      diags.push_back({"/features_per_tag", 0, 0, "expected object"});
    } else {
      for (const auto& [tag, keys] : fpt.items()) {
        const std::string path = "/features_per_tag/" + tag;
        if (!ts.tags.count(tag))
          diags.push_back({path, 0, 0, "tag '" + tag + "' is not in tags"});
        ts.features_per_tag[tag] = StringSet(keys, path, diags);
      }
    }
  }
  if (j.contains("feature_values")) {
    const Json& fv = j["feature_values"];
    if (!fv.is_object()) {
      diags.push_back({"/feature_values", 0, 0, "expected object"});
    } else {
      for (const auto& [key, values] : fv.items()) {
        ts.feature_values[key] =
            StringSet(values, "/feature_values/" + key, diags);
      }
    }
  }
  if (!diags.empty()) {
    throw Error(ErrorCode::kSchemaViolation, "invalid tagset", std::move(diags));
  }
  return ts;
}

TagSet LoadTagSet(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open tagset " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseTagSet(ss.str());
}

std::string TagSetToJson(const TagSet& tagset) {
  Json j{{"name", tagset.name},
         {"tags", tagset.tags},
         {"features_per_tag", tagset.features_per_tag},
         {"feature_values", tagset.feature_values}};
  return j.dump(2);
}

std::filesystem::path DefaultTagSetPath() {
  return std::filesystem::path(MORPHANN_DATA_DIR) / "tagset_default.json";
}

std::string_view ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUnknownTag: return "unknown tag";
    case ViolationKind::kFeatureNotAllowed: return "feature not allowed";
    case ViolationKind::kFeatureValueNotAllowed: return "feature value not allowed";
    case ViolationKind::kEmptySegment: return "empty segment";
    case ViolationKind::kSegmentationMismatch: return "segmentation mismatch";
  }
  return "?";
}

bool ValidationResult::has(ViolationKind kind) const {
  for (const auto& v : violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

namespace {

std::string StripPlus(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c != '+') out.push_back(c);
  }
  return out;
}

}  // namespace

MorphAnnotation StripBoundaryMarkers(MorphAnnotation ann) {
  for (auto& s : ann.proclitics) s.surface = StripPlus(s.surface);
  ann.baseword.surface = StripPlus(ann.baseword.surface);
  for (auto& s : ann.enclitics) s.surface = StripPlus(s.surface);
  return ann;
}

ValidationResult ValidateAnnotation(const MorphAnnotation& ann,
                                    std::string_view token_surface,
                                    const TagSet& tagset) {
  ValidationResult result;
  auto check_segment = [&](const Segment& seg, const std::string& where) {
    if (StripPlus(seg.surface).empty()) {
      result.violations.push_back(
          {ViolationKind::kEmptySegment, where, where + ": empty surface"});
    }
    if (!tagset.has_tag(seg.pos)) {
      result.violations.push_back(
          {ViolationKind::kUnknownTag, where,
           where + ": unknown tag '" + seg.pos + "'"});
    }
    for (const auto& [key, value] : seg.features) {
      if (!tagset.allows_feature(seg.pos, key)) {
        result.violations.push_back(
            {ViolationKind::kFeatureNotAllowed, where,
             where + ": feature '" + key + "' not allowed for tag '" + seg.pos +
                 "'"});
      } else if (!tagset.allows_value(key, value)) {
        result.violations.push_back(
            {ViolationKind::kFeatureValueNotAllowed, where,
             where + ": value '" + value + "' not allowed for feature '" + key +
                 "'"});
      }
    }
  };
  for (size_t i = 0; i < ann.proclitics.size(); ++i)
    check_segment(ann.proclitics[i], "proclitics[" + std::to_string(i) + "]");
  check_segment(ann.baseword, "baseword");
  for (size_t i = 0; i < ann.enclitics.size(); ++i)
    check_segment(ann.enclitics[i], "enclitics[" + std::to_string(i) + "]");

  std::string joined;
  for (const Segment* s : ann.segments()) joined += StripPlus(s->surface);
  if (joined != token_surface) {
    result.violations.push_back(
        {ViolationKind::kSegmentationMismatch, "",
         "segmentation mismatch: segments join to '" + joined +
             "' but the token is '" + std::string(token_surface) + "'"});
  }
  return result;
}

}  // namespace morphann
