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

#include "morphann/exchange.h"

#include <functional>
#include <set>

#include "morphann/edit_engine.h"
#include "morphann/error.h"
#include "morphann/json.h"
#include "morphann/utf8.h"

namespace morphann {

std::string ExportDocument(const Document& d) {
  Json sentences = Json::array();
  for (const auto& s : d.sentences) {
    Json js = s;
    // Positions and provenance are derivable; keep raw tokens minimal.
    Json raw = Json::array();
    for (const auto& t : s.raw_tokens)
      raw.push_back(Json{{"id", t.id}, {"surface", t.surface}});
    js["raw_tokens"] = std::move(raw);
    sentences.push_back(std::move(js));
  }
  Json meta = DocumentSummaryJson(d);
  meta.erase("sentence_count");
  Json root{{"schema_version", kExportSchemaVersion},
            {"document", std::move(meta)},
            {"sentences", std::move(sentences)}};
  return root.dump(2) + "\n";
}

namespace {

// Collects diagnostics while walking an untrusted JSON tree.
class Checker {
 public:
  void Fail(const std::string& path, const std::string& message) {
    diags_.push_back({path, 0, 0, message});
  }
  const std::vector<Diagnostic>& diags() const { return diags_; }

  const Json* Field(const Json& obj, const std::string& path,
                    const char* key, Json::value_t type, bool required) {
    const std::string p = path + "/" + key;
    if (!obj.is_object() || !obj.contains(key)) {
      if (required) Fail(p, "required field missing");
      return nullptr;
    }
    const Json& v = obj.at(key);
    const bool ok =
        v.type() == type ||
        (type == Json::value_t::number_unsigned && v.is_number_integer() &&
         v.get<int64_t>() >= 0) ||
        (type == Json::value_t::number_float && v.is_number());
    if (!ok) {
      Fail(p, std::string("expected ") + TypeName(type));
      return nullptr;
    }
    return &v;
  }

  std::string String(const Json& obj, const std::string& path, const char* key,
                     bool required, std::string fallback = {}) {
    const Json* v = Field(obj, path, key, Json::value_t::string, required);
    return v ? v->get<std::string>() : fallback;
  }

  std::vector<std::string> Strings(const Json& obj, const std::string& path,
                                   const char* key) {
    std::vector<std::string> out;
    const Json* v = Field(obj, path, key, Json::value_t::array, true);
    if (!v) return out;
    for (size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_string()) {
        Fail(path + "/" + key + "/" + std::to_string(i), "expected string");
        continue;
      }
      out.push_back((*v)[i].get<std::string>());
    }
    return out;
  }

  template <typename T>
  std::optional<T> Parse(const std::string& path, const std::function<T()>& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      Fail(path, e.what());
    } catch (const Json::exception& e) {
      Fail(path, e.what());
    }
    return std::nullopt;
  }

 private:
  static const char* TypeName(Json::value_t t) {
    switch (t) {
      case Json::value_t::string: return "string";
      case Json::value_t::array: return "array";
      case Json::value_t::object: return "object";
      case Json::value_t::boolean: return "boolean";
      case Json::value_t::number_unsigned: return "non-negative integer";
      case Json::value_t::number_float: return "number";
      default: return "value";
    }
  }

  std::vector<Diagnostic> diags_;
};

Diagnostic LocateParseError(std::string_view text, const Json::parse_error& e) {
  int line = 1, column = 1;
  const size_t end = std::min(text.size(), e.byte == 0 ? 0 : e.byte - 1);
  for (size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return Diagnostic{"", line, column, e.what()};
}

void CheckSegmentTags(Checker& c, const MorphAnnotation& ann,
                      const std::string& path, const TagSet& tagset) {
  auto check = [&](const Segment& seg, const std::string& p) {
    if (!tagset.has_tag(seg.pos)) {
      c.Fail(p + "/pos", "unknown POS tag '" + seg.pos + "' (not in tagset '" +
                             tagset.name + "')");
    }
    for (const auto& [key, value] : seg.features) {
      if (!tagset.allows_feature(seg.pos, key)) {
        c.Fail(p + "/features/" + key,
               "feature '" + key + "' not allowed for tag '" + seg.pos + "'");
      } else if (!tagset.allows_value(key, value)) {
        c.Fail(p + "/features/" + key,
               "value '" + value + "' not allowed for feature '" + key + "'");
      }
    }
  };
  for (size_t i = 0; i < ann.proclitics.size(); ++i)
    check(ann.proclitics[i], path + "/proclitics/" + std::to_string(i));
  check(ann.baseword, path + "/baseword");
  for (size_t i = 0; i < ann.enclitics.size(); ++i)
    check(ann.enclitics[i], path + "/enclitics/" + std::to_string(i));
}

// Largest "<sentence>.t<n>" serial + 1, so generated ids never collide.
uint64_t SerialFloor(const SentenceId& sid, const std::set<TokenId>& ids) {
  const std::string prefix = sid.str() + ".t";
  uint64_t floor = 0;
  for (const auto& id : ids) {
    const std::string& s = id.str();
    if (s.rfind(prefix, 0) != 0) continue;
    try {
      size_t used = 0;
      const uint64_t n = std::stoull(s.substr(prefix.size()), &used);
      if (used == s.size() - prefix.size()) floor = std::max(floor, n + 1);
    } catch (const std::exception&) {
    }
  }
  return floor;
}

Sentence ReadSentence(Checker& c, const Json& js, const std::string& path,
                      size_t index, const TagSet& tagset) {
  Sentence s;
  s.id = SentenceId(c.String(js, path, "id", false, "s" + std::to_string(index)));
  std::set<TokenId> known;

  std::vector<std::pair<std::string, bool>> raw_surfaces;  // surface, has id
  std::vector<std::string> raw_ids;
  if (const Json* raw = c.Field(js, path, "raw_tokens", Json::value_t::array, true)) {
    for (size_t i = 0; i < raw->size(); ++i) {
      const std::string p = path + "/raw_tokens/" + std::to_string(i);
      const std::string surface = c.String((*raw)[i], p, "surface", true);
      if (surface.empty() || utf8::ContainsWhitespace(surface))
        c.Fail(p + "/surface", "surface must be non-empty without whitespace");
      raw_ids.push_back(c.String((*raw)[i], p, "id", false));
      raw_surfaces.emplace_back(surface, !raw_ids.back().empty());
      if (!raw_ids.back().empty() && !known.insert(TokenId(raw_ids.back())).second)
        c.Fail(p + "/id", "duplicate token id '" + raw_ids.back() + "'");
    }
  }

  if (const Json* log = c.Field(js, path, "edit_log", Json::value_t::object, true)) {
    const std::string lp = path + "/edit_log";
    if (const Json* ops = c.Field(*log, lp, "ops", Json::value_t::array, true)) {
      for (size_t i = 0; i < ops->size(); ++i) {
        const std::string op_path = lp + "/ops/" + std::to_string(i);
        const Json& jo = (*ops)[i];
        auto op = c.Parse<EditOp>(op_path, [&] { return jo.get<EditOp>(); });
        if (!op) continue;
        if (auto problem = CheckEditOpShape(*op)) {
          c.Fail(op_path, *problem);
          continue;
        }
        for (const auto& r : op->results) {
          if (op->kind != EditKind::kModify) known.insert(r);
        }
        s.edit_log.ops.push_back(std::move(*op));
      }
    }
    s.edit_log.cursor = s.edit_log.ops.size();
    if (const Json* cur = c.Field(*log, lp, "cursor",
                                  Json::value_t::number_unsigned, false)) {
      const auto v = cur->get<uint64_t>();
      if (v > s.edit_log.ops.size()) {
        c.Fail(lp + "/cursor", "cursor beyond the end of the log");
      } else {
        s.edit_log.cursor = v;
      }
    }
  }

  if (const Json* n = c.Field(js, path, "next_token_serial",
                              Json::value_t::number_unsigned, false)) {
    s.next_token_serial = n->get<uint64_t>();
  }
  s.next_token_serial = std::max(s.next_token_serial, SerialFloor(s.id, known));
  for (size_t i = 0; i < raw_surfaces.size(); ++i) {
    Token t;
    t.id = raw_surfaces[i].second ? TokenId(raw_ids[i]) : TokenId();
    t.surface = raw_surfaces[i].first;
    t.position = static_cast<int>(i);
    s.raw_tokens.push_back(std::move(t));
  }
  for (auto& t : s.raw_tokens) {
    if (!t.id.empty()) continue;
    do {
      t.id = s.allocate_token_id();
    } while (known.count(t.id));
    known.insert(t.id);
  }

  const size_t diags_before = c.diags().size();
  try {
    // Replay must succeed for the whole log, redoable suffix included.
    Replay(s.raw_tokens, s.edit_log.ops);
    s.current_tokens = ReplayApplied(s);
  } catch (const Error& e) {
    c.Fail(path + "/edit_log", std::string("log does not replay: ") + e.what());
  }
  if (c.diags().size() == diags_before && js.contains("current_tokens")) {
    auto listed = c.Parse<std::vector<Token>>(path + "/current_tokens", [&] {
      return js.at("current_tokens").get<std::vector<Token>>();
    });
    if (listed && *listed != s.current_tokens) {
      c.Fail(path + "/current_tokens", "does not match the replayed edit log");
    }
  }

  if (const Json* anns = c.Field(js, path, "annotations", Json::value_t::array, false)) {
    for (size_t i = 0; i < anns->size(); ++i) {
      const std::string ap = path + "/annotations/" + std::to_string(i);
      const Json& ja = (*anns)[i];
      const std::string tid = c.String(ja, ap, "token_id", true);
      auto rec = c.Parse<AnnotationRecord>(ap, [&] { return ja.get<AnnotationRecord>(); });
      if (!rec) continue;
      if (!known.count(TokenId(tid))) {
        c.Fail(ap + "/token_id", "unknown token id '" + tid + "'");
        continue;
      }
      CheckSegmentTags(c, rec->annotation, ap + "/annotation", tagset);
      const Token* live = s.find_current(TokenId(tid));
      if (live && !rec->stale) {
        const auto v = ValidateAnnotation(rec->annotation, *live, tagset);
        if (v.has(ViolationKind::kSegmentationMismatch))
          c.Fail(ap + "/annotation", "segments do not join to the token surface");
      }
      s.annotations[TokenId(tid)] = std::move(*rec);
    }
  }

  if (const Json* sugg = c.Field(js, path, "suggestions", Json::value_t::array, false)) {
    for (size_t i = 0; i < sugg->size(); ++i) {
      const std::string sp = path + "/suggestions/" + std::to_string(i);
      const Json& jsg = (*sugg)[i];
      const std::string tid = c.String(jsg, sp, "token_id", true);
      auto list = c.Parse<std::vector<Analysis>>(sp + "/analyses", [&] {
        return jsg.at("analyses").get<std::vector<Analysis>>();
      });
      if (list) s.suggestions[TokenId(tid)] = std::move(*list);
    }
  }
  return s;
}

}  // namespace

Document ImportDocument(std::string_view text, const TagSet& tagset) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchemaViolation, "export file is not valid JSON",
                {LocateParseError(text, e)});
  }
  Checker c;
  Document d;
  if (!root.is_object()) {
    throw Error(ErrorCode::kSchemaViolation, "export file must be a JSON object",
                {{"", 1, 1, "expected object"}});
  }
  if (const Json* v = c.Field(root, "", "schema_version",
                              Json::value_t::number_unsigned, true)) {
    if (v->get<int64_t>() != kExportSchemaVersion)
      c.Fail("/schema_version", "unsupported schema version " + v->dump());
  }
  if (const Json* meta = c.Field(root, "", "document", Json::value_t::object, true)) {
    const std::string mp = "/document";
    d.id = DocumentId(c.String(*meta, mp, "id", false));
    d.title = c.String(*meta, mp, "title", true);
    d.dialect = c.String(*meta, mp, "dialect", true);
    const std::string status = c.String(*meta, mp, "status", false, "uploaded");
    if (auto st = c.Parse<DocumentStatus>(mp + "/status", [&] {
          return ParseDocumentStatus(status);
        })) {
      d.status = *st;
    }
    if (meta->contains("assignee") && !meta->at("assignee").is_null())
      d.assignee = UserId(c.String(*meta, mp, "assignee", false));
    if (const Json* v = c.Field(*meta, mp, "version",
                                Json::value_t::number_unsigned, false)) {
      d.version = v->get<uint64_t>();
    }
    d.tagset = c.String(*meta, mp, "tagset", false, tagset.name);
    d.review_note = c.String(*meta, mp, "review_note", false);
  }
  if (const Json* sentences =
          c.Field(root, "", "sentences", Json::value_t::array, true)) {
    std::set<SentenceId> seen;
    for (size_t i = 0; i < sentences->size(); ++i) {
      const std::string sp = "/sentences/" + std::to_string(i);
      const Json& js = (*sentences)[i];
      if (!js.is_object()) {
        c.Fail(sp, "expected object");
        continue;
      }
      Sentence s = ReadSentence(c, js, sp, i, tagset);
      if (!seen.insert(s.id).second)
        c.Fail(sp + "/id", "duplicate sentence id '" + s.id.str() + "'");
      d.sentences.push_back(std::move(s));
    }
  }
  if (!c.diags().empty()) {
    std::string summary = c.diags().front().path + ": " + c.diags().front().message;
    throw Error(ErrorCode::kSchemaViolation,
                "export file failed validation (" + summary + ")", c.diags());
  }
  return d;
}

}  // namespace morphann
