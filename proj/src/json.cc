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

#include "morphann/json.h"

namespace morphann {

void to_json(Json& j, const Token& t) {
  j = Json{{"id", t.id},
           {"surface", t.surface},
           {"position", t.position},
           {"provenance", ToString(t.provenance)}};
}

void from_json(const Json& j, Token& t) {
  j.at("id").get_to(t.id);
  j.at("surface").get_to(t.surface);
  t.position = j.value("position", 0);
  t.provenance = ParseProvenance(j.value("provenance", std::string("raw")));
}

void to_json(Json& j, const EditOp& op) {
  j = Json{{"kind", ToString(op.kind)},
           {"targets", op.targets},
           {"before", op.before},
           {"after", op.after},
           {"results", op.results},
           {"author", op.author},
           {"timestamp", FormatRfc3339(op.timestamp)}};
}

void from_json(const Json& j, EditOp& op) {
  op.kind = ParseEditKind(j.at("kind").get<std::string>());
  j.at("targets").get_to(op.targets);
  j.at("before").get_to(op.before);
  j.at("after").get_to(op.after);
  if (j.contains("results")) {
    j.at("results").get_to(op.results);
  } else if (op.kind == EditKind::kModify) {
    op.results = op.targets;
  }
  j.at("author").get_to(op.author);
  op.timestamp = ParseRfc3339(j.at("timestamp").get<std::string>());
}

void to_json(Json& j, const EditLog& log) {
  j = Json{{"cursor", log.cursor}, {"ops", log.ops}};
}

void from_json(const Json& j, EditLog& log) {
  j.at("ops").get_to(log.ops);
  log.cursor = j.value("cursor", log.ops.size());
}

void to_json(Json& j, const Segment& s) {
  j = Json{{"surface", s.surface}, {"pos", s.pos}, {"features", s.features}};
}

void from_json(const Json& j, Segment& s) {
  j.at("surface").get_to(s.surface);
  j.at("pos").get_to(s.pos);
  s.features.clear();
  if (j.contains("features")) j.at("features").get_to(s.features);
}

void to_json(Json& j, const MorphAnnotation& a) {
  j = Json{{"proclitics", a.proclitics},
           {"baseword", a.baseword},
           {"enclitics", a.enclitics},
           {"lemma", a.lemma},
           {"gloss", a.gloss},
           {"source", ToString(a.source)}};
}

void from_json(const Json& j, MorphAnnotation& a) {
  a.proclitics.clear();
  a.enclitics.clear();
  if (j.contains("proclitics")) j.at("proclitics").get_to(a.proclitics);
  j.at("baseword").get_to(a.baseword);
  if (j.contains("enclitics")) j.at("enclitics").get_to(a.enclitics);
  a.lemma = j.value("lemma", std::string());
  a.gloss = j.value("gloss", std::string());
  a.source =
      ParseAnnotationSource(j.value("source", std::string("suggested")));
}

void to_json(Json& j, const AnnotationRecord& r) {
  j = Json{{"annotation", r.annotation},
           {"stale", r.stale},
           {"author", r.author},
           {"updated_at", FormatRfc3339(r.updated_at)}};
}

void from_json(const Json& j, AnnotationRecord& r) {
  j.at("annotation").get_to(r.annotation);
  r.stale = j.value("stale", false);
  r.author = UserId(j.value("author", std::string()));
  r.updated_at = ParseRfc3339(j.at("updated_at").get<std::string>());
}

void to_json(Json& j, const Analysis& a) {
  j = Json{{"annotation", a.annotation},
           {"dialect", a.dialect},
           {"score", a.score},
           {"provider", a.provider}};
}

void from_json(const Json& j, Analysis& a) {
  j.at("annotation").get_to(a.annotation);
  a.dialect = j.value("dialect", std::string());
  a.score = j.value("score", 0.0);
  a.provider = j.value("provider", std::string());
}

void to_json(Json& j, const Sentence& s) {
  Json annotations = Json::array();
  for (const auto& [id, rec] : s.annotations) {
    Json entry = rec;
    entry["token_id"] = id;
    annotations.push_back(std::move(entry));
  }
  Json suggestions = Json::array();
  for (const auto& [id, list] : s.suggestions) {
    suggestions.push_back(Json{{"token_id", id}, {"analyses", list}});
  }
  j = Json{{"id", s.id},
           {"raw_tokens", s.raw_tokens},
           {"current_tokens", s.current_tokens},
           {"edit_log", s.edit_log},
           {"annotations", std::move(annotations)},
           {"suggestions", std::move(suggestions)},
           {"next_token_serial", s.next_token_serial}};
}

void from_json(const Json& j, Sentence& s) {
  j.at("id").get_to(s.id);
  j.at("raw_tokens").get_to(s.raw_tokens);
  j.at("current_tokens").get_to(s.current_tokens);
  j.at("edit_log").get_to(s.edit_log);
  s.annotations.clear();
  for (const auto& entry : j.value("annotations", Json::array())) {
    s.annotations.emplace(entry.at("token_id").get<TokenId>(),
                          entry.get<AnnotationRecord>());
  }
  s.suggestions.clear();
  for (const auto& entry : j.value("suggestions", Json::array())) {
    s.suggestions.emplace(entry.at("token_id").get<TokenId>(),
                          entry.at("analyses").get<std::vector<Analysis>>());
  }
  s.next_token_serial = j.at("next_token_serial").get<uint64_t>();
}

Json DocumentSummaryJson(const Document& d) {
  Json j{{"id", d.id},
         {"title", d.title},
         {"dialect", d.dialect},
         {"status", ToString(d.status)},
         {"assignee", nullptr},
         {"version", d.version},
         {"tagset", d.tagset},
         {"review_note", d.review_note},
         {"sentence_count", d.sentences.size()}};
  if (d.assignee) j["assignee"] = *d.assignee;
  return j;
}

void to_json(Json& j, const Document& d) {
  j = DocumentSummaryJson(d);
  j.erase("sentence_count");
  j["sentences"] = d.sentences;
}

void from_json(const Json& j, Document& d) {
  j.at("id").get_to(d.id);
  d.title = j.value("title", std::string());
  d.dialect = j.value("dialect", std::string());
  d.status = ParseDocumentStatus(j.value("status", std::string("uploaded")));
  d.assignee.reset();
  if (j.contains("assignee") && !j.at("assignee").is_null())
    d.assignee = j.at("assignee").get<UserId>();
  d.version = j.value("version", uint64_t{0});
  d.tagset = j.value("tagset", std::string());
  d.review_note = j.value("review_note", std::string());
  j.at("sentences").get_to(d.sentences);
}

std::string EditLogJsonLines(const EditLog& log, bool applied_only) {
  std::string out;
  const size_t end = applied_only ? log.cursor : log.ops.size();
  for (size_t i = 0; i < end; ++i) {
    const EditOp& op = log.ops[i];
    Json line{{"kind", ToString(op.kind)},
              {"targets", op.targets},
              {"before", op.before},
              {"after", op.after},
              {"author", op.author},
              {"timestamp", FormatRfc3339(op.timestamp)}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace morphann
