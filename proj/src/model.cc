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

#include "morphann/model.h"

#include <algorithm>

#include "morphann/error.h"
#include "morphann/utf8.h"

namespace morphann {

std::optional<std::string> CheckEditOpShape(const EditOp& op) {
  auto has_empty = [](const std::vector<std::string>& v) {
    return std::any_of(v.begin(), v.end(),
                       [](const std::string& s) { return s.empty(); });
  };
  switch (op.kind) {
    case EditKind::kModify:
      if (op.targets.size() != 1) return "modify needs exactly one target";
      if (op.before.size() != 1 || op.after.size() != 1)
        return "modify needs one before and one after surface";
      if (op.before[0] == op.after[0]) return "modify must change the surface";
      if (op.results != op.targets) return "modify keeps the target id";
      break;
    case EditKind::kSplit:
      if (op.targets.size() != 1) return "split needs exactly one target";
      if (op.before.size() != 1) return "split needs one before surface";
      if (op.after.size() < 2) return "split needs at least two parts";
      if (op.results.size() != op.after.size())
        return "split needs one result id per part";
      break;
    case EditKind::kMerge:
      if (op.targets.size() < 2) return "merge needs at least two targets";
      if (op.before.size() != op.targets.size())
        return "merge needs one before surface per target";
      if (op.after.size() != 1) return "merge produces exactly one surface";
      if (op.results.size() != 1) return "merge produces exactly one id";
      break;
  }
  if (has_empty(op.before) || has_empty(op.after)) return "empty surface";
  return std::nullopt;
}

std::vector<const Segment*> MorphAnnotation::segments() const {
  std::vector<const Segment*> out;
  out.reserve(proclitics.size() + 1 + enclitics.size());
  for (const auto& s : proclitics) out.push_back(&s);
  out.push_back(&baseword);
  for (const auto& s : enclitics) out.push_back(&s);
  return out;
}

std::vector<std::string> MorphAnnotation::segment_surfaces() const {
  std::vector<std::string> out;
  for (const Segment* s : segments()) out.push_back(s->surface);
  return out;
}

bool MorphAnnotation::same_content(const MorphAnnotation& other) const {
  return proclitics == other.proclitics && baseword == other.baseword &&
         enclitics == other.enclitics && lemma == other.lemma &&
         gloss == other.gloss;
}

std::string DisplaySegmentation(const MorphAnnotation& ann) {
  std::string out;
  for (const auto& p : ann.proclitics) out += p.surface + "+ ";
  out += ann.baseword.surface;
  for (const auto& e : ann.enclitics) out += " +" + e.surface;
  return out;
}

bool Analysis::is_fallback() const { return provider == kFallbackProvider; }

const Token* Sentence::find_current(const TokenId& id) const {
  for (const auto& t : current_tokens) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

const AnnotationRecord* Sentence::annotation_for(const TokenId& id) const {
  auto it = annotations.find(id);
  return it == annotations.end() ? nullptr : &it->second;
}

TokenId Sentence::allocate_token_id() {
  return TokenId(id.str() + ".t" + std::to_string(next_token_serial++));
}

namespace {

std::string JoinSurfaces(const std::vector<Token>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.surface;
  }
  return out;
}

}  // namespace

std::string Sentence::text() const { return JoinSurfaces(current_tokens); }
std::string Sentence::raw_text() const { return JoinSurfaces(raw_tokens); }

bool CanTransition(DocumentStatus from, DocumentStatus to) {
  using S = DocumentStatus;
  switch (from) {
    case S::kUploaded: return to == S::kAssigned;
    case S::kAssigned: return to == S::kInProgress;
    case S::kInProgress: return to == S::kSubmitted;
    case S::kSubmitted: return to == S::kApproved || to == S::kRejected;
    case S::kRejected: return to == S::kInProgress || to == S::kAssigned;
    case S::kApproved: return false;
  }
  return false;
}

void TransitionTo(Document& d, DocumentStatus to) {
  if (!CanTransition(d.status, to)) {
    throw Error(ErrorCode::kInvalidTransition,
                "document " + d.id.str() + " cannot go from " +
                    std::string(ToString(d.status)) + " to " +
                    std::string(ToString(to)));
  }
  d.status = to;
}

void BeginWork(Document& d) {
  if (d.status == DocumentStatus::kInProgress) return;
  if (d.status == DocumentStatus::kAssigned ||
      d.status == DocumentStatus::kRejected) {
    TransitionTo(d, DocumentStatus::kInProgress);
    return;
  }
  throw Error(ErrorCode::kInvalidTransition,
              "document " + d.id.str() + " is " +
                  std::string(ToString(d.status)) + " and cannot be changed");
}

Sentence* Document::find_sentence(const SentenceId& sid) {
  for (auto& s : sentences) {
    if (s.id == sid) return &s;
  }
  return nullptr;
}

const Sentence* Document::find_sentence(const SentenceId& sid) const {
  for (const auto& s : sentences) {
    if (s.id == sid) return &s;
  }
  return nullptr;
}

size_t Document::raw_token_count() const {
  size_t n = 0;
  for (const auto& s : sentences) n += s.raw_tokens.size();
  return n;
}

size_t Document::current_token_count() const {
  size_t n = 0;
  for (const auto& s : sentences) n += s.current_tokens.size();
  return n;
}

Sentence MakeSentence(SentenceId id, const std::vector<std::string>& surfaces) {
  Sentence s;
  s.id = std::move(id);
  for (size_t i = 0; i < surfaces.size(); ++i) {
    if (surfaces[i].empty() || utf8::ContainsWhitespace(surfaces[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "token surface must be non-empty and contain no whitespace");
    }
    Token t;
    t.id = s.allocate_token_id();
    t.surface = surfaces[i];
    t.position = static_cast<int>(i);
    t.provenance = Provenance::kRaw;
    s.raw_tokens.push_back(std::move(t));
  }
  s.current_tokens = s.raw_tokens;
  return s;
}

namespace {

template <typename E, size_t N>
E ParseEnum(std::string_view name, const std::pair<E, std::string_view> (&table)[N],
            std::string_view what) {
  for (const auto& [value, text] : table) {
    if (text == name) return value;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown " + std::string(what) + " '" + std::string(name) + "'");
}

template <typename E, size_t N>
std::string_view EnumName(E value, const std::pair<E, std::string_view> (&table)[N]) {
  for (const auto& [v, text] : table) {
    if (v == value) return text;
  }
  return "?";
}

constexpr std::pair<Provenance, std::string_view> kProvenanceNames[] = {
    {Provenance::kRaw, "raw"},
    {Provenance::kEdited, "edited"},
    {Provenance::kSplitChild, "split-child"},
    {Provenance::kMergeResult, "merge-result"},
};

constexpr std::pair<EditKind, std::string_view> kEditKindNames[] = {
    {EditKind::kModify, "modify"},
    {EditKind::kSplit, "split"},
    {EditKind::kMerge, "merge"},
};

constexpr std::pair<AnnotationSource, std::string_view> kSourceNames[] = {
    {AnnotationSource::kSuggested, "suggested"},
    {AnnotationSource::kHuman, "human"},
    {AnnotationSource::kBulkApplied, "bulk_applied"},
};

constexpr std::pair<DocumentStatus, std::string_view> kStatusNames[] = {
    {DocumentStatus::kUploaded, "uploaded"},
    {DocumentStatus::kAssigned, "assigned"},
    {DocumentStatus::kInProgress, "in_progress"},
    {DocumentStatus::kSubmitted, "submitted"},
    {DocumentStatus::kApproved, "approved"},
    {DocumentStatus::kRejected, "rejected"},
};

constexpr std::pair<Role, std::string_view> kRoleNames[] = {
    {Role::kAnnotator, "annotator"},
    {Role::kLead, "lead"},
};

}  // namespace

std::string_view ToString(Provenance p) { return EnumName(p, kProvenanceNames); }
std::string_view ToString(EditKind k) { return EnumName(k, kEditKindNames); }
std::string_view ToString(AnnotationSource s) { return EnumName(s, kSourceNames); }
std::string_view ToString(DocumentStatus s) { return EnumName(s, kStatusNames); }
std::string_view ToString(Role r) { return EnumName(r, kRoleNames); }

Provenance ParseProvenance(std::string_view name) {
  return ParseEnum(name, kProvenanceNames, "provenance");
}
EditKind ParseEditKind(std::string_view name) {
  return ParseEnum(name, kEditKindNames, "edit kind");
}
AnnotationSource ParseAnnotationSource(std::string_view name) {
  return ParseEnum(name, kSourceNames, "annotation source");
}
DocumentStatus ParseDocumentStatus(std::string_view name) {
  return ParseEnum(name, kStatusNames, "document status");
}
Role ParseRole(std::string_view name) { return ParseEnum(name, kRoleNames, "role"); }

}  // namespace morphann
