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

#ifndef MORPHANN_MODEL_H_
#define MORPHANN_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "morphann/ids.h"
#include "morphann/timestamp.h"

namespace morphann {

enum class Provenance { kRaw, kEdited, kSplitChild, kMergeResult };

struct Token {
  TokenId id;
  std::string surface;
  int position = 0;
  Provenance provenance = Provenance::kRaw;

  friend bool operator==(const Token&, const Token&) = default;
};

enum class EditKind { kModify, kSplit, kMerge };

// One recorded text edit. `results` holds the ids of the tokens the edit
// produced (the target itself for modify) so that replay reproduces ids.
struct EditOp {
  EditKind kind = EditKind::kModify;
  std::vector<TokenId> targets;
  std::vector<std::string> before;
  std::vector<std::string> after;
  std::vector<TokenId> results;
  UserId author;
  Timestamp timestamp{};

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

// Returns a description of the first broken shape rule, or nullopt.
std::optional<std::string> CheckEditOpShape(const EditOp& op);

// ops[0, cursor) are applied; ops[cursor, size) can be redone.
struct EditLog {
  std::vector<EditOp> ops;
  size_t cursor = 0;

  bool can_undo() const { return cursor > 0; }
  bool can_redo() const { return cursor < ops.size(); }

  friend bool operator==(const EditLog&, const EditLog&) = default;
};

// Stored without "+" boundary markers; those are display-only.
struct Segment {
  std::string surface;
  std::string pos;
  std::map<std::string, std::string> features;

  friend bool operator==(const Segment&, const Segment&) = default;
};

enum class AnnotationSource { kSuggested, kHuman, kBulkApplied };

struct MorphAnnotation {
  std::vector<Segment> proclitics;
  Segment baseword;
  std::vector<Segment> enclitics;
  std::string lemma;
  std::string gloss;
  AnnotationSource source = AnnotationSource::kSuggested;

  // proclitics ++ [baseword] ++ enclitics
  std::vector<const Segment*> segments() const;
  std::vector<std::string> segment_surfaces() const;

  // Equality on the linguistic content, ignoring `source`.
  bool same_content(const MorphAnnotation& other) const;

  friend bool operator==(const MorphAnnotation&,
                         const MorphAnnotation&) = default;
};

// Renders "w+ jAbw +hA" style display text.
std::string DisplaySegmentation(const MorphAnnotation& ann);

// An annotation attached to a token, with bookkeeping. A modify of the
// token keeps the record but marks it stale.
struct AnnotationRecord {
  MorphAnnotation annotation;
  bool stale = false;
  UserId author;
  Timestamp updated_at{};

  friend bool operator==(const AnnotationRecord&,
                         const AnnotationRecord&) = default;
};

// A candidate analysis produced by an analyzer provider.
struct Analysis {
  MorphAnnotation annotation;
  std::string dialect;
  double score = 0.0;
  std::string provider;

  bool is_fallback() const;

  friend bool operator==(const Analysis&, const Analysis&) = default;
};

inline constexpr std::string_view kFallbackProvider = "fallback";

struct Sentence {
  SentenceId id;
  std::vector<Token> raw_tokens;
  std::vector<Token> current_tokens;
  EditLog edit_log;
  // Keyed by token id. Entries for tokens that are no longer live are kept
  // so that redo of a split/merge restores what the children carried.
  std::map<TokenId, AnnotationRecord> annotations;
  std::map<TokenId, std::vector<Analysis>> suggestions;
  uint64_t next_token_serial = 0;

  const Token* find_current(const TokenId& id) const;
  const AnnotationRecord* annotation_for(const TokenId& id) const;
  TokenId allocate_token_id();
  std::string text() const;
  std::string raw_text() const;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

enum class DocumentStatus {
  kUploaded,
  kAssigned,
  kInProgress,
  kSubmitted,
  kApproved,
  kRejected,
};

bool CanTransition(DocumentStatus from, DocumentStatus to);

struct Document {
  DocumentId id;
  std::string title;
  std::string dialect;
  std::vector<Sentence> sentences;
  DocumentStatus status = DocumentStatus::kUploaded;
  std::optional<UserId> assignee;
  uint64_t version = 0;
  std::string tagset;
  std::string review_note;

  Sentence* find_sentence(const SentenceId& id);
  const Sentence* find_sentence(const SentenceId& id) const;
  size_t raw_token_count() const;
  size_t current_token_count() const;

  friend bool operator==(const Document&, const Document&) = default;
};

// Moves `d` to `to`; throws Error(kInvalidTransition) if the edge is not in
// the workflow graph.
void TransitionTo(Document& d, DocumentStatus to);

// Text and annotation changes are only accepted on assigned, in-progress
// or rejected documents; the first change moves the document to
// in_progress.
void BeginWork(Document& d);

// A freshly uploaded sentence: every token raw, no edits.
Sentence MakeSentence(SentenceId id, const std::vector<std::string>& surfaces);

enum class Role { kAnnotator, kLead };

struct User {
  UserId id;
  std::string name;
  Role role = Role::kAnnotator;
  std::string credential_hash;

  bool is_lead() const { return role == Role::kLead; }
  friend bool operator==(const User&, const User&) = default;
};

// Who is performing an operation.
struct Actor {
  UserId id;
  Role role = Role::kAnnotator;

  bool is_lead() const { return role == Role::kLead; }
};

std::string_view ToString(Provenance p);
std::string_view ToString(EditKind k);
std::string_view ToString(AnnotationSource s);
std::string_view ToString(DocumentStatus s);
std::string_view ToString(Role r);

// Inverses of ToString; throw Error(kInvalidArgument) for unknown names.
Provenance ParseProvenance(std::string_view name);
EditKind ParseEditKind(std::string_view name);
AnnotationSource ParseAnnotationSource(std::string_view name);
DocumentStatus ParseDocumentStatus(std::string_view name);
Role ParseRole(std::string_view name);

}  // namespace morphann

#endif  // MORPHANN_MODEL_H_
