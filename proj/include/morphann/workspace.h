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

#ifndef MORPHANN_WORKSPACE_H_
#define MORPHANN_WORKSPACE_H_

// The annotation and management operations, with authorization, on top of
// a Store. The HTTP service and the command line client are both thin
// front ends over this class.
//
// Role matrix: annotators may read and change only documents assigned to
// them; leads may do everything. Every document-changing call accepts an
// optional expected version and fails with kVersionConflict when it is
// stale. Calls that change nothing do not bump the version.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morphann/config.h"
#include "morphann/edit_engine.h"
#include "morphann/iaa.h"
#include "morphann/model.h"
#include "morphann/morphology.h"
#include "morphann/storage.h"
#include "morphann/tagset.h"

namespace morphann {

std::string HashCredential(std::string_view credential, HashStrength strength);
bool VerifyCredential(const std::string& hash, std::string_view credential);
std::string NewSessionToken();

// Splits on newlines into sentences and on whitespace runs into tokens.
// Blank lines are skipped.
std::vector<std::vector<std::string>> SplitUploadText(std::string_view text);

struct EditRequest {
  EditKind kind = EditKind::kModify;
  TokenId token;                   // modify, split
  std::string new_surface;         // modify
  std::vector<std::string> parts;  // split
  std::vector<TokenId> tokens;     // merge
};

struct ProgressRow {
  std::string id;  // document or user id
  std::string label;
  size_t sentences_total = 0;
  size_t sentences_edited = 0;
  size_t sentences_annotated = 0;
  size_t sentences_submitted = 0;
  size_t words_total = 0;
  size_t words_annotated = 0;
  // Annotated words per hour between the first and last activity;
  // absent when there is no time span.
  std::optional<double> words_per_hour;
};

struct ProgressReport {
  std::vector<ProgressRow> documents;
  std::vector<ProgressRow> users;
};

// Progress over `docs`. User rows cover the assignees among `users`.
ProgressReport ComputeProgress(std::span<const Document> docs,
                               std::span<const User> users);

Json ToJson(const ProgressReport& r);

struct DocumentStats {
  EditStats edits;
  SuggestionAccuracyReport suggestions;
};

class Workspace {
 public:
  Workspace(Store& store, TagSet tagset,
            std::shared_ptr<const AnalyzerProvider> provider,
            PrecomputeOptions precompute = {},
            HashStrength hash_strength = HashStrength::kInteractive,
            Clock clock = Now);

  const TagSet& tagset() const { return tagset_; }
  const AnalyzerProvider& provider() const { return *provider_; }
  Store& store() { return store_; }

  // Authentication.
  std::string Login(const std::string& name, std::string_view credential);
  Actor Authenticate(const std::string& token) const;

  // Users (lead only).
  User CreateUser(const Actor& actor, const std::string& name, Role role,
                  std::string_view credential);
  std::vector<User> ListUsers(const Actor& actor) const;

  // Documents.
  Document Upload(const Actor& actor, const std::string& title,
                  const std::string& dialect, std::string_view text);
  Document Import(const Actor& actor, std::string_view export_text);
  std::string Export(const Actor& actor, const DocumentId& id) const;
  Document Get(const Actor& actor, const DocumentId& id) const;
  std::vector<Document> List(const Actor& actor) const;

  // Workflow.
  Document Assign(const Actor& actor, const DocumentId& id,
                  const std::string& user_id_or_name,
                  std::optional<uint64_t> expected);
  Document Submit(const Actor& actor, const DocumentId& id,
                  std::optional<uint64_t> expected);
  Document Review(const Actor& actor, const DocumentId& id, bool approve,
                  const std::string& note, std::optional<uint64_t> expected);

  // Text edits.
  Document Edit(const Actor& actor, const DocumentId& id,
                const SentenceId& sentence, const EditRequest& request,
                std::optional<uint64_t> expected);
  Document Undo(const Actor& actor, const DocumentId& id,
                const SentenceId& sentence, std::optional<uint64_t> expected);
  Document Redo(const Actor& actor, const DocumentId& id,
                const SentenceId& sentence, std::optional<uint64_t> expected);

  // Morphology.
  AnalysisSearchResult Search(const Actor& actor, const std::string& surface,
                              const std::string& dialect) const;
  Document Annotate(const Actor& actor, const DocumentId& id,
                    const TokenId& token, const MorphAnnotation& ann,
                    std::optional<uint64_t> expected);
  // Returns the document and the number of tokens updated.
  std::pair<Document, size_t> BulkApply(const Actor& actor,
                                        const DocumentId& id,
                                        const std::string& surface,
                                        const MorphAnnotation& ann,
                                        std::optional<uint64_t> expected);

  // Reports.
  ProgressReport Progress(const Actor& actor,
                          const std::optional<UserId>& user,
                          const std::optional<DocumentId>& doc) const;
  IAAReport Iaa(const Actor& actor, const DocumentId& doc,
                const DocumentId& gold) const;
  DocumentStats Stats(const Actor& actor, const DocumentId& id) const;

 private:
  template <typename Fn>
  Document Mutate(const Actor& actor, const DocumentId& id,
                  std::optional<uint64_t> expected, bool lead_only, Fn&& fn);

  void CheckReadable(const Actor& actor, const Document& d) const;

  Store& store_;
  TagSet tagset_;
  std::shared_ptr<const AnalyzerProvider> provider_;
  PrecomputeOptions precompute_;
  HashStrength hash_strength_;
  Clock clock_;
};

}  // namespace morphann

#endif  // MORPHANN_WORKSPACE_H_
