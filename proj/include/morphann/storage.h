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

#ifndef MORPHANN_STORAGE_H_
#define MORPHANN_STORAGE_H_

// Persistence in one SQLite file. Workflow data that gets queried (users,
// sessions, documents, assignments, status, versions) lives in ordinary
// tables; each sentence's annotation state is an opaque JSON payload with
// its full version history. Front-end features that add fields to the
// payload need no schema migration.
//
// Every write is a compare-and-swap on a version number. A Store may be
// shared between threads.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "morphann/model.h"

struct sqlite3;

namespace morphann {

struct AnnotationPayload {
  DocumentId document;
  SentenceId sentence;
  uint64_t version = 0;
  std::string body;

  friend bool operator==(const AnnotationPayload&,
                         const AnnotationPayload&) = default;
};

class Store {
 public:
  // `path` may be ":memory:".
  explicit Store(const std::string& path);
  ~Store();

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  // Users and sessions.
  User CreateUser(const std::string& name, Role role,
                  const std::string& credential_hash);
  std::optional<User> FindUser(const UserId& id) const;
  std::optional<User> FindUserByName(const std::string& name) const;
  std::vector<User> ListUsers() const;
  void CreateSession(const std::string& token, const UserId& user,
                     Timestamp created_at);
  std::optional<UserId> SessionUser(const std::string& token) const;

  // Documents. InsertDocument stores metadata plus version 1 of every
  // sentence payload and returns the document version (1). A document id
  // already present is an error.
  DocumentId AllocateDocumentId();
  uint64_t InsertDocument(const Document& d);
  bool HasDocument(const DocumentId& id) const;
  Document LoadDocument(const DocumentId& id) const;
  std::vector<DocumentId> ListDocuments() const;
  std::vector<DocumentId> ListDocumentsAssignedTo(const UserId& user) const;

  // Writes metadata and every sentence whose payload changed, as one
  // atomic step. Fails with kVersionConflict unless the stored document
  // version equals `expected_version`. Returns the new version.
  uint64_t CommitDocument(const Document& d, uint64_t expected_version);

  // Registers a sentence key without a payload (version 0).
  void AddSentenceKey(const DocumentId& doc, const SentenceId& sentence);

  // Per-sentence CAS. Also bumps the owning document's version.
  uint64_t SaveSentence(const AnnotationPayload& payload,
                        uint64_t expected_version);
  AnnotationPayload LoadSentence(const DocumentId& doc,
                                 const SentenceId& sentence) const;
  AnnotationPayload LoadSentenceAt(const DocumentId& doc,
                                   const SentenceId& sentence,
                                   uint64_t version) const;

 private:
  struct Db;
  std::unique_ptr<Db> db_;
  mutable std::mutex mu_;
};

// Serialized form of a sentence as stored in a payload body.
std::string SentenceBody(const Sentence& s);
Sentence ParseSentenceBody(const std::string& body);

}  // namespace morphann

#endif  // MORPHANN_STORAGE_H_
