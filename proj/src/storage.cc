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

#include "morphann/storage.h"

#include <sqlite3.h>

#include "morphann/error.h"
#include "morphann/json.h"

namespace morphann {

namespace {

class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      throw Error(ErrorCode::kIo,
                  std::string("sqlite prepare failed: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& Bind(int index, const std::string& value) {
    sqlite3_bind_text(stmt_, index, value.data(), static_cast<int>(value.size()),
                      SQLITE_TRANSIENT);
    return *this;
  }
  Statement& Bind(int index, int64_t value) {
    sqlite3_bind_int64(stmt_, index, value);
    return *this;
  }
  Statement& BindNull(int index) {
    sqlite3_bind_null(stmt_, index);
    return *this;
  }

  // True while a row is available.
  bool Step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    if (rc == SQLITE_CONSTRAINT) {
      throw Error(ErrorCode::kAlreadyExists,
                  std::string("constraint violated: ") + sqlite3_errmsg(db_));
    }
    throw Error(ErrorCode::kIo, std::string("sqlite step failed: ") +
                                    sqlite3_errmsg(db_));
  }

  void Run() {
    while (Step()) {
    }
  }

  std::string Text(int col) const {
    const auto* p = sqlite3_column_text(stmt_, col);
    if (p == nullptr) return {};
    return std::string(reinterpret_cast<const char*>(p),
                       static_cast<size_t>(sqlite3_column_bytes(stmt_, col)));
  }
  bool IsNull(int col) const {
    return sqlite3_column_type(stmt_, col) == SQLITE_NULL;
  }
  int64_t Int(int col) const { return sqlite3_column_int64(stmt_, col); }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

void Exec(sqlite3* db, const char* sql) {
  char* err = nullptr;
  if (sqlite3_exec(db, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown";
    sqlite3_free(err);
    throw Error(ErrorCode::kIo, "sqlite exec failed: " + msg);
  }
}

// Rolls back unless committed.
class Transaction {
 public:
  explicit Transaction(sqlite3* db) : db_(db) { Exec(db_, "BEGIN IMMEDIATE"); }
  ~Transaction() {
    if (!done_) sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
  }
  void Commit() {
    Exec(db_, "COMMIT");
    done_ = true;
  }

 private:
  sqlite3* db_;
  bool done_ = false;
};

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS counters (
  name TEXT PRIMARY KEY,
  value INTEGER NOT NULL
);
CREATE TABLE IF NOT EXISTS users (
  id TEXT PRIMARY KEY,
  name TEXT NOT NULL UNIQUE,
  role TEXT NOT NULL,
  credential_hash TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS sessions (
  token TEXT PRIMARY KEY,
  user_id TEXT NOT NULL REFERENCES users(id),
  created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS documents (
  id TEXT PRIMARY KEY,
  title TEXT NOT NULL,
  dialect TEXT NOT NULL,
  status TEXT NOT NULL,
  assignee TEXT,
  version INTEGER NOT NULL,
  tagset TEXT NOT NULL,
  review_note TEXT NOT NULL
);
CREATE INDEX IF NOT EXISTS documents_assignee ON documents(assignee);
CREATE TABLE IF NOT EXISTS sentences (
  document_id TEXT NOT NULL REFERENCES documents(id),
  sentence_id TEXT NOT NULL,
  ordinal INTEGER NOT NULL,
  version INTEGER NOT NULL,
  PRIMARY KEY (document_id, sentence_id)
);
CREATE TABLE IF NOT EXISTS payloads (
  document_id TEXT NOT NULL,
  sentence_id TEXT NOT NULL,
  version INTEGER NOT NULL,
  body TEXT NOT NULL,
  saved_at TEXT NOT NULL,
  PRIMARY KEY (document_id, sentence_id, version)
);
)sql";

User ReadUser(const Statement& st) {
  return User{UserId(st.Text(0)), st.Text(1), ParseRole(st.Text(2)), st.Text(3)};
}

int64_t NextCounter(sqlite3* db, const std::string& name) {
  Statement(db,
            "INSERT INTO counters(name, value) VALUES (?, 1) "
            "ON CONFLICT(name) DO UPDATE SET value = value + 1")
      .Bind(1, name)
      .Run();
  Statement st(db, "SELECT value FROM counters WHERE name = ?");
  st.Bind(1, name);
  st.Step();
  return st.Int(0);
}

std::optional<int64_t> DocumentVersion(sqlite3* db, const DocumentId& id) {
  Statement st(db, "SELECT version FROM documents WHERE id = ?");
  st.Bind(1, id.str());
  if (!st.Step()) return std::nullopt;
  return st.Int(0);
}

std::optional<int64_t> SentenceVersion(sqlite3* db, const DocumentId& doc,
                                       const SentenceId& sentence) {
  Statement st(db,
               "SELECT version FROM sentences WHERE document_id = ? AND "
               "sentence_id = ?");
  st.Bind(1, doc.str()).Bind(2, sentence.str());
  if (!st.Step()) return std::nullopt;
  return st.Int(0);
}

std::optional<std::string> PayloadBody(sqlite3* db, const DocumentId& doc,
                                       const SentenceId& sentence,
                                       int64_t version) {
  Statement st(db,
               "SELECT body FROM payloads WHERE document_id = ? AND "
               "sentence_id = ? AND version = ?");
  st.Bind(1, doc.str()).Bind(2, sentence.str()).Bind(3, version);
  if (!st.Step()) return std::nullopt;
  return st.Text(0);
}

void WritePayload(sqlite3* db, const DocumentId& doc, const SentenceId& sentence,
                  int64_t version, const std::string& body) {
  Statement(db,
            "INSERT INTO payloads(document_id, sentence_id, version, body, "
            "saved_at) VALUES (?, ?, ?, ?, ?)")
      .Bind(1, doc.str())
      .Bind(2, sentence.str())
      .Bind(3, version)
      .Bind(4, body)
      .Bind(5, FormatRfc3339(Now()))
      .Run();
  Statement(db,
            "UPDATE sentences SET version = ? WHERE document_id = ? AND "
            "sentence_id = ?")
      .Bind(1, version)
      .Bind(2, doc.str())
      .Bind(3, sentence.str())
      .Run();
}

void WriteMeta(sqlite3* db, const Document& d, int64_t version) {
  Statement st(db,
               "UPDATE documents SET title = ?, dialect = ?, status = ?, "
               "assignee = ?, version = ?, tagset = ?, review_note = ? "
               "WHERE id = ?");
  st.Bind(1, d.title).Bind(2, d.dialect).Bind(3, std::string(ToString(d.status)));
  if (d.assignee) {
    st.Bind(4, d.assignee->str());
  } else {
    st.BindNull(4);
  }
  st.Bind(5, version).Bind(6, d.tagset).Bind(7, d.review_note).Bind(8, d.id.str());
  st.Run();
}

[[noreturn]] void NoDocument(const DocumentId& id) {
  throw Error(ErrorCode::kNotFound, "unknown document '" + id.str() + "'");
}

}  // namespace

struct Store::Db {
  sqlite3* handle = nullptr;
  ~Db() { sqlite3_close(handle); }
};

Store::Store(const std::string& path) : db_(std::make_unique<Db>()) {
  const int flags =
      SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_NOMUTEX;
  if (sqlite3_open_v2(path.c_str(), &db_->handle, flags, nullptr) != SQLITE_OK) {
    throw Error(ErrorCode::kIo, "cannot open store '" + path + "': " +
                                    sqlite3_errmsg(db_->handle));
  }
  sqlite3_busy_timeout(db_->handle, 5000);
  Exec(db_->handle, "PRAGMA foreign_keys = ON");
  Exec(db_->handle, kSchema);
}

Store::~Store() = default;

User Store::CreateUser(const std::string& name, Role role,
                       const std::string& credential_hash) {
  std::lock_guard lock(mu_);
  Transaction tx(db_->handle);
  {
    Statement st(db_->handle, "SELECT 1 FROM users WHERE name = ?");
    st.Bind(1, name);
    if (st.Step())
      throw Error(ErrorCode::kAlreadyExists, "user name '" + name + "' is taken");
  }
  User u{UserId("u" + std::to_string(NextCounter(db_->handle, "user"))), name,
         role, credential_hash};
  Statement(db_->handle,
            "INSERT INTO users(id, name, role, credential_hash) VALUES (?,?,?,?)")
      .Bind(1, u.id.str())
      .Bind(2, u.name)
      .Bind(3, std::string(ToString(u.role)))
      .Bind(4, u.credential_hash)
      .Run();
  tx.Commit();
  return u;
}

std::optional<User> Store::FindUser(const UserId& id) const {
  std::lock_guard lock(mu_);
  Statement st(db_->handle,
               "SELECT id, name, role, credential_hash FROM users WHERE id = ?");
  st.Bind(1, id.str());
  if (!st.Step()) return std::nullopt;
  return ReadUser(st);
}

std::optional<User> Store::FindUserByName(const std::string& name) const {
  std::lock_guard lock(mu_);
  Statement st(db_->handle,
               "SELECT id, name, role, credential_hash FROM users WHERE name = ?");
  st.Bind(1, name);
  if (!st.Step()) return std::nullopt;
  return ReadUser(st);
}

std::vector<User> Store::ListUsers() const {
  std::lock_guard lock(mu_);
  Statement st(db_->handle,
               "SELECT id, name, role, credential_hash FROM users ORDER BY "
               "rowid");
  std::vector<User> out;
  while (st.Step()) out.push_back(ReadUser(st));
  return out;
}

void Store::CreateSession(const std::string& token, const UserId& user,
                          Timestamp created_at) {
  std::lock_guard lock(mu_);
  Statement(db_->handle,
            "INSERT INTO sessions(token, user_id, created_at) VALUES (?,?,?)")
      .Bind(1, token)
      .Bind(2, user.str())
      .Bind(3, FormatRfc3339(created_at))
      .Run();
}

std::optional<UserId> Store::SessionUser(const std::string& token) const {
  std::lock_guard lock(mu_);
  Statement st(db_->handle, "SELECT user_id FROM sessions WHERE token = ?");
  st.Bind(1, token);
  if (!st.Step()) return std::nullopt;
  return UserId(st.Text(0));
}

DocumentId Store::AllocateDocumentId() {
  std::lock_guard lock(mu_);
  for (;;) {
    DocumentId id("d" + std::to_string(NextCounter(db_->handle, "document")));
    if (!DocumentVersion(db_->handle, id)) return id;
  }
}

uint64_t Store::InsertDocument(const Document& d) {
  std::lock_guard lock(mu_);
  Transaction tx(db_->handle);
  if (DocumentVersion(db_->handle, d.id)) {
    throw Error(ErrorCode::kAlreadyExists,
                "document '" + d.id.str() + "' already exists");
  }
  Statement(db_->handle,
            "INSERT INTO documents(id, title, dialect, status, assignee, "
            "version, tagset, review_note) VALUES (?, '', '', 'uploaded', "
            "NULL, 0, '', '')")
      .Bind(1, d.id.str())
      .Run();
  WriteMeta(db_->handle, d, 1);
  for (size_t i = 0; i < d.sentences.size(); ++i) {
    const Sentence& s = d.sentences[i];
    Statement(db_->handle,
              "INSERT INTO sentences(document_id, sentence_id, ordinal, "
              "version) VALUES (?, ?, ?, 0)")
        .Bind(1, d.id.str())
        .Bind(2, s.id.str())
        .Bind(3, static_cast<int64_t>(i))
        .Run();
    WritePayload(db_->handle, d.id, s.id, 1, SentenceBody(s));
  }
  tx.Commit();
  return 1;
}

bool Store::HasDocument(const DocumentId& id) const {
  std::lock_guard lock(mu_);
  return DocumentVersion(db_->handle, id).has_value();
}

Document Store::LoadDocument(const DocumentId& id) const {
  std::lock_guard lock(mu_);
  Document d;
  {
    Statement st(db_->handle,
                 "SELECT id, title, dialect, status, assignee, version, "
                 "tagset, review_note FROM documents WHERE id = ?");
    st.Bind(1, id.str());
    if (!st.Step()) NoDocument(id);
    d.id = DocumentId(st.Text(0));
    d.title = st.Text(1);
    d.dialect = st.Text(2);
    d.status = ParseDocumentStatus(st.Text(3));
    if (!st.IsNull(4)) d.assignee = UserId(st.Text(4));
    d.version = static_cast<uint64_t>(st.Int(5));
    d.tagset = st.Text(6);
    d.review_note = st.Text(7);
  }
  Statement st(db_->handle,
               "SELECT s.sentence_id, p.body FROM sentences s JOIN payloads p "
               "ON p.document_id = s.document_id AND p.sentence_id = "
               "s.sentence_id AND p.version = s.version WHERE s.document_id = "
               "? ORDER BY s.ordinal");
  st.Bind(1, id.str());
  while (st.Step()) d.sentences.push_back(ParseSentenceBody(st.Text(1)));
  return d;
}

std::vector<DocumentId> Store::ListDocuments() const {
  std::lock_guard lock(mu_);
  Statement st(db_->handle, "SELECT id FROM documents ORDER BY rowid");
  std::vector<DocumentId> out;
  while (st.Step()) out.emplace_back(st.Text(0));
  return out;
}

std::vector<DocumentId> Store::ListDocumentsAssignedTo(const UserId& user) const {
  std::lock_guard lock(mu_);
  Statement st(db_->handle,
               "SELECT id FROM documents WHERE assignee = ? ORDER BY rowid");
  st.Bind(1, user.str());
  std::vector<DocumentId> out;
  while (st.Step()) out.emplace_back(st.Text(0));
  return out;
}

uint64_t Store::CommitDocument(const Document& d, uint64_t expected_version) {
  std::lock_guard lock(mu_);
  Transaction tx(db_->handle);
  auto current = DocumentVersion(db_->handle, d.id);
  if (!current) NoDocument(d.id);
  if (static_cast<uint64_t>(*current) != expected_version) {
    throw Error(ErrorCode::kVersionConflict,
                "document '" + d.id.str() + "' is at version " +
                    std::to_string(*current) + ", expected " +
                    std::to_string(expected_version));
  }
  const auto next = static_cast<int64_t>(expected_version + 1);
  WriteMeta(db_->handle, d, next);
  for (size_t i = 0; i < d.sentences.size(); ++i) {
    const Sentence& s = d.sentences[i];
    const std::string body = SentenceBody(s);
    auto sv = SentenceVersion(db_->handle, d.id, s.id);
    if (!sv) {
      Statement(db_->handle,
                "INSERT INTO sentences(document_id, sentence_id, ordinal, "
                "version) VALUES (?, ?, ?, 0)")
          .Bind(1, d.id.str())
          .Bind(2, s.id.str())
          .Bind(3, static_cast<int64_t>(i))
          .Run();
      sv = 0;
    }
    if (*sv > 0 && PayloadBody(db_->handle, d.id, s.id, *sv) == body) continue;
    WritePayload(db_->handle, d.id, s.id, *sv + 1, body);
  }
  tx.Commit();
  return static_cast<uint64_t>(next);
}

void Store::AddSentenceKey(const DocumentId& doc, const SentenceId& sentence) {
  std::lock_guard lock(mu_);
  Transaction tx(db_->handle);
  if (!DocumentVersion(db_->handle, doc)) NoDocument(doc);
  Statement count(db_->handle,
                  "SELECT COUNT(*) FROM sentences WHERE document_id = ?");
  count.Bind(1, doc.str());
  count.Step();
  Statement(db_->handle,
            "INSERT INTO sentences(document_id, sentence_id, ordinal, version) "
            "VALUES (?, ?, ?, 0)")
      .Bind(1, doc.str())
      .Bind(2, sentence.str())
      .Bind(3, count.Int(0))
      .Run();
  tx.Commit();
}

uint64_t Store::SaveSentence(const AnnotationPayload& payload,
                             uint64_t expected_version) {
  std::lock_guard lock(mu_);
  Transaction tx(db_->handle);
  auto current = SentenceVersion(db_->handle, payload.document, payload.sentence);
  if (!current) {
    throw Error(ErrorCode::kNotFound, "unknown sentence key (" +
                                          payload.document.str() + ", " +
                                          payload.sentence.str() + ")");
  }
  if (static_cast<uint64_t>(*current) != expected_version) {
    throw Error(ErrorCode::kVersionConflict,
                "sentence is at version " + std::to_string(*current) +
                    ", expected " + std::to_string(expected_version));
  }
  const auto next = static_cast<int64_t>(expected_version + 1);
  WritePayload(db_->handle, payload.document, payload.sentence, next,
               payload.body);
  Statement(db_->handle, "UPDATE documents SET version = version + 1 WHERE id = ?")
      .Bind(1, payload.document.str())
      .Run();
  tx.Commit();
  return static_cast<uint64_t>(next);
}

AnnotationPayload Store::LoadSentence(const DocumentId& doc,
                                      const SentenceId& sentence) const {
  std::unique_lock lock(mu_);
  auto v = SentenceVersion(db_->handle, doc, sentence);
  if (!v || *v == 0) {
    throw Error(ErrorCode::kNotFound, "no payload for (" + doc.str() + ", " +
                                          sentence.str() + ")");
  }
  lock.unlock();
  return LoadSentenceAt(doc, sentence, static_cast<uint64_t>(*v));
}

AnnotationPayload Store::LoadSentenceAt(const DocumentId& doc,
                                        const SentenceId& sentence,
                                        uint64_t version) const {
  std::lock_guard lock(mu_);
  auto body = PayloadBody(db_->handle, doc, sentence,
                          static_cast<int64_t>(version));
  if (!body) {
    throw Error(ErrorCode::kNotFound,
                "no payload for (" + doc.str() + ", " + sentence.str() +
                    ") at version " + std::to_string(version));
  }
  return AnnotationPayload{doc, sentence, version, std::move(*body)};
}

std::string SentenceBody(const Sentence& s) { return Json(s).dump(); }

Sentence ParseSentenceBody(const std::string& body) {
  return Json::parse(body).get<Sentence>();
}

}  // namespace morphann
