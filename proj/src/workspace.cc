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

#include "morphann/workspace.h"

#include <sodium.h>

#include <algorithm>
#include <limits>
#include <set>

#include "morphann/error.h"
#include "morphann/exchange.h"
#include "morphann/utf8.h"

namespace morphann {

namespace {

void InitSodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw Error(ErrorCode::kIo, "libsodium initialization failed");
}

[[noreturn]] void Forbidden(const std::string& what) {
  throw Error(ErrorCode::kForbidden, what);
}

void RequireLead(const Actor& actor) {
  if (!actor.is_lead()) Forbidden("this operation requires the lead role");
}

void RequireWorkable(const Document& d) {
  switch (d.status) {
    case DocumentStatus::kAssigned:
    case DocumentStatus::kInProgress:
    case DocumentStatus::kRejected:
      return;
    default:
      throw Error(ErrorCode::kInvalidTransition,
                  "document " + d.id.str() + " is " +
                      std::string(ToString(d.status)) + " and cannot be changed");
  }
}

Sentence& SentenceOrThrow(Document& d, const SentenceId& id) {
  Sentence* s = d.find_sentence(id);
  if (s == nullptr)
    throw Error(ErrorCode::kNotFound, "unknown sentence '" + id.str() + "'");
  return *s;
}

bool IsFinal(const AnnotationRecord* rec) {
  return rec != nullptr && !rec->stale &&
         rec->annotation.source != AnnotationSource::kSuggested;
}

}  // namespace

std::string HashCredential(std::string_view credential, HashStrength strength) {
  InitSodium();
  char out[crypto_pwhash_STRBYTES];
  const bool minimal = strength == HashStrength::kMinimal;
  const auto ops = minimal ? crypto_pwhash_OPSLIMIT_MIN
                           : crypto_pwhash_OPSLIMIT_INTERACTIVE;
  const auto mem = minimal ? crypto_pwhash_MEMLIMIT_MIN
                           : crypto_pwhash_MEMLIMIT_INTERACTIVE;
  if (crypto_pwhash_str(out, credential.data(), credential.size(), ops, mem) != 0)
    throw Error(ErrorCode::kIo, "credential hashing ran out of memory");
  return out;
}

bool VerifyCredential(const std::string& hash, std::string_view credential) {
  InitSodium();
  return crypto_pwhash_str_verify(hash.c_str(), credential.data(),
                                  credential.size()) == 0;
}

std::string NewSessionToken() {
  InitSodium();
  unsigned char bytes[32];
  randombytes_buf(bytes, sizeof(bytes));
  char hex[sizeof(bytes) * 2 + 1];
  sodium_bin2hex(hex, sizeof(hex), bytes, sizeof(bytes));
  return hex;
}

std::vector<std::vector<std::string>> SplitUploadText(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto tokens = utf8::SplitWhitespace(text.substr(start, nl - start));
    if (!tokens.empty()) out.push_back(std::move(tokens));
    start = nl + 1;
  }
  return out;
}

ProgressReport ComputeProgress(std::span<const Document> docs,
                               std::span<const User> users) {
  struct Activity {
    Timestamp first = Timestamp::max();
    Timestamp last = Timestamp::min();
    void Add(Timestamp t) {
      first = std::min(first, t);
      last = std::max(last, t);
    }
  };
  auto rate = [](size_t words, const Activity& a) -> std::optional<double> {
    if (a.first >= a.last) return std::nullopt;
    const double hours =
        std::chrono::duration<double, std::ratio<3600>>(a.last - a.first).count();
    return static_cast<double>(words) / hours;
  };

  ProgressReport report;
  std::vector<Activity> doc_activity;
  for (const Document& d : docs) {
    ProgressRow row;
    row.id = d.id.str();
    row.label = d.title;
    Activity act;
    const bool submitted = d.status == DocumentStatus::kSubmitted ||
                           d.status == DocumentStatus::kApproved;
    for (const Sentence& s : d.sentences) {
      ++row.sentences_total;
      if (s.edit_log.cursor > 0) ++row.sentences_edited;
      if (submitted) ++row.sentences_submitted;
      for (size_t i = 0; i < s.edit_log.cursor; ++i)
        act.Add(s.edit_log.ops[i].timestamp);
      size_t annotated = 0;
      for (const Token& t : s.current_tokens) {
        const AnnotationRecord* rec = s.annotation_for(t.id);
        if (!IsFinal(rec)) continue;
        ++annotated;
        act.Add(rec->updated_at);
      }
      row.words_total += s.current_tokens.size();
      row.words_annotated += annotated;
      if (!s.current_tokens.empty() && annotated == s.current_tokens.size())
        ++row.sentences_annotated;
    }
    row.words_per_hour = rate(row.words_annotated, act);
    report.documents.push_back(std::move(row));
    doc_activity.push_back(act);
  }

  for (const User& u : users) {
    ProgressRow row;
    row.id = u.id.str();
    row.label = u.name;
    Activity act;
    bool any = false;
    for (size_t i = 0; i < docs.size(); ++i) {
      if (!docs[i].assignee || *docs[i].assignee != u.id) continue;
      any = true;
      const ProgressRow& dr = report.documents[i];
      row.sentences_total += dr.sentences_total;
      row.sentences_edited += dr.sentences_edited;
      row.sentences_annotated += dr.sentences_annotated;
      row.sentences_submitted += dr.sentences_submitted;
      row.words_total += dr.words_total;
      row.words_annotated += dr.words_annotated;
      if (doc_activity[i].first <= doc_activity[i].last) {
        act.Add(doc_activity[i].first);
        act.Add(doc_activity[i].last);
      }
    }
    if (!any && u.is_lead()) continue;
    row.words_per_hour = rate(row.words_annotated, act);
    report.users.push_back(std::move(row));
  }
  return report;
}

Json ToJson(const ProgressReport& r) {
  auto rows = [](const std::vector<ProgressRow>& list) {
    Json out = Json::array();
    for (const auto& row : list) {
      Json j{{"id", row.id},
             {"label", row.label},
             {"sentences_total", row.sentences_total},
             {"sentences_edited", row.sentences_edited},
             {"sentences_annotated", row.sentences_annotated},
             {"sentences_submitted", row.sentences_submitted},
             {"words_total", row.words_total},
             {"words_annotated", row.words_annotated},
             {"words_per_hour", nullptr}};
      if (row.words_per_hour) j["words_per_hour"] = *row.words_per_hour;
      out.push_back(std::move(j));
    }
    return out;
  };
  return Json{{"documents", rows(r.documents)}, {"users", rows(r.users)}};
}

Workspace::Workspace(Store& store, TagSet tagset,
                     std::shared_ptr<const AnalyzerProvider> provider,
                     PrecomputeOptions precompute, HashStrength hash_strength,
                     Clock clock)
    : store_(store),
      tagset_(std::move(tagset)),
      provider_(std::move(provider)),
      precompute_(std::move(precompute)),
      hash_strength_(hash_strength),
      clock_(std::move(clock)) {}

std::string Workspace::Login(const std::string& name,
                             std::string_view credential) {
  auto user = store_.FindUserByName(name);
  if (!user || !VerifyCredential(user->credential_hash, credential))
    throw Error(ErrorCode::kUnauthenticated, "invalid name or credential");
  std::string token = NewSessionToken();
  store_.CreateSession(token, user->id, clock_());
  return token;
}

Actor Workspace::Authenticate(const std::string& token) const {
  if (token.empty())
    throw Error(ErrorCode::kUnauthenticated, "missing bearer token");
  auto uid = store_.SessionUser(token);
  if (!uid) throw Error(ErrorCode::kUnauthenticated, "unknown session token");
  auto user = store_.FindUser(*uid);
  if (!user) throw Error(ErrorCode::kUnauthenticated, "session user is gone");
  return Actor{user->id, user->role};
}

User Workspace::CreateUser(const Actor& actor, const std::string& name, Role role,
                           std::string_view credential) {
  RequireLead(actor);
  if (name.empty() || utf8::ContainsWhitespace(name))
    throw Error(ErrorCode::kInvalidArgument, "user name must be a single word");
  if (credential.empty())
    throw Error(ErrorCode::kInvalidArgument, "credential must not be empty");
  if (store_.FindUserByName(name))
    throw Error(ErrorCode::kAlreadyExists, "user name '" + name + "' is taken");
  return store_.CreateUser(name, role, HashCredential(credential, hash_strength_));
}

std::vector<User> Workspace::ListUsers(const Actor& actor) const {
  RequireLead(actor);
  return store_.ListUsers();
}

Document Workspace::Upload(const Actor& actor, const std::string& title,
                           const std::string& dialect, std::string_view text) {
  RequireLead(actor);
  const auto lines = SplitUploadText(text);
  if (lines.empty())
    throw Error(ErrorCode::kInvalidArgument, "document text is empty");
  Document d;
  d.id = store_.AllocateDocumentId();
  d.title = title;
  d.dialect = dialect;
  d.tagset = tagset_.name;
  for (size_t i = 0; i < lines.size(); ++i)
    d.sentences.push_back(MakeSentence(SentenceId("s" + std::to_string(i)), lines[i]));
  PrecomputeOptions opts = precompute_;
  opts.now = clock_();
  PrecomputeSuggestions(d, *provider_, opts);
  d.version = store_.InsertDocument(d);
  return d;
}

Document Workspace::Import(const Actor& actor, std::string_view export_text) {
  RequireLead(actor);
  Document d = ImportDocument(export_text, tagset_);
  if (d.id.empty() || store_.HasDocument(d.id)) d.id = store_.AllocateDocumentId();
  d.version = store_.InsertDocument(d);
  return d;
}

std::string Workspace::Export(const Actor& actor, const DocumentId& id) const {
  return ExportDocument(Get(actor, id));
}

void Workspace::CheckReadable(const Actor& actor, const Document& d) const {
  if (actor.is_lead()) return;
  if (!d.assignee || *d.assignee != actor.id)
    Forbidden("document " + d.id.str() + " is not assigned to you");
}

Document Workspace::Get(const Actor& actor, const DocumentId& id) const {
  Document d = store_.LoadDocument(id);
  CheckReadable(actor, d);
  return d;
}

std::vector<Document> Workspace::List(const Actor& actor) const {
  const auto ids = actor.is_lead() ? store_.ListDocuments()
                                   : store_.ListDocumentsAssignedTo(actor.id);
  std::vector<Document> out;
  for (const auto& id : ids) out.push_back(store_.LoadDocument(id));
  return out;
}

template <typename Fn>
Document Workspace::Mutate(const Actor& actor, const DocumentId& id,
                           std::optional<uint64_t> expected, bool lead_only,
                           Fn&& fn) {
  if (lead_only) RequireLead(actor);
  Document d = store_.LoadDocument(id);
  CheckReadable(actor, d);
  if (expected && *expected != d.version) {
    throw Error(ErrorCode::kVersionConflict,
                "document " + id.str() + " is at version " +
                    std::to_string(d.version) + ", expected " +
                    std::to_string(*expected));
  }
  const uint64_t loaded = d.version;
  const bool changed = fn(d);
  if (!changed) {
    d.version = loaded;
    return d;
  }
  d.version = store_.CommitDocument(d, loaded);
  return d;
}

Document Workspace::Assign(const Actor& actor, const DocumentId& id,
                           const std::string& user_id_or_name,
                           std::optional<uint64_t> expected) {
  auto user = store_.FindUser(UserId(user_id_or_name));
  if (!user) user = store_.FindUserByName(user_id_or_name);
  if (!user)
    throw Error(ErrorCode::kNotFound, "unknown user '" + user_id_or_name + "'");
  return Mutate(actor, id, expected, true, [&](Document& d) {
    TransitionTo(d, DocumentStatus::kAssigned);
    d.assignee = user->id;
    return true;
  });
}

Document Workspace::Submit(const Actor& actor, const DocumentId& id,
                           std::optional<uint64_t> expected) {
  return Mutate(actor, id, expected, false, [&](Document& d) {
    if (d.status != DocumentStatus::kInProgress) {
      RequireWorkable(d);
      BeginWork(d);
    }
    TransitionTo(d, DocumentStatus::kSubmitted);
    return true;
  });
}

Document Workspace::Review(const Actor& actor, const DocumentId& id, bool approve,
                           const std::string& note,
                           std::optional<uint64_t> expected) {
  return Mutate(actor, id, expected, true, [&](Document& d) {
    TransitionTo(d, approve ? DocumentStatus::kApproved : DocumentStatus::kRejected);
    d.review_note = note;
    return true;
  });
}

Document Workspace::Edit(const Actor& actor, const DocumentId& id,
                         const SentenceId& sentence, const EditRequest& request,
                         std::optional<uint64_t> expected) {
  const EditContext ctx{actor.id, clock_()};
  return Mutate(actor, id, expected, false, [&](Document& d) {
    RequireWorkable(d);
    Sentence& s = SentenceOrThrow(d, sentence);
    Sentence next;
    switch (request.kind) {
      case EditKind::kModify:
        next = ModifyToken(s, request.token, request.new_surface, ctx);
        break;
      case EditKind::kSplit:
        next = SplitToken(s, request.token, request.parts, ctx);
        break;
      case EditKind::kMerge:
        next = MergeTokens(s, request.tokens, ctx);
        break;
    }
    if (next == s) return false;
    s = std::move(next);
    BeginWork(d);
    return true;
  });
}

Document Workspace::Undo(const Actor& actor, const DocumentId& id,
                         const SentenceId& sentence,
                         std::optional<uint64_t> expected) {
  return Mutate(actor, id, expected, false, [&](Document& d) {
    RequireWorkable(d);
    Sentence& s = SentenceOrThrow(d, sentence);
    s = morphann::Undo(std::move(s));
    BeginWork(d);
    return true;
  });
}

Document Workspace::Redo(const Actor& actor, const DocumentId& id,
                         const SentenceId& sentence,
                         std::optional<uint64_t> expected) {
  return Mutate(actor, id, expected, false, [&](Document& d) {
    RequireWorkable(d);
    Sentence& s = SentenceOrThrow(d, sentence);
    s = morphann::Redo(std::move(s));
    BeginWork(d);
    return true;
  });
}

AnalysisSearchResult Workspace::Search(const Actor&, const std::string& surface,
                                       const std::string& dialect) const {
  std::vector<Document> scope;
  for (const auto& id : store_.ListDocuments())
    scope.push_back(store_.LoadDocument(id));
  return SearchAnalyses(surface, dialect, *provider_, scope);
}

Document Workspace::Annotate(const Actor& actor, const DocumentId& id,
                             const TokenId& token, const MorphAnnotation& ann,
                             std::optional<uint64_t> expected) {
  const Timestamp now = clock_();
  return Mutate(actor, id, expected, false, [&](Document& d) {
    RequireWorkable(d);
    SubmitAnnotation(d, token, ann, actor, tagset_, now);
    return true;
  });
}

std::pair<Document, size_t> Workspace::BulkApply(
    const Actor& actor, const DocumentId& id, const std::string& surface,
    const MorphAnnotation& ann, std::optional<uint64_t> expected) {
  const Timestamp now = clock_();
  size_t count = 0;
  Document d = Mutate(actor, id, expected, false, [&](Document& doc) {
    RequireWorkable(doc);
    count = ApplyToMatching(doc, surface, ann, actor, tagset_, now);
    return count > 0;
  });
  return {std::move(d), count};
}

ProgressReport Workspace::Progress(const Actor& actor,
                                   const std::optional<UserId>& user,
                                   const std::optional<DocumentId>& doc) const {
  if (!actor.is_lead() && user && *user != actor.id)
    Forbidden("annotators may only view their own progress");
  const std::optional<UserId> who = actor.is_lead() ? user : actor.id;

  std::vector<Document> docs;
  if (doc) {
    Document d = store_.LoadDocument(*doc);
    CheckReadable(actor, d);
    docs.push_back(std::move(d));
  } else {
    const auto ids = who ? store_.ListDocumentsAssignedTo(*who) : store_.ListDocuments();
    for (const auto& id : ids) docs.push_back(store_.LoadDocument(id));
  }
  std::vector<User> users;
  for (auto& u : store_.ListUsers()) {
    if (!who || u.id == *who) users.push_back(std::move(u));
  }
  return ComputeProgress(docs, users);
}

IAAReport Workspace::Iaa(const Actor& actor, const DocumentId& doc,
                         const DocumentId& gold) const {
  RequireLead(actor);
  return ComputeIaa(store_.LoadDocument(doc), store_.LoadDocument(gold));
}

DocumentStats Workspace::Stats(const Actor& actor, const DocumentId& id) const {
  const Document d = Get(actor, id);
  return DocumentStats{ComputeEditStats(d), ComputeSuggestionAccuracy(d)};
}

}  // namespace morphann
