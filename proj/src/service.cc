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

#include "morphann/service.h"

#include <regex>

#include "morphann/error.h"
#include "morphann/json.h"
#include "morphann/translit.h"
#include "morphann/utf8.h"

namespace morphann {

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kSchemaViolation:
      return 400;
    case ErrorCode::kUnauthenticated: return 401;
    case ErrorCode::kForbidden: return 403;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kVersionConflict:
    case ErrorCode::kAlreadyExists:
      return 409;
    case ErrorCode::kInvalidTransition:
    case ErrorCode::kValidationFailed:
      return 422;
    case ErrorCode::kProviderFailure: return 502;
    case ErrorCode::kIo: return 500;
  }
  return 500;
}

HttpResponse ErrorResponse(const Error& e) {
  Json details = Json::array();
  for (const auto& d : e.details()) {
    Json item{{"path", d.path}, {"message", d.message}};
    if (d.line > 0) {
      item["line"] = d.line;
      item["column"] = d.column;
    }
    details.push_back(std::move(item));
  }
  Json body{{"code", ErrorCodeName(e.code())},
            {"message", e.what()},
            {"details", std::move(details)}};
  return HttpResponse{HttpStatusFor(e.code()), body.dump()};
}

namespace {

HttpResponse Ok(const Json& j, int status = 200) {
  return HttpResponse{status, j.dump()};
}

Json UserJson(const User& u) {
  return Json{{"id", u.id}, {"name", u.name}, {"role", ToString(u.role)}};
}

Json ParseBody(const HttpRequest& req) {
  if (req.body.empty()) return Json::object();
  try {
    Json j = Json::parse(req.body);
    if (!j.is_object())
      throw Error(ErrorCode::kInvalidArgument, "request body must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("request body is not valid JSON: ") + e.what());
  }
}

std::string RequireString(const Json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_string())
    throw Error(ErrorCode::kInvalidArgument,
                std::string("field '") + key + "' must be a string");
  return body[key].get<std::string>();
}

std::optional<uint64_t> ExpectedVersion(const Json& body) {
  if (!body.contains("expected_version") || body["expected_version"].is_null())
    return std::nullopt;
  if (!body["expected_version"].is_number_unsigned())
    throw Error(ErrorCode::kInvalidArgument,
                "expected_version must be a non-negative integer");
  return body["expected_version"].get<uint64_t>();
}

std::string Query(const HttpRequest& req, const char* key) {
  auto it = req.query.find(key);
  return it == req.query.end() ? std::string() : it->second;
}

std::string BearerToken(const HttpRequest& req) {
  auto it = req.headers.find("authorization");
  if (it == req.headers.end()) return {};
  static constexpr std::string_view kPrefix = "Bearer ";
  if (it->second.rfind(kPrefix, 0) != 0) return {};
  return it->second.substr(kPrefix.size());
}

template <typename T>
T Get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed ") + what + ": " + e.what());
  }
}

Json VersionedDocument(const Document& d) {
  Json j = d;
  return j;
}

EditRequest ParseEditRequest(const Json& body) {
  EditRequest r;
  r.kind = ParseEditKind(RequireString(body, "kind"));
  switch (r.kind) {
    case EditKind::kModify:
      r.token = TokenId(RequireString(body, "token_id"));
      r.new_surface = RequireString(body, "new_surface");
      break;
    case EditKind::kSplit:
      r.token = TokenId(RequireString(body, "token_id"));
      r.parts = Get<std::vector<std::string>>(body.value("parts", Json::array()),
                                              "parts");
      break;
    case EditKind::kMerge:
      r.tokens = Get<std::vector<TokenId>>(body.value("token_ids", Json::array()),
                                           "token_ids");
      break;
  }
  return r;
}

Json SearchJson(const AnalysisSearchResult& r) {
  Json prior = Json::array();
  for (const auto& p : r.prior_annotations) {
    prior.push_back(Json{{"annotation", p.annotation},
                         {"document", p.document},
                         {"token_id", p.token},
                         {"author", p.author},
                         {"updated_at", FormatRfc3339(p.updated_at)}});
  }
  return Json{{"provider_analyses", r.provider_analyses},
              {"prior_annotations", std::move(prior)}};
}

Json EditStatsJson(const EditStats& s) {
  return Json{{"tokens_raw", s.tokens_raw},
              {"tokens_current", s.tokens_current},
              {"changed_words", s.changed_words},
              {"change_rate", s.change_rate},
              {"change_rate_display", FormatPercent(s.change_rate)},
              {"splits", s.splits},
              {"merges", s.merges},
              {"modifies", s.modifies}};
}

Json TranslitJson(const TranslitResult& r) {
  Json warnings = Json::array();
  for (const auto& w : r.warnings) {
    std::string ch;
    utf8::Append(ch, w.codepoint);
    warnings.push_back(Json{{"offset", w.offset}, {"character", ch}});
  }
  return Json{{"text", r.text}, {"warnings", std::move(warnings)}};
}

}  // namespace

HttpResponse Service::Handle(const HttpRequest& request) {
  std::string cache_key;
  if (request.method == "POST") {
    auto it = request.headers.find("idempotency-key");
    if (it != request.headers.end() && !it->second.empty()) {
      cache_key = BearerToken(request) + "\n" + request.path + "\n" + it->second;
      std::lock_guard lock(idempotency_mu_);
      auto hit = idempotency_cache_.find(cache_key);
      if (hit != idempotency_cache_.end()) return hit->second;
    }
  }
  HttpResponse response;
  try {
    response = Dispatch(request, nullptr);
  } catch (const Error& e) {
    response = ErrorResponse(e);
  } catch (const std::exception& e) {
    response = ErrorResponse(Error(ErrorCode::kIo, e.what()));
  }
  if (!cache_key.empty() && response.status < 500) {
    std::lock_guard lock(idempotency_mu_);
    idempotency_cache_.emplace(cache_key, response);
  }
  return response;
}

HttpResponse Service::HandleAs(const Actor& actor, const HttpRequest& request) {
  try {
    return Dispatch(request, &actor);
  } catch (const Error& e) {
    return ErrorResponse(e);
  } catch (const std::exception& e) {
    return ErrorResponse(Error(ErrorCode::kIo, e.what()));
  }
}

HttpResponse Service::Dispatch(const HttpRequest& req, const Actor* as) {
  static const std::regex kDoc(R"(^/api/documents/([^/]+)$)");
  static const std::regex kDocAction(
      R"(^/api/documents/([^/]+)/(assign|annotations|bulk-apply|submit|review|export|stats|edit-log)$)");
  static const std::regex kSentenceAction(
      R"(^/api/documents/([^/]+)/sentences/([^/]+)/(edits|undo|redo)$)");

  const std::string& m = req.method;
  const std::string& path = req.path;

  if (m == "POST" && path == "/api/login") {
    const Json body = ParseBody(req);
    const std::string name = RequireString(body, "name");
    const std::string token = ws_.Login(name, RequireString(body, "credential"));
    return Ok(Json{{"token", token}, {"user", UserJson(*ws_.store().FindUserByName(name))}});
  }
  if (m == "GET" && path == "/api/tagset") {
    return HttpResponse{200, TagSetToJson(ws_.tagset())};
  }
  if (m == "GET" && path == "/api/transliterate") {
    const std::string to = Query(req, "to");
    const auto& table = TranslitTable::Standard();
    if (to == "buckwalter") return Ok(TranslitJson(table.ArabicToBuckwalter(Query(req, "text"))));
    if (to.empty() || to == "arabic")
      return Ok(TranslitJson(table.BuckwalterToArabic(Query(req, "text"))));
    throw Error(ErrorCode::kInvalidArgument, "to must be 'arabic' or 'buckwalter'");
  }

  const Actor actor = as ? *as : ws_.Authenticate(BearerToken(req));

  if (path == "/api/users") {
    if (m == "POST") {
      const Json body = ParseBody(req);
      const User u = ws_.CreateUser(actor, RequireString(body, "name"),
                                    ParseRole(body.value("role", std::string("annotator"))),
                                    RequireString(body, "credential"));
      return Ok(UserJson(u), 201);
    }
    if (m == "GET") {
      Json list = Json::array();
      for (const auto& u : ws_.ListUsers(actor)) list.push_back(UserJson(u));
      return Ok(list);
    }
  }
  if (path == "/api/documents") {
    if (m == "POST") {
      const Json body = ParseBody(req);
      const Document d = ws_.Upload(actor, body.value("title", std::string()),
                                    body.value("dialect", std::string()),
                                    RequireString(body, "text"));
      return Ok(DocumentSummaryJson(d), 201);
    }
    if (m == "GET") {
      Json list = Json::array();
      for (const auto& d : ws_.List(actor)) list.push_back(DocumentSummaryJson(d));
      return Ok(list);
    }
  }
  if (m == "POST" && path == "/api/documents/import") {
    return Ok(DocumentSummaryJson(ws_.Import(actor, req.body)), 201);
  }
  if (m == "GET" && path == "/api/analyses") {
    const std::string surface = Query(req, "surface");
    if (surface.empty())
      throw Error(ErrorCode::kInvalidArgument, "surface query parameter is required");
    return Ok(SearchJson(ws_.Search(actor, surface, Query(req, "dialect"))));
  }
  if (m == "GET" && path == "/api/progress") {
    std::optional<UserId> user;
    std::optional<DocumentId> doc;
    if (auto u = Query(req, "user"); !u.empty()) user = UserId(u);
    if (auto d = Query(req, "doc"); !d.empty()) doc = DocumentId(d);
    return Ok(ToJson(ws_.Progress(actor, user, doc)));
  }
  if (m == "GET" && path == "/api/iaa") {
    const std::string doc = Query(req, "doc");
    const std::string gold = Query(req, "gold");
    if (doc.empty() || gold.empty())
      throw Error(ErrorCode::kInvalidArgument, "doc and gold query parameters are required");
    return Ok(ToJson(ws_.Iaa(actor, DocumentId(doc), DocumentId(gold))));
  }

  std::smatch match;
  if (std::regex_match(path, match, kDoc) && m == "GET") {
    return Ok(VersionedDocument(ws_.Get(actor, DocumentId(match[1]))));
  }
  if (std::regex_match(path, match, kSentenceAction) && m == "POST") {
    const DocumentId doc(match[1]);
    const SentenceId sid(match[2]);
    const std::string action = match[3];
    const Json body = ParseBody(req);
    const auto expected = ExpectedVersion(body);
    Document d;
    if (action == "edits") {
      d = ws_.Edit(actor, doc, sid, ParseEditRequest(body), expected);
    } else if (action == "undo") {
      d = ws_.Undo(actor, doc, sid, expected);
    } else {
      d = ws_.Redo(actor, doc, sid, expected);
    }
    return Ok(Json{{"version", d.version},
                   {"status", ToString(d.status)},
                   {"sentence", *d.find_sentence(sid)}});
  }
  if (std::regex_match(path, match, kDocAction)) {
    const DocumentId doc(match[1]);
    const std::string action = match[2];
    if (m == "GET" && action == "export") {
      return HttpResponse{200, ws_.Export(actor, doc)};
    }
    if (m == "GET" && action == "stats") {
      const DocumentStats st = ws_.Stats(actor, doc);
      return Ok(Json{{"edits", EditStatsJson(st.edits)},
                     {"suggestions", ToJson(st.suggestions)}});
    }
    if (m == "GET" && action == "edit-log") {
      const Document d = ws_.Get(actor, doc);
      std::string out;
      for (const auto& s : d.sentences) out += EditLogJsonLines(s.edit_log, true);
      return HttpResponse{200, out, "application/x-ndjson"};
    }
    if (m == "POST") {
      const Json body = ParseBody(req);
      const auto expected = ExpectedVersion(body);
      if (action == "assign") {
        return Ok(DocumentSummaryJson(
            ws_.Assign(actor, doc, RequireString(body, "user"), expected)));
      }
      if (action == "submit") {
        return Ok(DocumentSummaryJson(ws_.Submit(actor, doc, expected)));
      }
      if (action == "review") {
        const std::string verdict = RequireString(body, "verdict");
        if (verdict != "approve" && verdict != "reject")
          throw Error(ErrorCode::kInvalidArgument, "verdict must be approve or reject");
        return Ok(DocumentSummaryJson(ws_.Review(actor, doc, verdict == "approve",
                                                 body.value("note", std::string()),
                                                 expected)));
      }
      if (action == "annotations") {
        const TokenId token(RequireString(body, "token_id"));
        const auto ann = Get<MorphAnnotation>(body.value("annotation", Json()), "annotation");
        const Document d = ws_.Annotate(actor, doc, token, ann, expected);
        for (const auto& s : d.sentences) {
          if (const auto* rec = s.annotation_for(token)) {
            return Ok(Json{{"version", d.version}, {"token_id", token}, {"record", *rec}});
          }
        }
        return Ok(Json{{"version", d.version}});
      }
      if (action == "bulk-apply") {
        const auto ann = Get<MorphAnnotation>(body.value("annotation", Json()), "annotation");
        const auto [d, count] =
            ws_.BulkApply(actor, doc, RequireString(body, "surface"), ann, expected);
        return Ok(Json{{"version", d.version}, {"count", count}});
      }
    }
  }
  throw Error(ErrorCode::kNotFound, "no route for " + m + " " + path);
}

}  // namespace morphann
