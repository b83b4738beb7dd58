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

#include "morphann/morphology.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "morphann/error.h"
#include "morphann/json.h"
#include "morphann/translit.h"

namespace morphann {

namespace {

void SortByScore(std::vector<Analysis>& analyses) {
  std::stable_sort(analyses.begin(), analyses.end(),
                   [](const Analysis& a, const Analysis& b) {
                     return a.score > b.score;
                   });
}

}  // namespace

LexiconProvider LexiconProvider::Parse(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchemaViolation, "lexicon is not valid JSON",
                {{"", 0, 0, e.what()}});
  }
  LexiconProvider lex;
  std::vector<Diagnostic> diags;
  lex.id_ = j.value("provider", std::string("lexicon"));
  const bool buckwalter = j.value("transliteration", std::string()) == "buckwalter";
  auto script = [&](const std::string& s) { return buckwalter ? BwToAr(s) : s; };
  if (!j.contains("entries") || !j["entries"].is_object()) {
    throw Error(ErrorCode::kSchemaViolation, "lexicon needs an entries object",
                {{"/entries", 0, 0, "required object"}});
  }
  for (const auto& [surface, dialects] : j["entries"].items()) {
    for (const auto& [dialect, list] : dialects.items()) {
      std::vector<Analysis> analyses;
      for (size_t i = 0; i < list.size(); ++i) {
        const std::string path =
            "/entries/" + surface + "/" + dialect + "/" + std::to_string(i);
        try {
          Analysis a;
          a.annotation = list[i].get<MorphAnnotation>();
          a.annotation.source = AnnotationSource::kSuggested;
          for (auto& s : a.annotation.proclitics) s.surface = script(s.surface);
          a.annotation.baseword.surface = script(a.annotation.baseword.surface);
          for (auto& s : a.annotation.enclitics) s.surface = script(s.surface);
          a.annotation.lemma = script(a.annotation.lemma);
          a.score = list[i].value("score", 0.0);
          if (a.score < 0.0 || a.score > 1.0)
            diags.push_back({path + "/score", 0, 0, "score must be in [0,1]"});
          a.dialect = dialect;
          a.provider = lex.id_;
          analyses.push_back(std::move(a));
        } catch (const Json::exception& e) {
          diags.push_back({path, 0, 0, e.what()});
        }
      }
      SortByScore(analyses);
      lex.entries_[script(surface)][dialect] = std::move(analyses);
    }
  }
  if (!diags.empty())
    throw Error(ErrorCode::kSchemaViolation, "invalid lexicon", std::move(diags));
  return lex;
}

LexiconProvider LexiconProvider::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

std::vector<Analysis> LexiconProvider::Analyze(std::string_view surface,
                                               std::string_view dialect) const {
  auto it = entries_.find(surface);
  if (it == entries_.end()) return {};
  auto dit = it->second.find(std::string(dialect));
  if (dit == it->second.end()) return {};
  return dit->second;
}

std::filesystem::path DefaultLexiconPath() {
  return std::filesystem::path(MORPHANN_DATA_DIR) / "lexicon.json";
}

Analysis FallbackAnalysis(std::string_view surface, std::string_view dialect,
                          std::string_view default_tag) {
  Analysis a;
  a.annotation.baseword.surface = std::string(surface);
  a.annotation.baseword.pos = std::string(default_tag);
  a.annotation.lemma = std::string(surface);
  a.annotation.source = AnnotationSource::kSuggested;
  a.dialect = std::string(dialect);
  a.score = 0.0;
  a.provider = std::string(kFallbackProvider);
  return a;
}

SuggestionMap PrecomputeSuggestions(Document& d, const AnalyzerProvider& provider,
                                    const PrecomputeOptions& options) {
  std::vector<std::string> surfaces;
  {
    std::set<std::string> unique;
    for (const auto& s : d.sentences) {
      for (const auto& t : s.current_tokens) unique.insert(t.surface);
    }
    surfaces.assign(unique.begin(), unique.end());
  }

  std::vector<std::vector<Analysis>> results(surfaces.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (size_t i = next++; i < surfaces.size(); i = next++) {
      try {
        results[i] = provider.Analyze(surfaces[i], d.dialect);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = surfaces.size();
      }
    }
  };
  const size_t workers = std::max<size_t>(1, std::min(options.workers, surfaces.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) {
    std::string what = "analyzer provider failed";
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      what += ": ";
      what += e.what();
    } catch (...) {
    }
    throw Error(ErrorCode::kProviderFailure, what);
  }

  std::map<std::string, std::vector<Analysis>, std::less<>> by_surface;
  for (size_t i = 0; i < surfaces.size(); ++i) {
    auto& list = results[i];
    SortByScore(list);
    if (list.empty())
      list.push_back(FallbackAnalysis(surfaces[i], d.dialect, options.default_tag));
    by_surface.emplace(surfaces[i], std::move(list));
  }

  SuggestionMap out;
  for (auto& s : d.sentences) {
    for (const auto& t : s.current_tokens) {
      const auto& list = by_surface.find(t.surface)->second;
      out[t.id] = list;
      s.suggestions[t.id] = list;
      auto existing = s.annotations.find(t.id);
      const bool keep = existing != s.annotations.end() &&
                        existing->second.annotation.source !=
                            AnnotationSource::kSuggested;
      if (keep) continue;
      AnnotationRecord rec;
      rec.annotation = list.front().annotation;
      rec.annotation.source = AnnotationSource::kSuggested;
      rec.author = UserId(provider.id());
      rec.updated_at = options.now;
      s.annotations[t.id] = std::move(rec);
    }
  }
  return out;
}

AnalysisSearchResult SearchAnalyses(std::string_view surface,
                                    std::string_view dialect,
                                    const AnalyzerProvider& provider,
                                    std::span<const Document> scope) {
  if (surface.empty())
    throw Error(ErrorCode::kInvalidArgument, "search surface must not be empty");
  AnalysisSearchResult result;
  result.provider_analyses = provider.Analyze(surface, dialect);
  SortByScore(result.provider_analyses);

  std::vector<PriorAnnotation> found;
  for (const Document& d : scope) {
    for (const Sentence& s : d.sentences) {
      for (const Token& t : s.current_tokens) {
        if (t.surface != surface) continue;
        const AnnotationRecord* rec = s.annotation_for(t.id);
        if (rec == nullptr || rec->stale ||
            rec->annotation.source == AnnotationSource::kSuggested) {
          continue;
        }
        found.push_back({rec->annotation, d.id, t.id, rec->author, rec->updated_at});
      }
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const PriorAnnotation& a, const PriorAnnotation& b) {
                     return a.updated_at > b.updated_at;
                   });
  for (auto& p : found) {
    const bool dup = std::any_of(
        result.prior_annotations.begin(), result.prior_annotations.end(),
        [&](const PriorAnnotation& q) {
          return q.annotation.same_content(p.annotation);
        });
    if (!dup) result.prior_annotations.push_back(std::move(p));
  }
  return result;
}

namespace {

void CheckAssigned(const Document& d, const Actor& actor) {
  if (actor.is_lead()) return;
  if (!d.assignee || *d.assignee != actor.id) {
    throw Error(ErrorCode::kForbidden, "document " + d.id.str() +
                                           " is not assigned to user " +
                                           actor.id.str());
  }
}

void ThrowIfInvalid(const ValidationResult& v) {
  if (v.ok()) return;
  std::vector<Diagnostic> details;
  for (const auto& viol : v.violations)
    details.push_back({viol.where, 0, 0, viol.message});
  throw Error(ErrorCode::kValidationFailed, "annotation failed validation",
              std::move(details));
}

}  // namespace

const AnnotationRecord& SubmitAnnotation(Document& d, const TokenId& token_id,
                                         MorphAnnotation ann,
                                         const Actor& actor,
                                         const TagSet& tagset, Timestamp now) {
  Sentence* sentence = nullptr;
  const Token* token = nullptr;
  for (auto& s : d.sentences) {
    if ((token = s.find_current(token_id)) != nullptr) {
      sentence = &s;
      break;
    }
  }
  if (token == nullptr)
    throw Error(ErrorCode::kNotFound, "unknown token id '" + token_id.str() + "'");
  CheckAssigned(d, actor);
  ann = StripBoundaryMarkers(std::move(ann));
  ThrowIfInvalid(ValidateAnnotation(ann, *token, tagset));
  BeginWork(d);

  ann.source = AnnotationSource::kHuman;
  AnnotationRecord& rec = sentence->annotations[token_id];
  rec.annotation = std::move(ann);
  rec.stale = false;
  rec.author = actor.id;
  rec.updated_at = now;
  ++d.version;
  return rec;
}

size_t ApplyToMatching(Document& d, std::string_view surface,
                       MorphAnnotation ann, const Actor& actor,
                       const TagSet& tagset, Timestamp now) {
  CheckAssigned(d, actor);
  ann = StripBoundaryMarkers(std::move(ann));
  ThrowIfInvalid(ValidateAnnotation(ann, surface, tagset));
  ann.source = AnnotationSource::kBulkApplied;

  size_t count = 0;
  for (const auto& s : d.sentences) {
    for (const auto& t : s.current_tokens) count += t.surface == surface;
  }
  if (count == 0) return 0;
  BeginWork(d);
  for (auto& s : d.sentences) {
    for (const auto& t : s.current_tokens) {
      if (t.surface != surface) continue;
      auto it = s.annotations.find(t.id);
      if (it != s.annotations.end() && !it->second.stale &&
          it->second.annotation == ann) {
        continue;
      }
      s.annotations[t.id] = AnnotationRecord{ann, false, actor.id, now};
    }
  }
  ++d.version;
  return count;
}

}  // namespace morphann
