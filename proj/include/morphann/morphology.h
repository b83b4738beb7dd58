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

#ifndef MORPHANN_MORPHOLOGY_H_
#define MORPHANN_MORPHOLOGY_H_

#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphann/model.h"
#include "morphann/tagset.h"

namespace morphann {

// Source of out-of-context analyses. Implementations must be deterministic
// for a fixed version and return analyses sorted by descending score.
class AnalyzerProvider {
 public:
  virtual ~AnalyzerProvider() = default;

  virtual std::string id() const = 0;
  virtual std::vector<Analysis> Analyze(std::string_view surface,
                                        std::string_view dialect) const = 0;
};

// Looks surfaces up in a lexicon file keyed by surface, then dialect.
// Format in docs/formats.md.
class LexiconProvider : public AnalyzerProvider {
 public:
  static LexiconProvider Parse(std::string_view json_text);
  static LexiconProvider Load(const std::filesystem::path& path);

  std::string id() const override { return id_; }
  std::vector<Analysis> Analyze(std::string_view surface,
                                std::string_view dialect) const override;

  size_t size() const { return entries_.size(); }

 private:
  std::string id_;
  // surface -> dialect -> analyses (sorted)
  std::map<std::string, std::map<std::string, std::vector<Analysis>>,
           std::less<>>
      entries_;
};

std::filesystem::path DefaultLexiconPath();

// Whole surface as baseword with `default_tag`, lemma = surface, no gloss.
Analysis FallbackAnalysis(std::string_view surface, std::string_view dialect,
                          std::string_view default_tag);

using SuggestionMap = std::map<TokenId, std::vector<Analysis>>;

struct PrecomputeOptions {
  std::string default_tag = "NOUN";
  // Provider calls run on this many threads; results are keyed by token,
  // so the output does not depend on completion order.
  size_t workers = 1;
  Timestamp now{};
};

// Fills `d.sentences[*].suggestions` for every current token and pre-fills
// the top analysis as a `suggested` annotation where no human or bulk
// annotation exists. On provider failure throws Error(kProviderFailure)
// and leaves `d` untouched.
SuggestionMap PrecomputeSuggestions(Document& d, const AnalyzerProvider& provider,
                                    const PrecomputeOptions& options);

struct PriorAnnotation {
  MorphAnnotation annotation;
  DocumentId document;
  TokenId token;
  UserId author;
  Timestamp updated_at{};
};

struct AnalysisSearchResult {
  std::vector<Analysis> provider_analyses;
  // Most recent first, one entry per distinct content.
  std::vector<PriorAnnotation> prior_annotations;
};

AnalysisSearchResult SearchAnalyses(std::string_view surface,
                                    std::string_view dialect,
                                    const AnalyzerProvider& provider,
                                    std::span<const Document> scope);

// Stores `ann` on the live token `token_id` as a human annotation and
// bumps d.version. Boundary markers are stripped before validation.
const AnnotationRecord& SubmitAnnotation(Document& d, const TokenId& token_id,
                                         MorphAnnotation ann,
                                         const Actor& actor,
                                         const TagSet& tagset, Timestamp now);

// Copies `ann` onto every live token whose surface equals `surface`
// exactly. Returns the number of matching tokens; bumps d.version once if
// there was at least one.
size_t ApplyToMatching(Document& d, std::string_view surface,
                       MorphAnnotation ann, const Actor& actor,
                       const TagSet& tagset, Timestamp now);

}  // namespace morphann

#endif  // MORPHANN_MORPHOLOGY_H_
