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

#ifndef MORPHANN_IAA_H_
#define MORPHANN_IAA_H_

#include <optional>
#include <string>
#include <vector>

#include "morphann/json.h"
#include "morphann/model.h"

namespace morphann {

struct TokenPair {
  SentenceId sentence;
  TokenId a;
  TokenId b;
};

// Current tokens of two versions of the same raw text, paired through the
// raw tokens. A pair is comparable when each side is the only descendant
// of one raw token, the two raw tokens coincide and the surfaces match.
struct VersionAlignment {
  std::vector<TokenPair> comparable;
  size_t unaligned_a = 0;
  size_t unaligned_b = 0;
};

// Throws Error(kInvalidArgument) if the raw tokens differ.
VersionAlignment AlignVersions(const Document& a, const Document& b);

struct IAAReport {
  size_t aligned_tokens = 0;
  size_t unaligned_tokens = 0;
  // 0 when aligned_tokens is 0.
  double tokenization_agreement = 0.0;
  double baseword_pos_agreement = 0.0;
  double lemma_agreement = 0.0;
  double gloss_agreement = 0.0;
  // Cohen's kappa over baseword POS; absent when nothing was comparable.
  std::optional<double> pos_kappa;
};

// Compares `annotator` with `gold` on comparable pairs. Tokens without an
// annotation compare as empty segmentation, tag, lemma and gloss.
IAAReport ComputeIaa(const Document& annotator, const Document& gold);

// Cohen's kappa for two parallel label sequences of equal, non-zero
// length. Defined as 1 when both raters use one identical label throughout.
double CohensKappa(const std::vector<std::string>& a,
                   const std::vector<std::string>& b);

struct SuggestionAccuracyReport {
  size_t evaluated = 0;
  double tokenization_acc = 0.0;
  double baseword_pos_acc = 0.0;
  double lemma_acc = 0.0;
};

// Over live tokens that carry a non-stale human or bulk annotation and a
// non-fallback top suggestion: how often the final choice equals the
// suggestion, per field.
SuggestionAccuracyReport ComputeSuggestionAccuracy(const Document& d);

Json ToJson(const IAAReport& r);
Json ToJson(const SuggestionAccuracyReport& r);
std::string FormatTable(const IAAReport& r);
std::string FormatTable(const SuggestionAccuracyReport& r);

}  // namespace morphann

#endif  // MORPHANN_IAA_H_
