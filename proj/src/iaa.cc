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

#include "morphann/iaa.h"

#include <cstdio>
#include <map>

#include "morphann/edit_engine.h"
#include "morphann/error.h"

namespace morphann {

namespace {

// raw id -> its single current descendant, for raw tokens that map 1:1.
std::map<TokenId, TokenId> OneToOne(const Sentence& s) {
  const Alignment al = ComputeAlignment(s);
  std::map<TokenId, std::vector<TokenId>> down;
  std::map<TokenId, size_t> up;
  for (const auto& [raw, cur] : al.pairs) {
    down[raw].push_back(cur);
    ++up[cur];
  }
  std::map<TokenId, TokenId> out;
  for (const auto& [raw, curs] : down) {
    if (curs.size() == 1 && up[curs[0]] == 1) out.emplace(raw, curs[0]);
  }
  return out;
}

bool SameRaw(const Sentence& a, const Sentence& b) {
  if (a.raw_tokens.size() != b.raw_tokens.size()) return false;
  for (size_t i = 0; i < a.raw_tokens.size(); ++i) {
    if (a.raw_tokens[i].id != b.raw_tokens[i].id ||
        a.raw_tokens[i].surface != b.raw_tokens[i].surface) {
      return false;
    }
  }
  return true;
}

std::string Lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

double Ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

VersionAlignment AlignVersions(const Document& a, const Document& b) {
  if (a.sentences.size() != b.sentences.size())
    throw Error(ErrorCode::kInvalidArgument,
                "mismatched raw text: documents have different sentence counts");
  VersionAlignment out;
  for (size_t i = 0; i < a.sentences.size(); ++i) {
    const Sentence& sa = a.sentences[i];
    const Sentence& sb = b.sentences[i];
    if (sa.id != sb.id || !SameRaw(sa, sb))
      throw Error(ErrorCode::kInvalidArgument,
                  "mismatched raw text in sentence " + sa.id.str());
    const auto one_a = OneToOne(sa);
    const auto one_b = OneToOne(sb);
    size_t paired = 0;
    for (const auto& raw : sa.raw_tokens) {
      auto ia = one_a.find(raw.id);
      auto ib = one_b.find(raw.id);
      if (ia == one_a.end() || ib == one_b.end()) continue;
      if (sa.find_current(ia->second)->surface !=
          sb.find_current(ib->second)->surface) {
        continue;
      }
      out.comparable.push_back({sa.id, ia->second, ib->second});
      ++paired;
    }
    out.unaligned_a += sa.current_tokens.size() - paired;
    out.unaligned_b += sb.current_tokens.size() - paired;
  }
  return out;
}

double CohensKappa(const std::vector<std::string>& a,
                   const std::vector<std::string>& b) {
  if (a.size() != b.size() || a.empty())
    throw Error(ErrorCode::kInvalidArgument,
                "kappa needs two non-empty sequences of equal length");
  const double n = static_cast<double>(a.size());
  std::map<std::string, double> count_a, count_b;
  double agree = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i];
    count_a[a[i]] += 1;
    count_b[b[i]] += 1;
  }
  const double po = agree / n;
  double pe = 0;
  for (const auto& [label, ca] : count_a) {
    auto it = count_b.find(label);
    if (it != count_b.end()) pe += (ca / n) * (it->second / n);
  }
  if (pe >= 1.0) return 1.0;
  return (po - pe) / (1.0 - pe);
}

IAAReport ComputeIaa(const Document& annotator, const Document& gold) {
  const VersionAlignment al = AlignVersions(annotator, gold);
  IAAReport r;
  r.aligned_tokens = al.comparable.size();
  r.unaligned_tokens = al.unaligned_a + al.unaligned_b;
  if (al.comparable.empty()) return r;

  static const MorphAnnotation kEmpty;
  size_t tok = 0, pos = 0, lemma = 0, gloss = 0;
  std::vector<std::string> labels_a, labels_b;
  for (const auto& pair : al.comparable) {
    const Sentence* sa = annotator.find_sentence(pair.sentence);
    const Sentence* sb = gold.find_sentence(pair.sentence);
    const AnnotationRecord* ra = sa->annotation_for(pair.a);
    const AnnotationRecord* rb = sb->annotation_for(pair.b);
    const MorphAnnotation& x = ra ? ra->annotation : kEmpty;
    const MorphAnnotation& y = rb ? rb->annotation : kEmpty;
    const std::vector<std::string> seg_x =
        ra ? x.segment_surfaces() : std::vector<std::string>{};
    const std::vector<std::string> seg_y =
        rb ? y.segment_surfaces() : std::vector<std::string>{};
    tok += seg_x == seg_y;
    pos += x.baseword.pos == y.baseword.pos;
    lemma += x.lemma == y.lemma;
    gloss += Lower(x.gloss) == Lower(y.gloss);
    labels_a.push_back(x.baseword.pos);
    labels_b.push_back(y.baseword.pos);
  }
  const size_t n = al.comparable.size();
  r.tokenization_agreement = Ratio(tok, n);
  r.baseword_pos_agreement = Ratio(pos, n);
  r.lemma_agreement = Ratio(lemma, n);
  r.gloss_agreement = Ratio(gloss, n);
  r.pos_kappa = CohensKappa(labels_a, labels_b);
  return r;
}

SuggestionAccuracyReport ComputeSuggestionAccuracy(const Document& d) {
  SuggestionAccuracyReport r;
  size_t tok = 0, pos = 0, lemma = 0;
  for (const auto& s : d.sentences) {
    for (const auto& t : s.current_tokens) {
      const AnnotationRecord* rec = s.annotation_for(t.id);
      if (rec == nullptr || rec->stale ||
          rec->annotation.source == AnnotationSource::kSuggested) {
        continue;
      }
      auto it = s.suggestions.find(t.id);
      if (it == s.suggestions.end() || it->second.empty() ||
          it->second.front().is_fallback()) {
        continue;
      }
      const MorphAnnotation& final_ann = rec->annotation;
      const MorphAnnotation& suggested = it->second.front().annotation;
      ++r.evaluated;
      tok += final_ann.segment_surfaces() == suggested.segment_surfaces();
      pos += final_ann.baseword.pos == suggested.baseword.pos;
      lemma += final_ann.lemma == suggested.lemma;
    }
  }
  r.tokenization_acc = Ratio(tok, r.evaluated);
  r.baseword_pos_acc = Ratio(pos, r.evaluated);
  r.lemma_acc = Ratio(lemma, r.evaluated);
  return r;
}

Json ToJson(const IAAReport& r) {
  Json j{{"aligned_tokens", r.aligned_tokens},
         {"unaligned_tokens", r.unaligned_tokens},
         {"tokenization_agreement", r.tokenization_agreement},
         {"baseword_pos_agreement", r.baseword_pos_agreement},
         {"lemma_agreement", r.lemma_agreement},
         {"gloss_agreement", r.gloss_agreement},
         {"pos_kappa", nullptr}};
  if (r.pos_kappa) j["pos_kappa"] = *r.pos_kappa;
  return j;
}

Json ToJson(const SuggestionAccuracyReport& r) {
  return Json{{"evaluated", r.evaluated},
              {"tokenization_acc", r.tokenization_acc},
              {"baseword_pos_acc", r.baseword_pos_acc},
              {"lemma_acc", r.lemma_acc}};
}

namespace {

std::string Row(const char* label, const std::string& value) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-24s %12s\n", label, value.c_str());
  return buf;
}

std::string Fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string FormatTable(const IAAReport& r) {
  std::string out;
  out += Row("aligned tokens", std::to_string(r.aligned_tokens));
  out += Row("unaligned tokens", std::to_string(r.unaligned_tokens));
  out += Row("tokenization agreement", Fixed(r.tokenization_agreement));
  out += Row("baseword POS agreement", Fixed(r.baseword_pos_agreement));
  out += Row("lemma agreement", Fixed(r.lemma_agreement));
  out += Row("gloss agreement", Fixed(r.gloss_agreement));
  out += Row("POS kappa", r.pos_kappa ? Fixed(*r.pos_kappa) : "n/a");
  return out;
}

std::string FormatTable(const SuggestionAccuracyReport& r) {
  std::string out;
  out += Row("evaluated tokens", std::to_string(r.evaluated));
  out += Row("tokenization accuracy", Fixed(r.tokenization_acc));
  out += Row("baseword POS accuracy", Fixed(r.baseword_pos_acc));
  out += Row("lemma accuracy", Fixed(r.lemma_acc));
  return out;
}

}  // namespace morphann
