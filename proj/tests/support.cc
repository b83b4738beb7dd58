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

#include "support.h"

#include <algorithm>
#include <cctype>
#include <atomic>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <thread>

#include <unistd.h>

#include "morphann/edit_engine.h"
#include "morphann/error.h"

namespace morphann::testing {

uint64_t TestSeed(uint64_t fallback) {
  if (const char* env = std::getenv("MORPHANN_TEST_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return fallback;
}

size_t Uniform(Rng& rng, size_t lo, size_t hi) {
  return std::uniform_int_distribution<size_t>(lo, hi)(rng);
}

bool Coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string RandomSurface(Rng& rng, size_t min_len, size_t max_len) {
  static const std::string kLetters = "AbtvjHxd*rzs$SDTZEgfqklmnhwyp'>&<}|";
  std::string s;
  const size_t n = Uniform(rng, min_len, max_len);
  for (size_t i = 0; i < n; ++i) s += kLetters[Uniform(rng, 0, kLetters.size() - 1)];
  return s;
}

Sentence RandomSentence(Rng& rng, const SentenceId& id, size_t tokens) {
  std::vector<std::string> surfaces;
  for (size_t i = 0; i < tokens; ++i) surfaces.push_back(RandomSurface(rng));
  return MakeSentence(id, surfaces);
}

std::vector<OracleToken> OracleReplay(const std::vector<Token>& raw,
                                      const std::vector<EditOp>& ops,
                                      size_t count) {
  std::vector<OracleToken> toks;
  for (const auto& t : raw) toks.push_back({t.id, t.surface, Provenance::kRaw, {t.id}});
  auto find = [&](const TokenId& id) {
    for (size_t i = 0; i < toks.size(); ++i) {
      if (toks[i].id == id) return i;
    }
    throw std::logic_error("oracle: unknown id " + id.str());
  };
  for (size_t k = 0; k < count; ++k) {
    const EditOp& op = ops[k];
    if (op.kind == EditKind::kModify) {
      OracleToken& t = toks[find(op.targets[0])];
      if (t.surface != op.before[0]) throw std::logic_error("oracle: before mismatch");
      t.surface = op.after[0];
      t.provenance = Provenance::kEdited;
    } else if (op.kind == EditKind::kSplit) {
      const size_t at = find(op.targets[0]);
      const OracleToken parent = toks[at];
      std::vector<OracleToken> kids;
      for (size_t i = 0; i < op.after.size(); ++i) {
        kids.push_back({op.results[i], op.after[i], Provenance::kSplitChild,
                        parent.ancestors});
      }
      toks.erase(toks.begin() + at);
      toks.insert(toks.begin() + at, kids.begin(), kids.end());
    } else {
      std::vector<size_t> idx;
      for (const auto& id : op.targets) idx.push_back(find(id));
      std::sort(idx.begin(), idx.end());
      for (size_t i = 1; i < idx.size(); ++i) {
        if (idx[i] != idx[i - 1] + 1) throw std::logic_error("oracle: not adjacent");
      }
      OracleToken merged{op.results[0], "", Provenance::kMergeResult, {}};
      for (size_t i : idx) {
        merged.surface += toks[i].surface;
        merged.ancestors.insert(toks[i].ancestors.begin(), toks[i].ancestors.end());
      }
      toks.erase(toks.begin() + idx.front(), toks.begin() + idx.back() + 1);
      toks.insert(toks.begin() + idx.front(), merged);
    }
  }
  return toks;
}

Sentence RandomStep(Rng& rng, const Sentence& s, bool& threw) {
  threw = false;
  const EditContext ctx{UserId("u" + std::to_string(Uniform(rng, 1, 3))),
                        Timestamp(std::chrono::milliseconds(Uniform(rng, 0, 1u << 30)))};
  const auto& cur = s.current_tokens;
  const size_t pick = cur.empty() ? 0 : Uniform(rng, 0, cur.size() - 1);
  const bool invalid = Coin(rng, 0.1);
  try {
    switch (Uniform(rng, 0, 5)) {
      case 0:
        if (invalid || cur.empty()) {
          return ModifyToken(s, TokenId("nope"), "x", ctx);
        }
        return ModifyToken(s, cur[pick].id,
                           Coin(rng, 0.1) ? cur[pick].surface : RandomSurface(rng), ctx);
      case 1: {
        if (cur.empty()) return SplitToken(s, TokenId("nope"), {"a", "b"}, ctx);
        std::vector<std::string> parts;
        const size_t n = invalid ? Uniform(rng, 0, 1) : Uniform(rng, 2, 3);
        for (size_t i = 0; i < n; ++i) parts.push_back(RandomSurface(rng, 1, 4));
        if (invalid && Coin(rng)) parts = {"a", ""};
        return SplitToken(s, cur[pick].id, parts, ctx);
      }
      case 2: {
        if (cur.size() < 2) return MergeTokens(s, {}, ctx);
        const size_t first = Uniform(rng, 0, cur.size() - 2);
        const size_t len = Uniform(rng, 2, std::min<size_t>(3, cur.size() - first));
        std::vector<TokenId> ids;
        for (size_t i = 0; i < len; ++i) ids.push_back(cur[first + i].id);
        if (invalid && cur.size() >= 3) {
          ids = {cur.front().id, cur.back().id};
        }
        std::shuffle(ids.begin(), ids.end(), rng);
        return MergeTokens(s, ids, ctx);
      }
      case 3:
      case 4:
        return Undo(s);
      default:
        return Redo(s);
    }
  } catch (const Error&) {
    threw = true;
    return s;
  }
}

Segment Seg(std::string surface, std::string pos,
            std::map<std::string, std::string> features) {
  return Segment{std::move(surface), std::move(pos), std::move(features)};
}

MorphAnnotation Ann(std::vector<Segment> pro, Segment base, std::vector<Segment> enc,
                    std::string lemma, std::string gloss) {
  MorphAnnotation a;
  a.proclitics = std::move(pro);
  a.baseword = std::move(base);
  a.enclitics = std::move(enc);
  a.lemma = std::move(lemma);
  a.gloss = std::move(gloss);
  return a;
}

MorphAnnotation Simple(const std::string& surface, const std::string& pos,
                       const std::string& lemma, const std::string& gloss) {
  return Ann({}, Seg(surface, pos), {}, lemma.empty() ? surface : lemma, gloss);
}

MorphAnnotation WjAbwhA() {
  return Ann({Seg("w", "CONJ")},
             Seg("jAbw", "VERB", {{"aspect", "p"}, {"person", "3"}, {"number", "p"}}),
             {Seg("hA", "PRON", {{"person", "3"}, {"gender", "f"}, {"number", "s"}})},
             "jAb", "and+ they-brought +it");
}

const TagSet& DefaultTags() {
  static const TagSet tags = LoadTagSet(DefaultTagSetPath());
  return tags;
}

std::vector<Analysis> MapProvider::Analyze(std::string_view surface,
                                           std::string_view dialect) const {
  if (on_call) on_call(surface);
  auto it = entries_.find(std::string(surface));
  if (it == entries_.end()) return {};
  auto d = it->second.find(std::string(dialect));
  if (d == it->second.end()) d = it->second.find("*");
  if (d == it->second.end()) return {};
  std::vector<Analysis> out = d->second;
  for (auto& a : out) a.dialect = std::string(dialect);
  return out;
}

void MapProvider::Add(const std::string& surface, MorphAnnotation ann, double score,
                      const std::string& dialect) {
  auto& list = entries_[surface][dialect];
  list.push_back(Analysis{std::move(ann), dialect, score, id()});
  std::stable_sort(list.begin(), list.end(),
                   [](const Analysis& a, const Analysis& b) { return a.score > b.score; });
}

Document EditStatsFixture(uint64_t seed) {
  Rng rng(seed);
  Document d;
  d.id = DocumentId("fixture-edits");
  d.title = "edit stats fixture";
  d.dialect = "GLF";
  d.tagset = "default-v1";
  // 75 sentences of 17 tokens and 5 of 16: 1,355 tokens.
  for (size_t i = 0; i < 80; ++i) {
    d.sentences.push_back(
        RandomSentence(rng, SentenceId("s" + std::to_string(i)), i < 75 ? 17 : 16));
  }
  std::vector<std::pair<size_t, TokenId>> all;
  for (size_t i = 0; i < d.sentences.size(); ++i) {
    for (const auto& t : d.sentences[i].raw_tokens) all.emplace_back(i, t.id);
  }
  std::shuffle(all.begin(), all.end(), rng);
  const EditContext ctx{UserId("annotator"), Timestamp{}};
  for (size_t k = 0; k < 288; ++k) {
    Sentence& s = d.sentences[all[k].first];
    const Token* t = s.find_current(all[k].second);
    if (k < 244) {
      s = ModifyToken(s, t->id, t->surface + "A", ctx);
    } else {
      s = SplitToken(s, t->id, {t->surface, "w"}, ctx);
    }
  }
  return d;
}

Document SuggestionAccuracyFixture() {
  Document d;
  d.id = DocumentId("accuracy");
  d.dialect = "GLF";
  d.tagset = "default-v1";
  std::vector<std::string> surfaces;
  for (size_t i = 0; i < 100; ++i) {
    surfaces.push_back("bk" + std::string(1, static_cast<char>('a' + i / 10)) +
                       std::string(1, static_cast<char>('a' + i % 10)));
  }
  d.sentences.push_back(MakeSentence(SentenceId("s0"), surfaces));
  Sentence& s = d.sentences[0];
  // Matches chosen on interleaved index sets so the three fields vary
  // independently.
  auto tok_ok = [](size_t i) { return i < 74; };
  auto pos_ok = [](size_t i) { return (i * 7) % 100 < 69; };
  auto lemma_ok = [](size_t i) { return (i * 13 + 5) % 100 < 70; };
  for (size_t i = 0; i < s.current_tokens.size(); ++i) {
    const Token& t = s.current_tokens[i];
    MorphAnnotation suggested = Simple(t.surface, "NOUN", "lem" + t.surface);
    suggested.source = AnnotationSource::kSuggested;
    s.suggestions[t.id] = {Analysis{suggested, "GLF", 0.8, "map"}};
    MorphAnnotation final_ann = suggested;
    final_ann.source = AnnotationSource::kHuman;
    if (!tok_ok(i)) {
      final_ann.proclitics = {Seg("b", "PREP")};
      final_ann.baseword.surface = t.surface.substr(1);
    }
    if (!pos_ok(i)) final_ann.baseword.pos = "ADJ";
    if (!lemma_ok(i)) final_ann.lemma = "other" + t.surface;
    s.annotations[t.id] = AnnotationRecord{final_ann, false, UserId("u1"), Timestamp{}};
  }
  return d;
}

namespace {

const std::vector<std::string>& AnnotTags() {
  static const std::vector<std::string> tags = {"NOUN", "VERB", "ADJ", "PREP", "PART"};
  return tags;
}

MorphAnnotation RandomAnnotationFor(Rng& rng, const std::string& surface) {
  MorphAnnotation a;
  const auto& tags = AnnotTags();
  std::string rest = surface;
  if (rest.size() >= 3 && Coin(rng, 0.4)) {
    a.proclitics.push_back(Seg(rest.substr(0, 1), Coin(rng) ? "CONJ" : "PREP"));
    rest = rest.substr(1);
  }
  if (rest.size() >= 3 && Coin(rng, 0.3)) {
    a.enclitics.push_back(Seg(rest.substr(rest.size() - 1), "PRON", {{"person", "3"}}));
    rest = rest.substr(0, rest.size() - 1);
  }
  a.baseword = Seg(rest, tags[Uniform(rng, 0, tags.size() - 1)]);
  if (a.baseword.pos == "NOUN" && Coin(rng)) a.baseword.features["number"] = "s";
  a.lemma = Coin(rng) ? rest : rest + "a";
  a.gloss = Coin(rng) ? "gloss" : (Coin(rng) ? "Gloss" : "other");
  a.source = Coin(rng) ? AnnotationSource::kHuman : AnnotationSource::kBulkApplied;
  return a;
}

void AnnotateRandomly(Rng& rng, Sentence& s) {
  for (const auto& t : s.current_tokens) {
    if (!Coin(rng, 0.8)) continue;
    s.annotations[t.id] = AnnotationRecord{
        RandomAnnotationFor(rng, t.surface), false, UserId("u1"),
        Timestamp(std::chrono::milliseconds(1700000000000 + Uniform(rng, 0, 1000000)))};
  }
}

}  // namespace

Document RandomDocument(Rng& rng, const DocumentId& id, size_t max_sentences,
                        size_t max_tokens) {
  Document d;
  d.id = id;
  d.title = "doc " + RandomSurface(rng);
  d.dialect = Coin(rng) ? "GLF" : "MSA";
  d.tagset = "default-v1";
  d.version = Uniform(rng, 1, 20);
  const size_t n_sent = Uniform(rng, 0, max_sentences);
  size_t budget = max_tokens;
  for (size_t i = 0; i < n_sent && budget > 0; ++i) {
    const size_t n = Uniform(rng, 1, std::min<size_t>(budget, 12));
    budget -= n;
    Sentence s = RandomSentence(rng, SentenceId("s" + std::to_string(i)), n);
    const size_t steps = Uniform(rng, 0, 8);
    for (size_t k = 0; k < steps; ++k) {
      bool threw = false;
      s = RandomStep(rng, s, threw);
    }
    AnnotateRandomly(rng, s);
    if (!s.current_tokens.empty() && Coin(rng)) {
      const Token& t = s.current_tokens.front();
      MorphAnnotation sug = Simple(t.surface);
      s.suggestions[t.id] = {Analysis{sug, d.dialect, 0.5, "map"}};
    }
    d.sentences.push_back(std::move(s));
  }
  const DocumentStatus statuses[] = {DocumentStatus::kUploaded, DocumentStatus::kAssigned,
                                     DocumentStatus::kInProgress, DocumentStatus::kSubmitted,
                                     DocumentStatus::kApproved, DocumentStatus::kRejected};
  d.status = statuses[Uniform(rng, 0, 5)];
  if (d.status != DocumentStatus::kUploaded) d.assignee = UserId("u2");
  if (d.status == DocumentStatus::kRejected) d.review_note = "fix " + RandomSurface(rng);
  return d;
}

Document RandomVariant(Rng& rng, const Document& base) {
  Document d = base;
  for (auto& s : d.sentences) {
    s.annotations.clear();
    if (Coin(rng, 0.5)) {
      const size_t steps = Uniform(rng, 1, 4);
      for (size_t k = 0; k < steps; ++k) {
        bool threw = false;
        s = RandomStep(rng, s, threw);
      }
    }
    AnnotateRandomly(rng, s);
  }
  return d;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("morphann-test-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::optional<std::string> CheckEditSequence(Rng& rng, size_t max_ops, size_t max_tokens) {
  Sentence s = RandomSentence(rng, SentenceId("s"), Uniform(rng, 1, max_tokens));
  const size_t steps = Uniform(rng, 1, max_ops);
  for (size_t k = 0; k < steps; ++k) {
    const std::string at = " at step " + std::to_string(k);
    bool threw = false;
    const Sentence before = s;
    s = RandomStep(rng, s, threw);
    if (threw) {
      if (!(s == before)) return "rejected op changed the sentence" + at;
      continue;
    }
    long expected_count = static_cast<long>(s.raw_tokens.size());
    for (size_t i = 0; i < s.edit_log.cursor; ++i) {
      const EditOp& op = s.edit_log.ops[i];
      if (op.kind == EditKind::kSplit) expected_count += static_cast<long>(op.after.size()) - 1;
      if (op.kind == EditKind::kMerge) expected_count -= static_cast<long>(op.targets.size()) - 1;
    }
    if (static_cast<long>(s.current_tokens.size()) != expected_count)
      return "token count invariant broken" + at;

    const auto oracle = OracleReplay(s.raw_tokens, s.edit_log.ops, s.edit_log.cursor);
    if (oracle.size() != s.current_tokens.size()) return "oracle length differs" + at;
    for (size_t i = 0; i < oracle.size(); ++i) {
      const Token& t = s.current_tokens[i];
      if (t.id != oracle[i].id || t.surface != oracle[i].surface ||
          t.provenance != oracle[i].provenance || t.position != static_cast<int>(i))
        return "token " + std::to_string(i) + " differs from the oracle" + at;
    }
    if (!(ReplayApplied(s) == s.current_tokens)) return "full replay differs" + at;

    if (s.edit_log.can_undo() && !(Redo(Undo(s)) == s)) return "undo/redo not exact" + at;
    if (s.edit_log.can_redo() && !(Undo(Redo(s)) == s)) return "redo/undo not exact" + at;

    const std::string text = s.text();
    if (text.find("  ") != std::string::npos ||
        (!text.empty() && (text.front() == ' ' || text.back() == ' ')))
      return "bad spacing in '" + text + "'" + at;

    const Alignment al = ComputeAlignment(s);
    std::set<std::pair<TokenId, TokenId>> expected_pairs;
    for (const auto& t : oracle) {
      for (const auto& r : t.ancestors) expected_pairs.emplace(r, t.id);
    }
    const std::set<std::pair<TokenId, TokenId>> got(al.pairs.begin(), al.pairs.end());
    if (got.size() != al.pairs.size()) return "alignment has duplicate pairs" + at;
    if (got != expected_pairs) return "alignment differs from oracle lineage" + at;
    for (const auto& r : s.raw_tokens) {
      if (al.current_for(r.id).empty()) return "raw token without alignment" + at;
    }
  }
  return std::nullopt;
}

int RaceCounter(Store& store, const DocumentId& doc, int writers, int rounds) {
  std::vector<std::thread> threads;
  for (int w = 0; w < writers; ++w) {
    threads.emplace_back([&] {
      for (int r = 0; r < rounds; ++r) {
        for (;;) {
          const AnnotationPayload cur = store.LoadSentence(doc, SentenceId("c"));
          const int n = cur.body.empty() ? 0 : std::stoi(cur.body);
          try {
            store.SaveSentence({doc, SentenceId("c"), 0, std::to_string(n + 1)}, cur.version);
            break;
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kVersionConflict) throw;
          }
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  return std::stoi(store.LoadSentence(doc, SentenceId("c")).body);
}

namespace {

std::string LowerAscii(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

// Brute force: every (token of a, token of b) pair is tested against the
// 1:1 rule using oracle lineage.
Recount BruteForceIaa(const Document& a, const Document& b) {
  Recount r;
  for (size_t si = 0; si < a.sentences.size(); ++si) {
    const Sentence& sa = a.sentences[si];
    const Sentence& sb = b.sentences[si];
    const auto ta = OracleReplay(sa.raw_tokens, sa.edit_log.ops, sa.edit_log.cursor);
    const auto tb = OracleReplay(sb.raw_tokens, sb.edit_log.ops, sb.edit_log.cursor);
    auto sole = [](const std::vector<OracleToken>& toks, size_t i) -> std::optional<TokenId> {
      if (toks[i].ancestors.size() != 1) return std::nullopt;
      const TokenId raw = *toks[i].ancestors.begin();
      for (size_t j = 0; j < toks.size(); ++j) {
        if (j != i && toks[j].ancestors.count(raw)) return std::nullopt;
      }
      return raw;
    };
    size_t paired = 0;
    for (size_t i = 0; i < ta.size(); ++i) {
      for (size_t j = 0; j < tb.size(); ++j) {
        const auto ra = sole(ta, i), rb = sole(tb, j);
        if (!ra || !rb || *ra != *rb || ta[i].surface != tb[j].surface) continue;
        ++paired;
        const AnnotationRecord* x = sa.annotation_for(ta[i].id);
        const AnnotationRecord* y = sb.annotation_for(tb[j].id);
        const MorphAnnotation ex = x ? x->annotation : MorphAnnotation{};
        const MorphAnnotation ey = y ? y->annotation : MorphAnnotation{};
        const auto seg_x = x ? ex.segment_surfaces() : std::vector<std::string>{};
        const auto seg_y = y ? ey.segment_surfaces() : std::vector<std::string>{};
        r.tok += seg_x == seg_y;
        r.pos += ex.baseword.pos == ey.baseword.pos;
        r.lemma += ex.lemma == ey.lemma;
        r.gloss += LowerAscii(ex.gloss) == LowerAscii(ey.gloss);
      }
    }
    r.pairs += paired;
    r.unaligned += ta.size() + tb.size() - 2 * paired;
  }
  return r;
}

}  // namespace morphann::testing
