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

#ifndef MORPHANN_TESTS_SUPPORT_H_
#define MORPHANN_TESTS_SUPPORT_H_

// Generators, fixtures and independent oracles shared by the unit tests
// and the acceptance suite. Nothing here calls into the code under test
// except to build inputs.

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "morphann/model.h"
#include "morphann/morphology.h"
#include "morphann/storage.h"
#include "morphann/tagset.h"

namespace morphann::testing {

using Rng = std::mt19937_64;

// Seed from MORPHANN_TEST_SEED if set, else `fallback`.
uint64_t TestSeed(uint64_t fallback);

size_t Uniform(Rng& rng, size_t lo, size_t hi);  // inclusive
bool Coin(Rng& rng, double p = 0.5);

// Buckwalter letters used for random surfaces.
std::string RandomSurface(Rng& rng, size_t min_len = 1, size_t max_len = 8);
Sentence RandomSentence(Rng& rng, const SentenceId& id, size_t tokens);

// Oracle token: surface, provenance and the raw ids it descends from.
struct OracleToken {
  TokenId id;
  std::string surface;
  Provenance provenance = Provenance::kRaw;
  std::set<TokenId> ancestors;
};

// Straight-line replay of `ops` from the raw tokens, written without
// reference to the engine.
std::vector<OracleToken> OracleReplay(const std::vector<Token>& raw,
                                      const std::vector<EditOp>& ops,
                                      size_t count);

// One random step against `s`: an edit (possibly invalid), undo or redo.
// Invalid requests must throw and are reported through `threw`.
Sentence RandomStep(Rng& rng, const Sentence& s, bool& threw);

// Runs one random sequence of up to `max_ops` steps over a sentence of up
// to `max_tokens` raw tokens. After every step checks the state against
// the oracle and a full replay, the token count, exact undo/redo round
// trips, text spacing and alignment. Returns the first failure.
std::optional<std::string> CheckEditSequence(Rng& rng, size_t max_ops, size_t max_tokens);

// Annotation helpers.
Segment Seg(std::string surface, std::string pos,
            std::map<std::string, std::string> features = {});
MorphAnnotation Ann(std::vector<Segment> pro, Segment base,
                    std::vector<Segment> enc, std::string lemma,
                    std::string gloss);
// Whole surface as one NOUN baseword.
MorphAnnotation Simple(const std::string& surface, const std::string& pos = "NOUN",
                       const std::string& lemma = {}, const std::string& gloss = {});
// The w+ jAbw +hA annotation for "wjAbwhA".
MorphAnnotation WjAbwhA();

const TagSet& DefaultTags();

// In-memory provider: surface -> analyses, same for every dialect unless
// a dialect-specific entry exists.
class MapProvider : public AnalyzerProvider {
 public:
  std::string id() const override { return "map"; }
  std::vector<Analysis> Analyze(std::string_view surface,
                                std::string_view dialect) const override;
  void Add(const std::string& surface, MorphAnnotation ann, double score,
           const std::string& dialect = "*");
  std::function<void(std::string_view)> on_call;

 private:
  std::map<std::string, std::map<std::string, std::vector<Analysis>>> entries_;
};

// 80 sentences, 1,355 raw tokens, 244 modifies on distinct tokens and 44
// two-way splits on further distinct tokens.
Document EditStatsFixture(uint64_t seed);

// 100 tokens, each with a non-fallback top suggestion and a human
// annotation; exactly 74 tokenizations, 69 baseword tags and 70 lemmas
// equal the suggestion.
Document SuggestionAccuracyFixture();

// A random annotated document of at most `max_tokens` tokens with a
// random edit history. Used for storage round trips and IAA.
Document RandomDocument(Rng& rng, const DocumentId& id, size_t max_sentences,
                        size_t max_tokens);

// Randomly edits and annotates a copy of `base` (same raw text).
Document RandomVariant(Rng& rng, const Document& base);

// Fresh temporary directory removed on destruction.
struct Recount {
  size_t pairs = 0, unaligned = 0, tok = 0, pos = 0, lemma = 0, gloss = 0;
};

// Agreement counts by testing every token pair of `a` x `b` against the
// 1:1 lineage rule, with lineage taken from OracleReplay.
Recount BruteForceIaa(const Document& a, const Document& b);

// `writers` threads each add 1 to a counter stored as sentence "c" of
// `doc`, `rounds` times, retrying on version conflicts. Returns the final
// counter value.
int RaceCounter(Store& store, const DocumentId& doc, int writers, int rounds);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace morphann::testing

#endif  // MORPHANN_TESTS_SUPPORT_H_
