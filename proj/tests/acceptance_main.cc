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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "morphann/cli.h"
#include "morphann/edit_engine.h"
#include "morphann/error.h"
#include "morphann/exchange.h"
#include "morphann/http_server.h"
#include "morphann/iaa.h"
#include "morphann/json.h"
#include "morphann/morphology.h"
#include "morphann/service.h"
#include "morphann/storage.h"
#include "morphann/translit.h"
#include "morphann/utf8.h"
#include "morphann/workspace.h"
#include "service_harness.h"
#include "support.h"

namespace morphann::testing {
namespace {

// Pinned tolerances and budgets.
constexpr double kEditSuiteBudgetSeconds = 10.0;
constexpr double kKappaTolerance = 1e-9;
constexpr int kEditSequences = 1000;
constexpr size_t kMaxOps = 50;
constexpr size_t kMaxTokens = 30;
constexpr int kTranslitStrings = 10000;
constexpr int kIaaBruteForceRounds = 200;
constexpr int kStorageDocuments = 100;
constexpr int kRaceWriters = 8;
constexpr int kRaceRounds = 100;
constexpr int kServiceSequences = 500;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome Fail(std::string why) { return {false, std::move(why)}; }

Outcome EditEngine() {
  Rng rng(TestSeed(20260301));
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < kEditSequences; ++i) {
    if (auto failure = CheckEditSequence(rng, kMaxOps, kMaxTokens))
      return Fail("sequence " + std::to_string(i) + ": " + *failure);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d sequences in %.2f s (budget %.0f s)", kEditSequences, secs,
                kEditSuiteBudgetSeconds);
  return {secs < kEditSuiteBudgetSeconds, buf};
}

Outcome EditStats() {
  const Document d = EditStatsFixture(7);
  const auto st = ComputeEditStats(d);
  std::ostringstream detail;
  detail << "raw " << st.tokens_raw << ", changed " << st.changed_words << ", rate "
         << FormatPercent(st.change_rate) << ", splits " << st.splits << ", merges "
         << st.merges << ", current " << st.tokens_current;
  const bool ok = st.tokens_raw == 1355 && st.modifies == 244 && st.splits == 44 &&
                  st.merges == 0 && st.changed_words == 288 &&
                  FormatPercent(st.change_rate) == "21%" && st.tokens_current == 1399;
  return {ok, detail.str()};
}

Outcome SuggestionAccuracy() {
  const SuggestionAccuracyReport r = ComputeSuggestionAccuracy(SuggestionAccuracyFixture());
  std::ostringstream detail;
  detail << "evaluated " << r.evaluated << ", tokenization " << r.tokenization_acc << ", POS "
         << r.baseword_pos_acc << ", lemma " << r.lemma_acc;
  const bool ok = r.evaluated == 100 && r.tokenization_acc == 0.74 &&
                  r.baseword_pos_acc == 0.69 && r.lemma_acc == 0.70;
  return {ok, detail.str()};
}

Outcome Transliteration() {
  Rng rng(TestSeed(99));
  std::vector<std::string> symbols;
  for (const auto& [bw, ar] : TranslitTable::Standard().to_arabic()) {
    (void)ar;
    std::string sym;
    utf8::Append(sym, bw);
    symbols.push_back(sym);
  }
  symbols.push_back(" ");
  symbols.push_back("\n");
  for (int i = 0; i < kTranslitStrings; ++i) {
    std::string s;
    for (size_t k = 0, n = Uniform(rng, 0, 40); k < n; ++k)
      s += symbols[Uniform(rng, 0, symbols.size() - 1)];
    if (ArToBw(BwToAr(s)) != s) return Fail("round trip failed for '" + s + "'");
  }
  const std::string ar = BwToAr("wjAbwhA Alxlyj");
  if (ar != "وجابوها الخليج") return Fail("wjAbwhA Alxlyj converted to " + ar);
  if (ArToBw(ar) != "wjAbwhA Alxlyj") return Fail("example did not round trip");
  return {true, std::to_string(kTranslitStrings) + " strings plus example round trip"};
}

Document AnnotatedSentence(const std::vector<std::string>& words,
                           const std::vector<std::string>& tags) {
  Document d;
  d.id = DocumentId("iaa");
  d.sentences.push_back(MakeSentence(SentenceId("s0"), words));
  Sentence& s = d.sentences[0];
  for (size_t i = 0; i < words.size(); ++i) {
    const Token& t = s.current_tokens[i];
    s.annotations[t.id] = AnnotationRecord{Simple(t.surface, tags[i], t.surface, "g"), false,
                                           UserId("u"), {}};
  }
  return d;
}

Outcome Iaa() {
  const Document gold = AnnotatedSentence({"wjAbwhA", "Alxlyj", "fy", "ktAb"},
                                          {"VERB", "NOUN", "PREP", "NOUN"});
  const IAAReport same = ComputeIaa(gold, gold);
  if (same.tokenization_agreement != 1.0 || same.baseword_pos_agreement != 1.0 ||
      same.lemma_agreement != 1.0 || same.gloss_agreement != 1.0 || same.pos_kappa != 1.0)
    return Fail("identical annotator does not agree fully");

  const Document a = AnnotatedSentence({"a", "b", "c", "d"}, {"NOUN", "NOUN", "VERB", "VERB"});
  const Document b = AnnotatedSentence({"a", "b", "c", "d"}, {"NOUN", "VERB", "NOUN", "VERB"});
  const IAAReport half = ComputeIaa(a, b);
  if (!half.pos_kappa || std::fabs(*half.pos_kappa) > kKappaTolerance)
    return Fail("50/50 marginals kappa is not 0");

  Rng rng(TestSeed(31));
  for (int round = 0; round < kIaaBruteForceRounds; ++round) {
    const Document base = RandomDocument(rng, DocumentId("g"), 1, 30);
    const Document x = RandomVariant(rng, base);
    const Document y = RandomVariant(rng, base);
    const IAAReport r = ComputeIaa(x, y);
    const Recount o = BruteForceIaa(x, y);
    if (r.aligned_tokens != o.pairs || r.unaligned_tokens != o.unaligned)
      return Fail("alignment recount differs in round " + std::to_string(round));
    if (o.pairs == 0) continue;
    const double n = static_cast<double>(o.pairs);
    if (r.tokenization_agreement != o.tok / n || r.baseword_pos_agreement != o.pos / n ||
        r.lemma_agreement != o.lemma / n || r.gloss_agreement != o.gloss / n)
      return Fail("agreement recount differs in round " + std::to_string(round));
  }
  return {true, "identity, kappa 0 on 50/50, " + std::to_string(kIaaBruteForceRounds) +
                    " brute-force recounts"};
}

Outcome Storage() {
  Rng rng(TestSeed(41));
  const TagSet& tags = DefaultTags();
  for (int i = 0; i < kStorageDocuments; ++i) {
    const Document d = RandomDocument(rng, DocumentId("r" + std::to_string(i)), 4, 30);
    const Document back = ImportDocument(ExportDocument(d), tags);
    if (!(back == d)) return Fail("document " + std::to_string(i) + " changed in export/import");
  }
  TempDir dir;
  Store store(dir.file("race.db"));
  Document d;
  d.id = DocumentId("race");
  d.sentences.push_back(MakeSentence(SentenceId("s0"), {"x"}));
  store.InsertDocument(d);
  store.AddSentenceKey(d.id, SentenceId("c"));
  store.SaveSentence({d.id, SentenceId("c"), 0, "0"}, 0);
  const int counter = RaceCounter(store, d.id, kRaceWriters, kRaceRounds);
  if (counter != kRaceWriters * kRaceRounds)
    return Fail("race lost updates: counter " + std::to_string(counter));
  return {true, std::to_string(kStorageDocuments) + " round trips, counter " +
                    std::to_string(counter)};
}

Outcome Service() {
  std::string failure;
  if (!WorkflowFuzz(TestSeed(5), kServiceSequences, 30, failure)) return Fail(failure);
  if (!StaleVersionsConflict(failure)) return Fail(failure);
  return {true, std::to_string(kServiceSequences) + " sequences, 409 on every mutation"};
}

struct CliRun {
  int code;
  std::string out, err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "morphann");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

HttpResponse Call(const std::string& base, const std::string& token, const std::string& method,
                  const std::string& path, const Json& body) {
  HttpRequest req;
  req.method = method;
  req.path = path;
  if (!token.empty()) req.headers["authorization"] = "Bearer " + token;
  if (!body.is_null()) req.body = body.dump();
  return HttpCall(base, req);
}

Outcome EndToEnd() {
  TempDir dir;
  const std::string store_path = dir.file("e2e.db");
  const std::string text_path = dir.file("raw.txt");
  std::ofstream(text_path) << "wyAbwhAAlxlyj\n";

  const std::vector<std::string> direct = {"--store", store_path};
  auto cli = [&](std::vector<std::string> args) {
    args.insert(args.begin(), direct.begin(), direct.end());
    return Cli(std::move(args));
  };
  if (cli({"user-add", "--name", "lead", "--role", "lead", "--credential", "pw"}).code != 0 ||
      cli({"user-add", "--name", "ann", "--role", "annotator", "--credential", "pw"}).code != 0)
    return Fail("user-add failed");
  const CliRun up =
      cli({"--format", "json", "upload", text_path, "--title", "e2e", "--dialect", "GLF"});
  if (up.code != 0) return Fail("upload failed: " + up.err);
  const std::string doc = Json::parse(up.out).at("id");
  if (cli({"assign", "--doc", doc, "--user", "ann"}).code != 0) return Fail("assign failed");

  Store store(store_path);
  auto provider = std::make_shared<LexiconProvider>(LexiconProvider::Load(DefaultLexiconPath()));
  Workspace ws(store, LoadTagSet(DefaultTagSetPath()), provider, PrecomputeOptions{},
               HashStrength::kMinimal);
  morphann::Service service(ws);
  HttpServer server(service);
  const int port = server.BindToAnyPort("127.0.0.1");
  std::thread worker([&] { server.Serve(); });
  server.WaitUntilReady();
  const std::string base = "http://127.0.0.1:" + std::to_string(port);
  auto finish = [&](Outcome o) {
    server.Stop();
    worker.join();
    return o;
  };

  const HttpResponse login = Call(base, "", "POST", "/api/login",
                                  Json{{"name", "ann"}, {"credential", "pw"}});
  if (login.status != 200) return finish(Fail("login failed: " + login.body));
  const std::string token = Json::parse(login.body).at("token");
  const std::string path = "/api/documents/" + doc;

  Json d = Json::parse(Call(base, token, "GET", path, nullptr).body);
  const Json raw_token = d["sentences"][0]["current_tokens"][0];
  if (raw_token["surface"] != "wyAbwhAAlxlyj") return finish(Fail("upload did not keep one token"));

  HttpResponse r = Call(base, token, "POST", path + "/sentences/s0/edits",
                        Json{{"kind", "split"}, {"token_id", raw_token["id"]},
                             {"parts", {"wyAbwhA", "Alxlyj"}}, {"expected_version", d["version"]}});
  if (r.status != 200) return finish(Fail("split failed: " + r.body));
  Json reply = Json::parse(r.body);
  const std::string first = reply["sentence"]["current_tokens"][0]["id"];
  r = Call(base, token, "POST", path + "/sentences/s0/edits",
           Json{{"kind", "modify"}, {"token_id", first}, {"new_surface", "wjAbwhA"},
                {"expected_version", reply["version"]}});
  if (r.status != 200) return finish(Fail("modify failed: " + r.body));
  reply = Json::parse(r.body);
  std::string current;
  for (const Json& t : reply["sentence"]["current_tokens"])
    current += (current.empty() ? "" : " ") + t["surface"].get<std::string>();
  if (current != "wjAbwhA Alxlyj") return finish(Fail("text after edits is '" + current + "'"));
  const std::string target = reply["sentence"]["current_tokens"][0]["id"];

  MorphAnnotation ann;
  ann.proclitics = {Seg("w", "CONJ")};
  ann.baseword = Seg("jAbw", "VERB", {{"aspect", "p"}, {"person", "3"}, {"number", "p"}});
  ann.enclitics = {Seg("hA", "PRON", {{"person", "3"}, {"gender", "f"}, {"number", "s"}})};
  ann.lemma = "jAb";
  ann.gloss = "and+ they-brought +it";
  r = Call(base, token, "POST", path + "/annotations",
           Json{{"token_id", target}, {"annotation", ann}, {"expected_version", reply["version"]}});
  if (r.status != 200) return finish(Fail("annotate failed: " + r.body));
  r = Call(base, token, "POST", path + "/submit", Json{{"expected_version", Json::parse(r.body)["version"]}});
  if (r.status != 200 || Json::parse(r.body)["status"] != "submitted")
    return finish(Fail("submit failed: " + r.body));

  const std::string export_path = dir.file("export.json");
  const CliRun exp = Cli({"--server", base, "--token", token, "export", "--doc", doc, "-o",
                          export_path});
  if (exp.code != 0) return finish(Fail("export failed: " + exp.err));
  std::ifstream in(export_path);
  const Json out = Json::parse(in);
  const Json& s = out["sentences"][0];
  const Json& ops = s["edit_log"]["ops"];
  if (ops.size() != 2 || ops[0]["kind"] != "split" || ops[1]["kind"] != "modify" ||
      s["edit_log"]["cursor"] != 2)
    return finish(Fail("export edit log is " + s["edit_log"].dump()));
  const Json* rec = nullptr;
  for (const Json& a : s["annotations"]) {
    if (a["token_id"] == target) rec = &a;
  }
  if (!rec) return finish(Fail("export has no annotation for " + target));
  const Json& got = (*rec)["annotation"];
  const bool three = got["proclitics"].size() == 1 && got["enclitics"].size() == 1 &&
                     got["proclitics"][0]["surface"] == "w" && got["baseword"]["surface"] == "jAbw" &&
                     got["enclitics"][0]["surface"] == "hA" && got["lemma"] == "jAb" &&
                     got["gloss"] == "and+ they-brought +it";
  if (!three) return finish(Fail("export annotation is " + got.dump()));
  if (out["document"]["status"] != "submitted") return finish(Fail("export status is not submitted"));
  return finish({true, "split+modify logged, 3-segment annotation exported"});
}

int RunAll() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 edit-engine oracle suite", EditEngine},
      {"2 edit statistics fixture", EditStats},
      {"3 suggestion accuracy fixture", SuggestionAccuracy},
      {"4 transliteration round trip", Transliteration},
      {"5 inter-annotator agreement", Iaa},
      {"6 storage round trip and CAS race", Storage},
      {"7 service workflow and conflicts", Service},
      {"8 end-to-end CLI and API", EndToEnd},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = Fail(std::string("exception: ") + e.what());
    }
    std::printf("%s  %-36s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace morphann::testing

int main() { return morphann::testing::RunAll(); }
