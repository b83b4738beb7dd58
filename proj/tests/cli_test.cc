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


#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "morphann/cli.h"
#include "morphann/exchange.h"
#include "morphann/json.h"
#include "support.h"

namespace morphann::testing {
namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  CliResult Run(std::vector<std::string> args) {
    args.insert(args.begin(), {"morphann", "--store", store_});
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  std::string WriteText(const std::string& name, const std::string& text) {
    const std::string path = dir_.file(name);
    std::ofstream(path) << text;
    return path;
  }

  std::string UploadJson(const std::string& text) {
    const CliResult r = Run({"--format", "json", "upload", WriteText("in.txt", text), "--title", "t",
                             "--dialect", "GLF"});
    EXPECT_EQ(r.code, 0) << r.err;
    return Json::parse(r.out).at("id");
  }

  TempDir dir_;
  std::string store_ = dir_.file("store.db");
};

TEST_F(CliTest, UploadStatsExportImport) {
  ASSERT_EQ(Run({"user-add", "--name", "lead", "--role", "lead", "--credential", "pw"}).code, 0);
  const std::string doc = UploadJson("wyAbwhAAlxlyj fy\nktAb");

  const CliResult stats = Run({"stats", "--doc", doc});
  ASSERT_EQ(stats.code, 0) << stats.err;
  EXPECT_NE(stats.out.find("raw tokens"), std::string::npos);
  EXPECT_NE(stats.out.find("rate"), std::string::npos);
  EXPECT_NE(stats.out.find("0%"), std::string::npos);

  const std::string path = dir_.file("doc.json");
  ASSERT_EQ(Run({"export", "--doc", doc, "-o", path}).code, 0);
  std::ifstream in(path);
  const std::string exported((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(exported.find("wyAbwhAAlxlyj"), std::string::npos);

  const CliResult imported = Run({"--format", "json", "import", path});
  ASSERT_EQ(imported.code, 0) << imported.err;
  const std::string copy = Json::parse(imported.out).at("id");
  EXPECT_NE(copy, doc);
  const CliResult again = Run({"export", "--doc", copy});
  ASSERT_EQ(again.code, 0);
  Json round = Json::parse(again.out);
  Json original = Json::parse(exported);
  round["document"].erase("id");
  original["document"].erase("id");
  EXPECT_EQ(round, original);

  const CliResult broken = Run({"import", WriteText("broken.json", "{\"schema_version\": 1")});
  EXPECT_EQ(broken.code, 1);
  EXPECT_NE(broken.err.find("error: "), std::string::npos);

  const CliResult listed = Run({"--format", "json", "list"});
  EXPECT_EQ(Json::parse(listed.out).size(), 2u);
}

TEST_F(CliTest, IaaOnIdenticalDocuments) {
  const std::string a = UploadJson("wjAbwhA Alxlyj");
  const std::string b = UploadJson("wjAbwhA Alxlyj");
  const CliResult r = Run({"--format", "json", "iaa", "--doc", a, "--gold", b});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["tokenization_agreement"], 1.0);
  EXPECT_EQ(j["baseword_pos_agreement"], 1.0);
  EXPECT_EQ(j["lemma_agreement"], 1.0);
  const CliResult table = Run({"iaa", "--doc", a, "--gold", b});
  EXPECT_NE(table.out.find("1.0000"), std::string::npos);
}

TEST_F(CliTest, EditStatsFixtureThroughStats) {
  const std::string path = WriteText("fixture.json", ExportDocument(EditStatsFixture(5)));
  const CliResult imp = Run({"--format", "json", "import", path});
  ASSERT_EQ(imp.code, 0) << imp.err;
  const std::string doc = Json::parse(imp.out).at("id");
  const CliResult r = Run({"stats", "--doc", doc});
  ASSERT_EQ(r.code, 0) << r.err;
  auto value = [&](const std::string& label) {
    std::istringstream lines(r.out);
    for (std::string line; std::getline(lines, line);) {
      if (line.rfind(label, 0) == 0 && line.size() > label.size() && line[label.size()] == ' ') {
        std::istringstream rest(line.substr(label.size()));
        std::string v;
        rest >> v;
        return v;
      }
    }
    return std::string("<missing>");
  };
  EXPECT_EQ(value("raw tokens"), "1355");
  EXPECT_EQ(value("current tokens"), "1399");
  EXPECT_EQ(value("changed"), "288");
  EXPECT_EQ(value("rate"), "21%");
  EXPECT_EQ(value("splits"), "44");
  EXPECT_EQ(value("merges"), "0");
  EXPECT_EQ(value("modifies"), "244");
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_NE(Run({"stats", "--doc", "x", "--bogus"}).code, 0);
  EXPECT_NE(Run({}).code, 0);
  const CliResult missing = Run({"stats", "--doc", "nope"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("not_found"), std::string::npos);

  std::vector<const char*> argv = {"morphann", "--store", "a.db", "--server", "http://x", "list"};
  std::ostringstream out, err;
  EXPECT_EQ(RunCli(static_cast<int>(argv.size()), argv.data(), out, err), 2);
}

TEST_F(CliTest, LoginPrintsToken) {
  ASSERT_EQ(Run({"user-add", "--name", "ann", "--role", "annotator", "--credential", "pw"}).code, 0);
  const CliResult ok = Run({"login", "--name", "ann", "--credential", "pw"});
  ASSERT_EQ(ok.code, 0);
  EXPECT_GE(ok.out.size(), 20u);
  EXPECT_EQ(Run({"login", "--name", "ann", "--credential", "bad"}).code, 1);
}

}  // namespace
}  // namespace morphann::testing
