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

#include "morphann/cli.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "morphann/config.h"
#include "morphann/error.h"
#include "morphann/http_server.h"
#include "morphann/json.h"
#include "morphann/service.h"
#include "morphann/workspace.h"

namespace morphann {

namespace {

struct Options {
  std::string config_path;
  std::string store;
  std::string server;
  std::string token;
  std::string tagset;
  std::string lexicon;
  std::string format = "table";

  std::string doc;
  std::string gold;
  std::string out;
  std::string file;
  std::string title;
  std::string dialect;
  std::string name;
  std::string role = "annotator";
  std::string credential;
  std::string user;
  std::string host;
  int port = 0;
  std::string static_dir;
};

std::string ReadFile(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
  f << content;
  if (!f.flush()) throw Error(ErrorCode::kIo, "cannot write " + path);
}

std::string Row(const std::string& label, const std::string& value) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-24s %12s\n", label.c_str(), value.c_str());
  return buf;
}

std::string Scalar(const Json& v) {
  if (v.is_null()) return "n/a";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v.get<double>());
    return buf;
  }
  return v.dump();
}

// Flattens objects into "a.b" rows; arrays of objects become one block per
// element.
void RenderTable(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      RenderTable(v, prefix.empty() ? k : prefix + "." + k, out);
    }
  } else if (j.is_array()) {
    if (!j.empty() && j.front().is_object()) {
      for (size_t i = 0; i < j.size(); ++i) {
        RenderTable(j[i], prefix.empty() ? std::to_string(i)
                                         : prefix + "." + std::to_string(i),
                    out);
      }
    } else {
      std::string joined;
      for (const auto& e : j) joined += (joined.empty() ? "" : ",") + Scalar(e);
      out += Row(prefix, joined);
    }
  } else {
    out += Row(prefix, Scalar(j));
  }
}

std::string StatsTable(const Json& j) {
  const Json& e = j.at("edits");
  const Json& s = j.at("suggestions");
  std::string out;
  out += Row("raw tokens", Scalar(e.at("tokens_raw")));
  out += Row("current tokens", Scalar(e.at("tokens_current")));
  out += Row("changed", Scalar(e.at("changed_words")));
  out += Row("rate", Scalar(e.at("change_rate_display")));
  out += Row("splits", Scalar(e.at("splits")));
  out += Row("merges", Scalar(e.at("merges")));
  out += Row("modifies", Scalar(e.at("modifies")));
  out += Row("evaluated tokens", Scalar(s.at("evaluated")));
  out += Row("tokenization accuracy", Scalar(s.at("tokenization_acc")));
  out += Row("baseword POS accuracy", Scalar(s.at("baseword_pos_acc")));
  out += Row("lemma accuracy", Scalar(s.at("lemma_acc")));
  return out;
}

std::string IaaTable(const Json& j) {
  std::string out;
  out += Row("aligned tokens", Scalar(j.at("aligned_tokens")));
  out += Row("unaligned tokens", Scalar(j.at("unaligned_tokens")));
  out += Row("tokenization agreement", Scalar(j.at("tokenization_agreement")));
  out += Row("baseword POS agreement", Scalar(j.at("baseword_pos_agreement")));
  out += Row("lemma agreement", Scalar(j.at("lemma_agreement")));
  out += Row("gloss agreement", Scalar(j.at("gloss_agreement")));
  out += Row("POS kappa", Scalar(j.at("pos_kappa")));
  return out;
}

// Lazily opened in-process backend for --store.
class Direct {
 public:
  explicit Direct(const Config& config) : config_(config) {}

  Service& service() {
    if (!service_) {
      store_ = std::make_unique<Store>(config_.store_path);
      auto provider = std::make_shared<LexiconProvider>(
          LexiconProvider::Load(ResolvedLexiconPath(config_)));
      PrecomputeOptions pre;
      pre.default_tag = config_.default_tag;
      pre.workers = config_.analyzer_workers;
      workspace_ = std::make_unique<Workspace>(
          *store_, LoadTagSet(ResolvedTagsetPath(config_)), std::move(provider),
          pre, config_.hash_strength);
      service_ = std::make_unique<Service>(*workspace_);
    }
    return *service_;
  }

 private:
  Config config_;
  std::unique_ptr<Store> store_;
  std::unique_ptr<Workspace> workspace_;
  std::unique_ptr<Service> service_;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err)
      : o_(o), out_(out), err_(err) {}

  Config MakeConfig() const {
    Config c = LoadConfig(o_.config_path);
    if (!o_.store.empty()) c.store_path = o_.store;
    if (!o_.tagset.empty()) c.tagset_path = o_.tagset;
    if (!o_.lexicon.empty()) c.lexicon_path = o_.lexicon;
    return c;
  }

  // Sends the request and returns the parsed success body, or nullopt after
  // reporting the error.
  std::optional<HttpResponse> Call(HttpRequest req) {
    HttpResponse res;
    if (!o_.server.empty()) {
      if (!o_.token.empty()) req.headers["authorization"] = "Bearer " + o_.token;
      res = HttpCall(o_.server, req);
    } else {
      if (!direct_) direct_ = std::make_unique<Direct>(MakeConfig());
      static const Actor kCli{UserId("cli"), Role::kLead};
      res = direct_->service().HandleAs(kCli, req);
    }
    if (res.status >= 400) {
      ReportError(res);
      return std::nullopt;
    }
    return res;
  }

  int Print(const std::optional<HttpResponse>& res,
            std::string (*table)(const Json&) = nullptr) {
    if (!res) return 1;
    const Json j = Json::parse(res->body);
    if (o_.format == "json") {
      out_ << j.dump(2) << "\n";
    } else if (table) {
      out_ << table(j);
    } else {
      std::string s;
      RenderTable(j, "", s);
      out_ << s;
    }
    return 0;
  }

  int Serve() {
    if (!o_.server.empty()) {
      err_ << "error: serve runs against --store, not --server\n";
      return 2;
    }
    Config c = MakeConfig();
    if (!o_.host.empty()) c.host = o_.host;
    if (o_.port > 0) c.port = o_.port;
    if (!o_.static_dir.empty()) c.static_dir = o_.static_dir;
    Direct direct(c);
    HttpServer server(direct.service(), c.static_dir);
    out_ << "listening on " << c.host << ":" << c.port << std::endl;
    server.Listen(c.host, c.port);
    return 0;
  }

  const Options& o() const { return o_; }
  std::ostream& out() { return out_; }

 private:
  void ReportError(const HttpResponse& res) {
    Json j;
    try {
      j = Json::parse(res.body);
    } catch (const Json::exception&) {
      err_ << "error: HTTP " << res.status << "\n";
      return;
    }
    err_ << "error: " << j.value("code", std::string("unknown")) << ": "
         << j.value("message", std::string()) << "\n";
    for (const auto& d : j.value("details", Json::array())) {
      err_ << "  " << d.value("path", std::string());
      if (d.contains("line")) err_ << " (line " << d["line"] << ", column " << d["column"] << ")";
      err_ << ": " << d.value("message", std::string()) << "\n";
    }
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<Direct> direct_;
};

HttpRequest Get(std::string path, std::map<std::string, std::string> query = {}) {
  return HttpRequest{"GET", std::move(path), std::move(query), {}, {}};
}

HttpRequest Post(std::string path, const Json& body) {
  return HttpRequest{"POST", std::move(path), {}, {}, body.dump()};
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app{"Morphological annotation corpus tool"};
  app.require_subcommand(1);
  app.add_option("--config", o.config_path, "JSON config file");
  app.add_option("--store", o.store, "SQLite store (direct mode)");
  app.add_option("--server", o.server, "Service base URL, e.g. http://127.0.0.1:8080");
  app.add_option("--token", o.token, "Session token for --server")->envname("MORPHANN_TOKEN");
  app.add_option("--tagset", o.tagset, "Tag set file (direct mode)");
  app.add_option("--lexicon", o.lexicon, "Lexicon file (direct mode)");
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"table", "json"}));

  auto* import = app.add_subcommand("import", "Import an exported document");
  import->add_option("file", o.file, "Export file, or - for stdin")->required();

  auto* exp = app.add_subcommand("export", "Export a document");
  exp->add_option("--doc", o.doc)->required();
  exp->add_option("-o,--out", o.out, "Output file (default stdout)");

  auto* upload = app.add_subcommand("upload", "Upload raw text as a new document");
  upload->add_option("file", o.file, "Text file, or - for stdin")->required();
  upload->add_option("--title", o.title);
  upload->add_option("--dialect", o.dialect);

  auto* user_add = app.add_subcommand("user-add", "Create a user");
  user_add->add_option("--name", o.name)->required();
  user_add->add_option("--role", o.role)->check(CLI::IsMember({"annotator", "lead"}));
  user_add->add_option("--credential", o.credential)->required();

  auto* login = app.add_subcommand("login", "Print a session token");
  login->add_option("--name", o.name)->required();
  login->add_option("--credential", o.credential)->required();

  auto* assign = app.add_subcommand("assign", "Assign a document to a user");
  assign->add_option("--doc", o.doc)->required();
  assign->add_option("--user", o.user, "User id or name")->required();

  auto* list = app.add_subcommand("list", "List documents");

  auto* stats = app.add_subcommand("stats", "Edit statistics and suggestion accuracy");
  stats->add_option("--doc", o.doc)->required();

  auto* iaa = app.add_subcommand("iaa", "Agreement of a document with a gold document");
  iaa->add_option("--doc", o.doc)->required();
  iaa->add_option("--gold", o.gold)->required();

  auto* progress = app.add_subcommand("progress", "Progress report");
  progress->add_option("--user", o.user);
  progress->add_option("--doc", o.doc);

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", o.host);
  serve->add_option("--port", o.port);
  serve->add_option("--static-dir", o.static_dir, "Directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  if (!o.server.empty() && !o.store.empty()) {
    err << "error: --store and --server are mutually exclusive\n";
    return 2;
  }

  Runner r(o, out, err);
  try {
    if (*import) {
      HttpRequest req{"POST", "/api/documents/import", {}, {}, ReadFile(o.file)};
      return r.Print(r.Call(std::move(req)));
    }
    if (*exp) {
      auto res = r.Call(Get("/api/documents/" + o.doc + "/export"));
      if (!res) return 1;
      if (o.out.empty()) {
        out << res->body;
      } else {
        WriteFile(o.out, res->body);
      }
      return 0;
    }
    if (*upload) {
      return r.Print(r.Call(Post("/api/documents", Json{{"title", o.title},
                                                         {"dialect", o.dialect},
                                                         {"text", ReadFile(o.file)}})));
    }
    if (*user_add) {
      return r.Print(r.Call(Post("/api/users", Json{{"name", o.name},
                                                     {"role", o.role},
                                                     {"credential", o.credential}})));
    }
    if (*login) {
      auto res = r.Call(Post("/api/login", Json{{"name", o.name}, {"credential", o.credential}}));
      if (!res) return 1;
      if (o.format == "json") return r.Print(res);
      out << Json::parse(res->body).at("token").get<std::string>() << "\n";
      return 0;
    }
    if (*assign) {
      return r.Print(r.Call(Post("/api/documents/" + o.doc + "/assign", Json{{"user", o.user}})));
    }
    if (*list) return r.Print(r.Call(Get("/api/documents")));
    if (*stats) return r.Print(r.Call(Get("/api/documents/" + o.doc + "/stats")), StatsTable);
    if (*iaa) {
      return r.Print(r.Call(Get("/api/iaa", {{"doc", o.doc}, {"gold", o.gold}})), IaaTable);
    }
    if (*progress) {
      std::map<std::string, std::string> q;
      if (!o.user.empty()) q["user"] = o.user;
      if (!o.doc.empty()) q["doc"] = o.doc;
      return r.Print(r.Call(Get("/api/progress", q)));
    }
    if (*serve) return r.Serve();
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    for (const auto& d : e.details()) err << "  " << d.path << ": " << d.message << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace morphann
