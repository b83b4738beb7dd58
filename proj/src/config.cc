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

#include "morphann/config.h"

#include <cstdlib>
#include <fstream>

#include "morphann/error.h"
#include "morphann/json.h"
#include "morphann/morphology.h"
#include "morphann/tagset.h"

namespace morphann {

std::optional<std::string> ProcessEnv(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

namespace {

int ParsePort(const std::string& text) {
  try {
    size_t used = 0;
    const int port = std::stoi(text, &used);
    if (used == text.size() && port >= 0 && port <= 65535) return port;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument, "invalid port '" + text + "'");
}

}  // namespace

Config LoadConfig(const std::string& path, const EnvLookup& env) {
  Config c;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path);
    Json j;
    try {
      j = Json::parse(in);
      c.host = j.value("host", c.host);
      c.port = j.value("port", c.port);
      c.store_path = j.value("store", c.store_path);
      c.tagset_path = j.value("tagset", c.tagset_path);
      c.lexicon_path = j.value("lexicon", c.lexicon_path);
      c.static_dir = j.value("static_dir", c.static_dir);
      c.default_tag = j.value("default_tag", c.default_tag);
      c.analyzer_workers = j.value("analyzer_workers", c.analyzer_workers);
      const std::string strength = j.value("hash_strength", std::string("interactive"));
      if (strength == "minimal") {
        c.hash_strength = HashStrength::kMinimal;
      } else if (strength != "interactive") {
        throw Error(ErrorCode::kInvalidArgument,
                    "hash_strength must be 'interactive' or 'minimal'");
      }
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument,
                  "invalid config " + path + ": " + e.what());
    }
  }
  if (auto v = env("MORPHANN_PORT")) c.port = ParsePort(*v);
  if (auto v = env("MORPHANN_STORE")) c.store_path = *v;
  if (auto v = env("MORPHANN_TAGSET")) c.tagset_path = *v;
  if (auto v = env("MORPHANN_LEXICON")) c.lexicon_path = *v;
  return c;
}

std::string ResolvedTagsetPath(const Config& c) {
  return c.tagset_path.empty() ? DefaultTagSetPath().string() : c.tagset_path;
}

std::string ResolvedLexiconPath(const Config& c) {
  return c.lexicon_path.empty() ? DefaultLexiconPath().string() : c.lexicon_path;
}

}  // namespace morphann
