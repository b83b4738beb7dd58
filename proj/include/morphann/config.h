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

#ifndef MORPHANN_CONFIG_H_
#define MORPHANN_CONFIG_H_

#include <functional>
#include <optional>
#include <string>

namespace morphann {

enum class HashStrength { kInteractive, kMinimal };

struct Config {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string store_path = "morphann.db";
  std::string tagset_path;   // empty: bundled default
  std::string lexicon_path;  // empty: bundled default
  std::string static_dir;    // web UI assets, optional
  std::string default_tag = "NOUN";
  size_t analyzer_workers = 1;
  HashStrength hash_strength = HashStrength::kInteractive;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

std::optional<std::string> ProcessEnv(const std::string& name);

// Reads the JSON config file (if `path` is non-empty) and then applies
// MORPHANN_PORT, MORPHANN_STORE, MORPHANN_TAGSET and MORPHANN_LEXICON.
Config LoadConfig(const std::string& path, const EnvLookup& env = ProcessEnv);

std::string ResolvedTagsetPath(const Config& c);
std::string ResolvedLexiconPath(const Config& c);

}  // namespace morphann

#endif  // MORPHANN_CONFIG_H_
