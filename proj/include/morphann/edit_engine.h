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

#ifndef MORPHANN_EDIT_ENGINE_H_
#define MORPHANN_EDIT_ENGINE_H_

// Token-level spelling edits. Only three operations exist: modify a
// token's surface, split one token into several, merge adjacent tokens
// into one. Every edit is recorded in the sentence's EditLog and can be
// undone and redone one op at a time.
//
// All functions take the sentence by value and return the new state; the
// input is never observed half-modified. Errors are thrown as
// morphann::Error before any change is made.

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morphann/model.h"

namespace morphann {

struct EditContext {
  UserId author;
  Timestamp timestamp{};
};

// Replaces the surface. The token keeps its id and becomes `edited`; an
// attached annotation is kept but marked stale. Same surface is a no-op.
Sentence ModifyToken(Sentence s, const TokenId& id, std::string_view new_surface,
                     const EditContext& ctx);

// Replaces the token in place by parts.size() fresh split-child tokens.
// The original's annotation and suggestions are dropped.
Sentence SplitToken(Sentence s, const TokenId& id,
                    const std::vector<std::string>& parts,
                    const EditContext& ctx);

// Ids may be given in any order but must name contiguous tokens. The
// result surface is the direct concatenation in sentence order.
Sentence MergeTokens(Sentence s, const std::vector<TokenId>& ids,
                     const EditContext& ctx);

Sentence Undo(Sentence s);
Sentence Redo(Sentence s);

// Replays `ops` in order against the raw tokens.
std::vector<Token> Replay(const std::vector<Token>& raw,
                          std::span<const EditOp> ops);

// Replay of the applied prefix ops[0, cursor).
std::vector<Token> ReplayApplied(const Sentence& s);

// Relation between raw token ids and current token ids.
struct Alignment {
  std::vector<std::pair<TokenId, TokenId>> pairs;  // (raw, current)

  std::vector<TokenId> current_for(const TokenId& raw) const;
  std::vector<TokenId> raw_for(const TokenId& current) const;
};

Alignment ComputeAlignment(const Sentence& s);

struct EditStats {
  size_t tokens_raw = 0;
  size_t tokens_current = 0;
  size_t changed_words = 0;
  double change_rate = 0.0;
  size_t splits = 0;
  size_t merges = 0;
  size_t modifies = 0;

  friend bool operator==(const EditStats&, const EditStats&) = default;
};

EditStats ComputeEditStats(const Sentence& s);
EditStats ComputeEditStats(const Document& d);

// Nearest integer percent, e.g. 0.2125 -> "21%".
std::string FormatPercent(double rate);

}  // namespace morphann

#endif  // MORPHANN_EDIT_ENGINE_H_
