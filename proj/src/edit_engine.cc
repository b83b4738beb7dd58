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

#include "morphann/edit_engine.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "morphann/error.h"
#include "morphann/utf8.h"

namespace morphann {

namespace {

void Renumber(std::vector<Token>& tokens) {
  for (size_t i = 0; i < tokens.size(); ++i)
    tokens[i].position = static_cast<int>(i);
}

size_t IndexOf(const std::vector<Token>& tokens, const TokenId& id) {
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].id == id) return i;
  }
  throw Error(ErrorCode::kNotFound, "unknown token id '" + id.str() + "'");
}

void CheckSurface(std::string_view surface) {
  if (surface.empty())
    throw Error(ErrorCode::kInvalidArgument, "token surface must not be empty");
  if (utf8::ContainsWhitespace(surface))
    throw Error(ErrorCode::kInvalidArgument,
                "token surface must not contain whitespace");
}

// Applies one op to a token list. Used by replay and by redo.
void ApplyForward(std::vector<Token>& tokens, const EditOp& op) {
  switch (op.kind) {
    case EditKind::kModify: {
      Token& t = tokens[IndexOf(tokens, op.targets[0])];
      t.surface = op.after[0];
      t.provenance = Provenance::kEdited;
      break;
    }
    case EditKind::kSplit: {
      const size_t at = IndexOf(tokens, op.targets[0]);
      std::vector<Token> children;
      for (size_t i = 0; i < op.after.size(); ++i) {
        children.push_back(
            Token{op.results[i], op.after[i], 0, Provenance::kSplitChild});
      }
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(at));
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at),
                    children.begin(), children.end());
      break;
    }
    case EditKind::kMerge: {
      const size_t first = IndexOf(tokens, op.targets[0]);
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(first),
                   tokens.begin() +
                       static_cast<std::ptrdiff_t>(first + op.targets.size()));
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(first),
                    Token{op.results[0], op.after[0], 0,
                          Provenance::kMergeResult});
      break;
    }
  }
  Renumber(tokens);
}

// Provenance a token had after ops[0, end): set by the last op that
// produced or modified it, raw if none did.
Provenance ProvenanceAfter(const std::vector<EditOp>& ops, size_t end,
                           const TokenId& id) {
  for (size_t i = end; i-- > 0;) {
    const EditOp& op = ops[i];
    if (std::find(op.results.begin(), op.results.end(), id) ==
        op.results.end()) {
      continue;
    }
    switch (op.kind) {
      case EditKind::kModify: return Provenance::kEdited;
      case EditKind::kSplit: return Provenance::kSplitChild;
      case EditKind::kMerge: return Provenance::kMergeResult;
    }
  }
  return Provenance::kRaw;
}

// Reverses ops[index] on the token list produced by ops[0, index].
void ApplyInverse(std::vector<Token>& tokens, const std::vector<EditOp>& ops,
                  size_t index) {
  const EditOp& op = ops[index];
  switch (op.kind) {
    case EditKind::kModify: {
      Token& t = tokens[IndexOf(tokens, op.targets[0])];
      t.surface = op.before[0];
      t.provenance = ProvenanceAfter(ops, index, t.id);
      break;
    }
    case EditKind::kSplit: {
      const size_t first = IndexOf(tokens, op.results[0]);
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(first),
                   tokens.begin() +
                       static_cast<std::ptrdiff_t>(first + op.results.size()));
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(first),
                    Token{op.targets[0], op.before[0], 0,
                          ProvenanceAfter(ops, index, op.targets[0])});
      break;
    }
    case EditKind::kMerge: {
      const size_t at = IndexOf(tokens, op.results[0]);
      std::vector<Token> parts;
      for (size_t i = 0; i < op.targets.size(); ++i) {
        parts.push_back(Token{op.targets[i], op.before[i], 0,
                              ProvenanceAfter(ops, index, op.targets[i])});
      }
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(at));
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at),
                    parts.begin(), parts.end());
      break;
    }
  }
  Renumber(tokens);
}

// What a forward op does to attached annotations and suggestions.
void ApplyAnnotationEffects(Sentence& s, const EditOp& op) {
  switch (op.kind) {
    case EditKind::kModify:
      if (auto it = s.annotations.find(op.targets[0]);
          it != s.annotations.end()) {
        it->second.stale = true;
      }
      break;
    case EditKind::kSplit:
    case EditKind::kMerge:
      for (const auto& id : op.targets) {
        s.annotations.erase(id);
        s.suggestions.erase(id);
      }
      break;
  }
}

Sentence Record(Sentence s, EditOp op) {
  if (auto problem = CheckEditOpShape(op)) {
    throw Error(ErrorCode::kInvalidArgument, *problem);
  }
  s.edit_log.ops.resize(s.edit_log.cursor);
  ApplyForward(s.current_tokens, op);
  ApplyAnnotationEffects(s, op);
  s.edit_log.ops.push_back(std::move(op));
  s.edit_log.cursor = s.edit_log.ops.size();
  return s;
}

}  // namespace

Sentence ModifyToken(Sentence s, const TokenId& id, std::string_view new_surface,
                     const EditContext& ctx) {
  const Token& t = s.current_tokens[IndexOf(s.current_tokens, id)];
  CheckSurface(new_surface);
  if (t.surface == new_surface) return s;
  EditOp op;
  op.kind = EditKind::kModify;
  op.targets = {id};
  op.before = {t.surface};
  op.after = {std::string(new_surface)};
  op.results = {id};
  op.author = ctx.author;
  op.timestamp = ctx.timestamp;
  return Record(std::move(s), std::move(op));
}

Sentence SplitToken(Sentence s, const TokenId& id,
                    const std::vector<std::string>& parts,
                    const EditContext& ctx) {
  const Token& t = s.current_tokens[IndexOf(s.current_tokens, id)];
  if (parts.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, "split needs at least two parts");
  for (const auto& p : parts) CheckSurface(p);
  EditOp op;
  op.kind = EditKind::kSplit;
  op.targets = {id};
  op.before = {t.surface};
  op.after = parts;
  for (size_t i = 0; i < parts.size(); ++i)
    op.results.push_back(s.allocate_token_id());
  op.author = ctx.author;
  op.timestamp = ctx.timestamp;
  return Record(std::move(s), std::move(op));
}

Sentence MergeTokens(Sentence s, const std::vector<TokenId>& ids,
                     const EditContext& ctx) {
  if (ids.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, "merge needs at least two tokens");
  std::vector<size_t> idx;
  for (const auto& id : ids) idx.push_back(IndexOf(s.current_tokens, id));
  std::sort(idx.begin(), idx.end());
  for (size_t i = 1; i < idx.size(); ++i) {
    if (idx[i] == idx[i - 1])
      throw Error(ErrorCode::kInvalidArgument, "duplicate token in merge");
    if (idx[i] != idx[i - 1] + 1)
      throw Error(ErrorCode::kInvalidArgument,
                  "merge tokens must be adjacent (non-adjacent positions " +
                      std::to_string(idx[i - 1]) + " and " +
                      std::to_string(idx[i]) + ")");
  }
  EditOp op;
  op.kind = EditKind::kMerge;
  std::string joined;
  for (size_t i : idx) {
    op.targets.push_back(s.current_tokens[i].id);
    op.before.push_back(s.current_tokens[i].surface);
    joined += s.current_tokens[i].surface;
  }
  op.after = {joined};
  op.results = {s.allocate_token_id()};
  op.author = ctx.author;
  op.timestamp = ctx.timestamp;
  return Record(std::move(s), std::move(op));
}

Sentence Undo(Sentence s) {
  if (!s.edit_log.can_undo())
    throw Error(ErrorCode::kInvalidTransition, "nothing to undo");
  const size_t index = s.edit_log.cursor - 1;
  ApplyInverse(s.current_tokens, s.edit_log.ops, index);
  s.edit_log.cursor = index;
  return s;
}

Sentence Redo(Sentence s) {
  if (!s.edit_log.can_redo())
    throw Error(ErrorCode::kInvalidTransition, "nothing to redo");
  const EditOp& op = s.edit_log.ops[s.edit_log.cursor];
  ApplyForward(s.current_tokens, op);
  ApplyAnnotationEffects(s, op);
  ++s.edit_log.cursor;
  return s;
}

std::vector<Token> Replay(const std::vector<Token>& raw,
                          std::span<const EditOp> ops) {
  std::vector<Token> tokens = raw;
  Renumber(tokens);
  for (const EditOp& op : ops) {
    if (auto problem = CheckEditOpShape(op)) {
      throw Error(ErrorCode::kInvalidArgument, "bad edit op: " + *problem);
    }
    ApplyForward(tokens, op);
  }
  return tokens;
}

std::vector<Token> ReplayApplied(const Sentence& s) {
  return Replay(s.raw_tokens, std::span<const EditOp>(s.edit_log.ops.data(),
                                                      s.edit_log.cursor));
}

namespace {

struct Lineage {
  // Current token id -> raw ancestors, in raw order.
  std::map<TokenId, std::vector<TokenId>> ancestors;
  std::set<TokenId> touched_raw;
};

Lineage TraceLineage(const Sentence& s) {
  Lineage lin;
  for (const auto& t : s.raw_tokens) lin.ancestors[t.id] = {t.id};
  for (size_t i = 0; i < s.edit_log.cursor; ++i) {
    const EditOp& op = s.edit_log.ops[i];
    std::vector<TokenId> merged;
    for (const auto& target : op.targets) {
      auto it = lin.ancestors.find(target);
      if (it == lin.ancestors.end()) continue;
      for (const auto& raw : it->second) {
        // Parts of one split merged back share their raw ancestor.
        if (std::find(merged.begin(), merged.end(), raw) == merged.end())
          merged.push_back(raw);
      }
    }
    lin.touched_raw.insert(merged.begin(), merged.end());
    if (op.kind == EditKind::kModify) continue;
    for (const auto& target : op.targets) lin.ancestors.erase(target);
    for (const auto& result : op.results) lin.ancestors[result] = merged;
  }
  return lin;
}

}  // namespace

std::vector<TokenId> Alignment::current_for(const TokenId& raw) const {
  std::vector<TokenId> out;
  for (const auto& [r, c] : pairs) {
    if (r == raw) out.push_back(c);
  }
  return out;
}

std::vector<TokenId> Alignment::raw_for(const TokenId& current) const {
  std::vector<TokenId> out;
  for (const auto& [r, c] : pairs) {
    if (c == current) out.push_back(r);
  }
  return out;
}

Alignment ComputeAlignment(const Sentence& s) {
  const Lineage lin = TraceLineage(s);
  Alignment a;
  for (const auto& t : s.current_tokens) {
    auto it = lin.ancestors.find(t.id);
    if (it == lin.ancestors.end()) continue;
    for (const auto& raw : it->second) a.pairs.emplace_back(raw, t.id);
  }
  return a;
}

EditStats ComputeEditStats(const Sentence& s) {
  EditStats st;
  st.tokens_raw = s.raw_tokens.size();
  st.tokens_current = s.current_tokens.size();
  st.changed_words = TraceLineage(s).touched_raw.size();
  for (size_t i = 0; i < s.edit_log.cursor; ++i) {
    switch (s.edit_log.ops[i].kind) {
      case EditKind::kModify: ++st.modifies; break;
      case EditKind::kSplit: ++st.splits; break;
      case EditKind::kMerge: ++st.merges; break;
    }
  }
  st.change_rate = st.tokens_raw == 0
                       ? 0.0
                       : static_cast<double>(st.changed_words) /
                             static_cast<double>(st.tokens_raw);
  return st;
}

EditStats ComputeEditStats(const Document& d) {
  EditStats total;
  for (const auto& s : d.sentences) {
    const EditStats st = ComputeEditStats(s);
    total.tokens_raw += st.tokens_raw;
    total.tokens_current += st.tokens_current;
    total.changed_words += st.changed_words;
    total.splits += st.splits;
    total.merges += st.merges;
    total.modifies += st.modifies;
  }
  total.change_rate = total.tokens_raw == 0
                          ? 0.0
                          : static_cast<double>(total.changed_words) /
                                static_cast<double>(total.tokens_raw);
  return total;
}

std::string FormatPercent(double rate) {
  return std::to_string(std::lround(rate * 100.0)) + "%";
}

}  // namespace morphann
