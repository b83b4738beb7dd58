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

#ifndef MORPHANN_EXCHANGE_H_
#define MORPHANN_EXCHANGE_H_

// Document export/import. The export file is a single JSON document with
// schema_version, document metadata (including the tagset name), and per
// sentence the raw tokens, the full edit log, annotations and suggestions.
// Current tokens are included for readers but recomputed on import.

#include <string>
#include <string_view>

#include "morphann/model.h"
#include "morphann/tagset.h"

namespace morphann {

inline constexpr int kExportSchemaVersion = 1;

std::string ExportDocument(const Document& d);

// Validates the whole file and reports every problem found as a
// Diagnostic (line/column for JSON syntax, JSON pointer otherwise) in an
// Error(kSchemaViolation). Annotation tags are checked against `tagset`.
// Ids present in the file are kept; missing ones are generated.
Document ImportDocument(std::string_view text, const TagSet& tagset);

}  // namespace morphann

#endif  // MORPHANN_EXCHANGE_H_
