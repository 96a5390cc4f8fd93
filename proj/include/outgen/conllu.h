// Copyright 2026 The OutGen Toolkit Authors.
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

#ifndef OUTGEN_CONLLU_H_
#define OUTGEN_CONLLU_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "outgen/corpus.h"

namespace outgen {

// Checks that every sentence is a single-rooted tree: one arc per segment in
// index order, heads in range, no cycles, and `root` exactly on the arc
// whose head is ROOT. Throws ValidationError.
void ValidateParsedStory(const ParsedStory& story);

// Reads CoNLL-U dependency parses. A `# example_id = <id>` comment opens a
// story and `# sent_id = <id>` is required on every sentence. Only the ID,
// FORM, HEAD and DEPREL columns are used; multiword-token ranges (1-2) and
// empty nodes (1.1) are skipped.
//
// When `examples` is non-empty, every story whose id names an example is
// checked against that example's story text, ignoring whitespace; a
// mismatch reports the first divergent character offset. Parses for other
// ids (for instance paraphrases, `<id>#<k>`) are not checked.
std::vector<ParsedStory> ReadConllu(std::istream& in,
                                    std::span<const OutlineExample> examples,
                                    std::string_view source_name = "<stream>");
std::vector<ParsedStory> LoadConllu(
    const std::filesystem::path& path,
    std::span<const OutlineExample> examples = {});

void WriteConllu(std::span<const ParsedStory> stories, std::ostream& out);
void WriteConllu(std::span<const ParsedStory> stories,
                 const std::filesystem::path& path);

// Throws ValidationError unless the whitespace-stripped texts agree.
void CheckReconstruction(const ParsedStory& parse, std::string_view story);

}  // namespace outgen

#endif  // OUTGEN_CONLLU_H_
