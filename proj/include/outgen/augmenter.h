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

#ifndef OUTGEN_AUGMENTER_H_
#define OUTGEN_AUGMENTER_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "outgen/corpus.h"

namespace outgen {

inline constexpr std::size_t kParaphrasesPerOutline = 6;

// Acceptance rules for externally generated paraphrase candidates.
struct FilterPolicy {
  double min_length_ratio = 0.5;
  double max_length_ratio = 2.0;
  std::size_t max_accepted = kParaphrasesPerOutline;
  bool reject_exact_duplicates = true;

  // Throws ValidationError unless 0 < min <= 1 <= max and max_accepted >= 1.
  void Validate() const;
};

// How the model input is assembled from an example: the phrases joined by
// `separator` in file order, optionally preceded by the title and
// `title_separator`.
struct SourceRule {
  bool title_prefix = true;
  std::string separator = "#";
  std::string title_separator = ":";

  std::string Assemble(const OutlineExample& example) const;
};

// Greedy in candidate order: a candidate is accepted while fewer than
// max_accepted are, when it differs from the original story and every
// earlier acceptance (if reject_exact_duplicates) and its character length
// lies within the ratio bounds of the original's.
ParaphraseSet FilterParaphrases(const OutlineExample& example,
                                std::span<const std::string> candidates,
                                const FilterPolicy& policy = {});

enum class PairOrigin { kOriginal, kParaphrase };

std::string_view ToString(PairOrigin origin);

struct AugmentedPair {
  std::string example_id;
  std::string source;
  std::string target;
  PairOrigin origin = PairOrigin::kOriginal;

  bool operator==(const AugmentedPair&) const = default;
};

struct AugmentedCorpus {
  std::vector<AugmentedPair> pairs;
  std::vector<ParaphraseSet> report;  // one entry per example, input order
};

// One pair per example (original first) followed by one per accepted
// paraphrase. Examples without a paraphrase set contribute the original
// only. Throws ValidationError on a dangling or duplicated example_id.
AugmentedCorpus BuildAugmentedCorpus(std::span<const OutlineExample> examples,
                                     std::span<const ParaphraseSet> paraphrases,
                                     const SourceRule& source_rule = {});

// Paraphrase candidates JSONL: `example_id`, `candidates` (array of strings).
struct ParaphraseCandidates {
  std::string example_id;
  std::vector<std::string> candidates;
};

std::vector<ParaphraseCandidates> ReadParaphraseCandidates(
    std::istream& in, std::string_view source_name = "<stream>");
std::vector<ParaphraseCandidates> LoadParaphraseCandidates(
    const std::filesystem::path& path);

// Augmented-corpus JSONL: `id`, `src`, `tgt`, `origin`.
void WriteAugmentedCorpus(std::span<const AugmentedPair> pairs,
                          std::ostream& out);
void WriteAugmentedCorpus(std::span<const AugmentedPair> pairs,
                          const std::filesystem::path& path);
std::vector<AugmentedPair> LoadAugmentedCorpus(
    const std::filesystem::path& path);

}  // namespace outgen

#endif  // OUTGEN_AUGMENTER_H_
