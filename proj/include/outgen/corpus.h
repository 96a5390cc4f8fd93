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

#ifndef OUTGEN_CORPUS_H_
#define OUTGEN_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "outgen/markers.h"

namespace outgen {

inline constexpr std::size_t kOutlinePhraseCount = 8;
inline constexpr std::size_t kDefaultMaxUnits = 512;

// One benchmark record: an unordered outline of phrases and the reference
// story written from it.
struct OutlineExample {
  std::string id;
  std::string title;
  std::vector<std::string> phrases;
  std::string story;

  bool operator==(const OutlineExample&) const = default;
};

struct WordSegment {
  std::string text;
  std::size_t token_count = 0;  // Unicode scalars in `text`

  // Computes token_count. Throws ValidationError on empty or bad UTF-8.
  static WordSegment FromText(std::string text);

  bool operator==(const WordSegment&) const = default;
};

struct DependencyArc {
  std::size_t dependent_index = 0;          // 0-based within the sentence
  std::optional<std::size_t> head_index;    // nullopt is the ROOT sentinel
  std::string relation;

  bool operator==(const DependencyArc&) const = default;
};

// arcs[i].dependent_index == i for every valid sentence.
struct ParsedSentence {
  std::string sent_id;
  std::vector<WordSegment> segments;
  std::vector<DependencyArc> arcs;

  bool operator==(const ParsedSentence&) const = default;
};

struct ParsedStory {
  std::string example_id;
  std::vector<ParsedSentence> sentences;

  // Segment texts concatenated in order.
  std::string Text() const;
  std::size_t SegmentCount() const;

  bool operator==(const ParsedStory&) const = default;
};

struct ParaphraseSet {
  std::string example_id;
  std::vector<std::string> candidates;
  std::vector<std::string> accepted;
};

enum class SplitName { kTrain, kVal, kTest };

SplitName ParseSplitName(std::string_view name);
std::string_view ToString(SplitName name);

struct DatasetSplit {
  SplitName name = SplitName::kTrain;
  std::vector<OutlineExample> examples;
};

enum class LoadMode { kStrict, kPermissive };

// Checks the per-record invariants. `allow_any_phrase_count` relaxes the
// eight-phrase rule. Throws ValidationError naming the offending field.
void ValidateExample(const OutlineExample& example,
                     bool allow_any_phrase_count = false);

struct LoadReport {
  std::size_t lines_read = 0;
  std::size_t loaded = 0;
  std::vector<std::string> skipped;  // one message per rejected line
};

struct LoadedExamples {
  std::vector<OutlineExample> examples;
  LoadReport report;
};

// Reads example JSONL (`id`, `title`, `outline`, `story`). In strict mode the
// first violation throws ValidationError with the line number and field;
// in permissive mode the line is skipped and listed in the report. Blank
// lines are ignored. A record without `id` gets its 1-based line number.
LoadedExamples ReadExamples(std::istream& in, LoadMode mode,
                            std::string_view source_name = "<stream>");
LoadedExamples LoadExamples(const std::filesystem::path& path, LoadMode mode);

void WriteExamples(std::span<const OutlineExample> examples, std::ostream& out);
void WriteExamples(std::span<const OutlineExample> examples,
                   const std::filesystem::path& path);

struct TrainingPair {
  std::string source;
  std::string target;

  bool operator==(const TrainingPair&) const = default;
};

struct TrainingWriteReport {
  std::size_t written = 0;
  std::size_t truncated = 0;
};

// Writes `{src, tgt}` JSONL. Targets longer than `max_units` are cut at a
// unit boundary, where a unit is one character or one whole marker for a
// label in `targets`.
TrainingWriteReport WriteTrainingPairs(
    std::span<const TrainingPair> pairs, std::ostream& out,
    std::size_t max_units = kDefaultMaxUnits,
    const TargetRelationSet& targets = TargetRelationSet());
TrainingWriteReport WriteTrainingPairs(
    std::span<const TrainingPair> pairs, const std::filesystem::path& path,
    std::size_t max_units = kDefaultMaxUnits,
    const TargetRelationSet& targets = TargetRelationSet());

std::vector<TrainingPair> ReadTrainingPairs(const std::filesystem::path& path);

}  // namespace outgen

#endif  // OUTGEN_CORPUS_H_
