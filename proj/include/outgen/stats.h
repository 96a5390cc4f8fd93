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

#ifndef OUTGEN_STATS_H_
#define OUTGEN_STATS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "outgen/corpus.h"

namespace outgen {

// Splits after 。！？； (a run of them counts once) together with any
// closing quotes that directly follow. A trailing unterminated fragment is
// a sentence; whitespace-only pieces are dropped.
std::vector<std::string> SplitSentences(std::string_view text);

// Characters excluding whitespace.
std::size_t CountStoryChars(std::string_view text);

struct StatsReport {
  std::size_t example_count = 0;
  std::size_t vocab_size = 0;
  bool vocab_from_characters = false;  // no parses: distinct characters
  std::optional<double> avg_title_words;
  std::optional<double> avg_outline_words;
  double avg_outline_phrases = 0.0;
  double avg_story_chars = 0.0;
  std::optional<double> avg_story_words;
  double avg_story_sents = 0.0;
  std::size_t total_story_chars = 0;
};

// Word-level fields need parses. Story parses use the example id; parses
// with ids `<id>@title` and `<id>@outline` (one sentence per phrase) supply
// title and outline word counts and are optional as a group. Throws
// ValidationError when the split is empty or story parses do not cover
// every example.
StatsReport ComputeDatasetStats(
    const DatasetSplit& split,
    std::optional<std::span<const ParsedStory>> parses = std::nullopt);

nlohmann::ordered_json StatsToJson(const StatsReport& report,
                                   std::string_view split_name);
void PrintStatsTable(const StatsReport& report, std::string_view split_name,
                     std::ostream& out);

}  // namespace outgen

#endif  // OUTGEN_STATS_H_
