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

#include "outgen/stats.h"

#include <cstdio>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "outgen/errors.h"
#include "outgen/metrics.h"
#include "outgen/utf8.h"

namespace outgen {
namespace {

bool IsTerminator(char32_t c) {
  return c == U'。' || c == U'！' || c == U'？' || c == U'；';
}

bool IsClosingQuote(char32_t c) {
  return c == U'”' || c == U'’' || c == U'」' || c == U'』' || c == U'"';
}

bool AllWhitespace(std::u32string_view text) {
  for (char32_t c : text) {
    if (!utf8::IsWhitespace(c)) return false;
  }
  return true;
}

double Mean(std::size_t total, std::size_t count) {
  return static_cast<double>(total) / static_cast<double>(count);
}

std::string FormatValue(const std::optional<double>& value) {
  if (!value) return "n/a";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", *value);
  return buffer;
}

}  // namespace

std::vector<std::string> SplitSentences(std::string_view text) {
  const std::u32string chars = utf8::Decode(text);
  std::vector<std::string> sentences;
  std::u32string current;
  auto emit = [&] {
    if (!AllWhitespace(current)) sentences.push_back(utf8::Encode(current));
    current.clear();
  };
  std::size_t i = 0;
  while (i < chars.size()) {
    current.push_back(chars[i]);
    if (IsTerminator(chars[i])) {
      ++i;
      while (i < chars.size() &&
             (IsTerminator(chars[i]) || IsClosingQuote(chars[i]))) {
        current.push_back(chars[i++]);
      }
      emit();
      continue;
    }
    ++i;
  }
  emit();
  return sentences;
}

std::size_t CountStoryChars(std::string_view text) {
  return utf8::StripWhitespace(utf8::Decode(text)).size();
}

StatsReport ComputeDatasetStats(
    const DatasetSplit& split,
    std::optional<std::span<const ParsedStory>> parses) {
  if (split.examples.empty()) {
    throw ValidationError("split '" + std::string(ToString(split.name)) +
                          "' has no examples");
  }
  StatsReport report;
  report.example_count = split.examples.size();

  std::size_t phrase_total = 0;
  std::size_t sentence_total = 0;
  for (const OutlineExample& example : split.examples) {
    phrase_total += example.phrases.size();
    report.total_story_chars += CountStoryChars(example.story);
    sentence_total += SplitSentences(example.story).size();
  }
  report.avg_outline_phrases = Mean(phrase_total, report.example_count);
  report.avg_story_chars = Mean(report.total_story_chars, report.example_count);
  report.avg_story_sents = Mean(sentence_total, report.example_count);

  if (!parses) {
    std::unordered_set<char32_t> characters;
    auto add = [&](std::string_view text) {
      for (char32_t c : utf8::Decode(text)) {
        if (!utf8::IsWhitespace(c)) characters.insert(c);
      }
    };
    for (const OutlineExample& example : split.examples) {
      add(example.title);
      for (const std::string& phrase : example.phrases) add(phrase);
      add(example.story);
    }
    report.vocab_size = characters.size();
    report.vocab_from_characters = true;
    return report;
  }

  std::unordered_map<std::string_view, const ParsedStory*> by_id;
  for (const ParsedStory& parse : *parses) by_id[parse.example_id] = &parse;

  std::unordered_set<std::string_view> vocabulary;
  auto add_segments = [&](const ParsedStory& parse) {
    for (const ParsedSentence& sentence : parse.sentences) {
      for (const WordSegment& segment : sentence.segments) {
        vocabulary.insert(segment.text);
      }
    }
  };
  std::size_t story_words = 0;
  std::size_t title_words = 0;
  std::size_t outline_words = 0;
  std::size_t titles_found = 0;
  std::size_t outlines_found = 0;
  for (const OutlineExample& example : split.examples) {
    const auto story = by_id.find(example.id);
    if (story == by_id.end()) {
      throw ValidationError("no parse for example \"" + example.id + "\"");
    }
    story_words += story->second->SegmentCount();
    add_segments(*story->second);
    if (const auto title = by_id.find(example.id + "@title");
        title != by_id.end()) {
      ++titles_found;
      title_words += title->second->SegmentCount();
      add_segments(*title->second);
    }
    if (const auto outline = by_id.find(example.id + "@outline");
        outline != by_id.end()) {
      ++outlines_found;
      outline_words += outline->second->SegmentCount();
      add_segments(*outline->second);
    }
  }
  auto require_all = [&](std::size_t found, std::string_view what) {
    if (found != 0 && found != report.example_count) {
      throw ValidationError(std::string(what) + " parses cover " +
                            std::to_string(found) + " of " +
                            std::to_string(report.example_count) +
                            " examples");
    }
    return found == report.example_count;
  };
  report.avg_story_words = Mean(story_words, report.example_count);
  if (require_all(titles_found, "title")) {
    report.avg_title_words = Mean(title_words, report.example_count);
  }
  if (require_all(outlines_found, "outline")) {
    report.avg_outline_words = Mean(outline_words, report.example_count);
  }
  report.vocab_size = vocabulary.size();
  return report;
}

nlohmann::ordered_json StatsToJson(const StatsReport& report,
                                   std::string_view split_name) {
  auto optional_value = [](const std::optional<double>& value) {
    return value ? nlohmann::ordered_json(RoundTo2(*value))
                 : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json json;
  json["split"] = split_name;
  json["example_count"] = report.example_count;
  json["vocab_size"] = report.vocab_size;
  json["vocab_from_characters"] = report.vocab_from_characters;
  json["avg_title_words"] = optional_value(report.avg_title_words);
  json["avg_outline_words"] = optional_value(report.avg_outline_words);
  json["avg_outline_phrases"] = RoundTo2(report.avg_outline_phrases);
  json["avg_story_chars"] = RoundTo2(report.avg_story_chars);
  json["avg_story_words"] = optional_value(report.avg_story_words);
  json["avg_story_sents"] = RoundTo2(report.avg_story_sents);
  json["total_story_chars"] = report.total_story_chars;
  return json;
}

void PrintStatsTable(const StatsReport& report, std::string_view split_name,
                     std::ostream& out) {
  const std::string vocab =
      std::to_string(report.vocab_size) +
      (report.vocab_from_characters ? " (characters)" : "");
  const std::pair<const char*, std::string> rows[] = {
      {"# Examples", std::to_string(report.example_count)},
      {"Vocabulary Size", vocab},
      {"Avg. # Word in Input Title", FormatValue(report.avg_title_words)},
      {"Avg. # Word in Input Outline", FormatValue(report.avg_outline_words)},
      {"Avg. # Phrase in Input Outline",
       FormatValue(report.avg_outline_phrases)},
      {"Avg. # Char in Output Text", FormatValue(report.avg_story_chars)},
      {"Avg. # Word in Output Text", FormatValue(report.avg_story_words)},
      {"Avg. # Sent in Output Text", FormatValue(report.avg_story_sents)},
  };
  char line[128];
  std::snprintf(line, sizeof(line), "%-32s %s\n", "Datasets",
                std::string(split_name).c_str());
  out << line;
  for (const auto& [label, value] : rows) {
    std::snprintf(line, sizeof(line), "%-32s %s\n", label, value.c_str());
    out << line;
  }
}

}  // namespace outgen
