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

#include "outgen/corpus.h"

#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>

#include "jsonl.h"
#include "outgen/errors.h"
#include "outgen/utf8.h"

namespace outgen {

using internal::OrderedJson;

WordSegment WordSegment::FromText(std::string text) {
  if (text.empty()) throw ValidationError("empty word segment");
  const std::size_t count = utf8::Length(text);
  return WordSegment{std::move(text), count};
}

std::string ParsedStory::Text() const {
  std::string text;
  for (const ParsedSentence& sentence : sentences) {
    for (const WordSegment& segment : sentence.segments) {
      text.append(segment.text);
    }
  }
  return text;
}

std::size_t ParsedStory::SegmentCount() const {
  std::size_t count = 0;
  for (const ParsedSentence& sentence : sentences) {
    count += sentence.segments.size();
  }
  return count;
}

SplitName ParseSplitName(std::string_view name) {
  if (name == "train") return SplitName::kTrain;
  if (name == "val") return SplitName::kVal;
  if (name == "test") return SplitName::kTest;
  throw ValidationError("unknown split name '" + std::string(name) +
                        "' (expected train, val or test)");
}

std::string_view ToString(SplitName name) {
  switch (name) {
    case SplitName::kTrain:
      return "train";
    case SplitName::kVal:
      return "val";
    case SplitName::kTest:
      return "test";
  }
  return "train";
}

void ValidateExample(const OutlineExample& example,
                     bool allow_any_phrase_count) {
  if (example.id.empty()) throw ValidationError("field \"id\" is empty");
  if (!allow_any_phrase_count &&
      example.phrases.size() != kOutlinePhraseCount) {
    throw ValidationError("field \"outline\" has " +
                          std::to_string(example.phrases.size()) +
                          " phrases, expected " +
                          std::to_string(kOutlinePhraseCount));
  }
  if (example.phrases.empty()) {
    throw ValidationError("field \"outline\" is empty");
  }
  for (std::size_t i = 0; i < example.phrases.size(); ++i) {
    if (example.phrases[i].empty()) {
      throw ValidationError("field \"outline\" has an empty phrase at index " +
                            std::to_string(i));
    }
  }
  if (example.story.empty()) throw ValidationError("field \"story\" is empty");
}

namespace {

OutlineExample ExampleFromJson(const nlohmann::json& record,
                               std::size_t line_number) {
  OutlineExample example;
  if (record.contains("id")) {
    example.id = internal::RequireString(record, "id");
  } else {
    example.id = std::to_string(line_number);
  }
  example.title = record.contains("title")
                      ? internal::RequireString(record, "title")
                      : std::string();
  const auto outline = record.find("outline");
  if (outline == record.end()) {
    throw ValidationError("missing field \"outline\"");
  }
  if (!outline->is_array()) {
    throw ValidationError("field \"outline\" is not an array");
  }
  for (const auto& phrase : *outline) {
    if (!phrase.is_string()) {
      throw ValidationError("field \"outline\" holds a non-string entry");
    }
    example.phrases.push_back(phrase.get<std::string>());
  }
  example.story = internal::RequireString(record, "story");
  return example;
}

}  // namespace

LoadedExamples ReadExamples(std::istream& in, LoadMode mode,
                            std::string_view source_name) {
  LoadedExamples result;
  std::unordered_set<std::string> seen_ids;
  const bool strict = mode == LoadMode::kStrict;
  auto reject = [&](std::size_t line_number, const std::string& message) {
    const std::string full = std::string(source_name) + ":" +
                             std::to_string(line_number) + ": " + message;
    if (strict) throw ValidationError(full);
    result.report.skipped.push_back(full);
    return true;
  };
  internal::ForEachJsonLine(
      in,
      [&](std::size_t line_number, const nlohmann::json& record) {
        ++result.report.lines_read;
        OutlineExample example;
        try {
          example = ExampleFromJson(record, line_number);
          ValidateExample(example, /*allow_any_phrase_count=*/!strict);
        } catch (const ValidationError& e) {
          reject(line_number, e.what());
          return;
        }
        if (!seen_ids.insert(example.id).second) {
          reject(line_number, "duplicate id \"" + example.id + "\"");
          return;
        }
        result.examples.push_back(std::move(example));
      },
      [&](std::size_t line_number, const std::string& message) {
        ++result.report.lines_read;
        return reject(line_number, message);
      });
  result.report.loaded = result.examples.size();
  return result;
}

LoadedExamples LoadExamples(const std::filesystem::path& path, LoadMode mode) {
  std::ifstream in = internal::OpenForRead(path);
  return ReadExamples(in, mode, path.string());
}

void WriteExamples(std::span<const OutlineExample> examples,
                   std::ostream& out) {
  for (const OutlineExample& example : examples) {
    OrderedJson record;
    record["id"] = example.id;
    record["title"] = example.title;
    record["outline"] = example.phrases;
    record["story"] = example.story;
    internal::WriteJsonLine(out, record);
  }
}

void WriteExamples(std::span<const OutlineExample> examples,
                   const std::filesystem::path& path) {
  std::ofstream out = internal::OpenForWrite(path);
  WriteExamples(examples, out);
}

TrainingWriteReport WriteTrainingPairs(std::span<const TrainingPair> pairs,
                                       std::ostream& out,
                                       std::size_t max_units,
                                       const TargetRelationSet& targets) {
  if (max_units == 0) throw ValidationError("max_units must be at least 1");
  TrainingWriteReport report;
  for (const TrainingPair& pair : pairs) {
    OrderedJson record;
    record["src"] = pair.source;
    if (CountUnits(pair.target, targets) > max_units) {
      record["tgt"] = TruncateUnits(pair.target, max_units, targets);
      ++report.truncated;
    } else {
      record["tgt"] = pair.target;
    }
    internal::WriteJsonLine(out, record);
    ++report.written;
  }
  return report;
}

TrainingWriteReport WriteTrainingPairs(std::span<const TrainingPair> pairs,
                                       const std::filesystem::path& path,
                                       std::size_t max_units,
                                       const TargetRelationSet& targets) {
  if (max_units == 0) throw ValidationError("max_units must be at least 1");
  std::ofstream out = internal::OpenForWrite(path);
  return WriteTrainingPairs(pairs, out, max_units, targets);
}

std::vector<TrainingPair> ReadTrainingPairs(const std::filesystem::path& path) {
  std::ifstream in = internal::OpenForRead(path);
  std::vector<TrainingPair> pairs;
  internal::ForEachJsonLine(
      in,
      [&](std::size_t line_number, const nlohmann::json& record) {
        try {
          pairs.push_back({internal::RequireString(record, "src"),
                           internal::RequireString(record, "tgt")});
        } catch (const ValidationError& e) {
          throw ValidationError(path.string() + ":" +
                                std::to_string(line_number) + ": " + e.what());
        }
      },
      [&](std::size_t line_number, const std::string& message) -> bool {
        throw ValidationError(path.string() + ":" +
                              std::to_string(line_number) + ": " + message);
      });
  return pairs;
}

}  // namespace outgen
