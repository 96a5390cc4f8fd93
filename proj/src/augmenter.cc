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

#include "outgen/augmenter.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "jsonl.h"
#include "outgen/errors.h"
#include "outgen/utf8.h"

namespace outgen {

void FilterPolicy::Validate() const {
  if (!(min_length_ratio > 0.0 && min_length_ratio <= 1.0 &&
        max_length_ratio >= 1.0)) {
    throw ValidationError(
        "filter policy needs 0 < min_length_ratio <= 1 <= max_length_ratio");
  }
  if (max_accepted < 1) {
    throw ValidationError("filter policy needs max_accepted >= 1");
  }
}

std::string SourceRule::Assemble(const OutlineExample& example) const {
  std::string source;
  if (title_prefix) {
    source.append(example.title);
    source.append(title_separator);
  }
  for (std::size_t i = 0; i < example.phrases.size(); ++i) {
    if (i > 0) source.append(separator);
    source.append(example.phrases[i]);
  }
  return source;
}

ParaphraseSet FilterParaphrases(const OutlineExample& example,
                                std::span<const std::string> candidates,
                                const FilterPolicy& policy) {
  policy.Validate();
  ParaphraseSet result;
  result.example_id = example.id;
  result.candidates.assign(candidates.begin(), candidates.end());

  const double original_length =
      static_cast<double>(utf8::Length(example.story));
  const double min_length = policy.min_length_ratio * original_length;
  const double max_length = policy.max_length_ratio * original_length;
  std::unordered_set<std::string_view> seen;
  if (policy.reject_exact_duplicates) seen.insert(example.story);

  for (const std::string& candidate : result.candidates) {
    if (result.accepted.size() >= policy.max_accepted) break;
    if (candidate == example.story) continue;
    if (policy.reject_exact_duplicates && seen.contains(candidate)) continue;
    const auto length = static_cast<double>(utf8::Length(candidate));
    if (length == 0.0 || length < min_length || length > max_length) continue;
    result.accepted.push_back(candidate);
    if (policy.reject_exact_duplicates) seen.insert(candidate);
  }
  return result;
}

std::string_view ToString(PairOrigin origin) {
  return origin == PairOrigin::kOriginal ? "original" : "paraphrase";
}

AugmentedCorpus BuildAugmentedCorpus(std::span<const OutlineExample> examples,
                                     std::span<const ParaphraseSet> paraphrases,
                                     const SourceRule& source_rule) {
  std::unordered_map<std::string_view, const OutlineExample*> by_id;
  for (const OutlineExample& example : examples) by_id[example.id] = &example;

  std::unordered_map<std::string_view, const ParaphraseSet*> set_for;
  for (const ParaphraseSet& set : paraphrases) {
    if (!by_id.contains(set.example_id)) {
      throw ValidationError("paraphrase set for unknown example_id \"" +
                            set.example_id + "\"");
    }
    if (!set_for.emplace(set.example_id, &set).second) {
      throw ValidationError("duplicate paraphrase set for example_id \"" +
                            set.example_id + "\"");
    }
  }

  AugmentedCorpus corpus;
  for (const OutlineExample& example : examples) {
    const std::string source = source_rule.Assemble(example);
    corpus.pairs.push_back(
        {example.id, source, example.story, PairOrigin::kOriginal});
    const auto it = set_for.find(example.id);
    ParaphraseSet entry;
    if (it != set_for.end()) {
      entry = *it->second;
      for (const std::string& accepted : entry.accepted) {
        corpus.pairs.push_back(
            {example.id, source, accepted, PairOrigin::kParaphrase});
      }
    } else {
      entry.example_id = example.id;
    }
    corpus.report.push_back(std::move(entry));
  }
  return corpus;
}

std::vector<ParaphraseCandidates> ReadParaphraseCandidates(
    std::istream& in, std::string_view source_name) {
  std::vector<ParaphraseCandidates> records;
  auto fail = [&](std::size_t line_number, const std::string& message) {
    throw ValidationError(std::string(source_name) + ":" +
                          std::to_string(line_number) + ": " + message);
  };
  internal::ForEachJsonLine(
      in,
      [&](std::size_t line_number, const nlohmann::json& record) {
        ParaphraseCandidates entry;
        try {
          entry.example_id = internal::RequireString(record, "example_id");
        } catch (const ValidationError& e) {
          fail(line_number, e.what());
        }
        const auto candidates = record.find("candidates");
        if (candidates == record.end() || !candidates->is_array()) {
          fail(line_number, "field \"candidates\" must be an array");
        }
        for (const auto& candidate : *candidates) {
          if (!candidate.is_string()) {
            fail(line_number, "field \"candidates\" holds a non-string entry");
          }
          entry.candidates.push_back(candidate.get<std::string>());
        }
        records.push_back(std::move(entry));
      },
      [&](std::size_t line_number, const std::string& message) -> bool {
        fail(line_number, message);
        return false;
      });
  return records;
}

std::vector<ParaphraseCandidates> LoadParaphraseCandidates(
    const std::filesystem::path& path) {
  std::ifstream in = internal::OpenForRead(path);
  return ReadParaphraseCandidates(in, path.string());
}

void WriteAugmentedCorpus(std::span<const AugmentedPair> pairs,
                          std::ostream& out) {
  for (const AugmentedPair& pair : pairs) {
    internal::OrderedJson record;
    record["id"] = pair.example_id;
    record["src"] = pair.source;
    record["tgt"] = pair.target;
    record["origin"] = ToString(pair.origin);
    internal::WriteJsonLine(out, record);
  }
}

void WriteAugmentedCorpus(std::span<const AugmentedPair> pairs,
                          const std::filesystem::path& path) {
  std::ofstream out = internal::OpenForWrite(path);
  WriteAugmentedCorpus(pairs, out);
}

std::vector<AugmentedPair> LoadAugmentedCorpus(
    const std::filesystem::path& path) {
  std::ifstream in = internal::OpenForRead(path);
  std::vector<AugmentedPair> pairs;
  auto fail = [&](std::size_t line_number, const std::string& message) {
    throw ValidationError(path.string() + ":" + std::to_string(line_number) +
                          ": " + message);
  };
  internal::ForEachJsonLine(
      in,
      [&](std::size_t line_number, const nlohmann::json& record) {
        AugmentedPair pair;
        std::string origin;
        try {
          pair.example_id = record.contains("id")
                                ? internal::RequireString(record, "id")
                                : std::string();
          pair.source = internal::RequireString(record, "src");
          pair.target = internal::RequireString(record, "tgt");
          origin = record.contains("origin")
                       ? internal::RequireString(record, "origin")
                       : std::string("original");
        } catch (const ValidationError& e) {
          fail(line_number, e.what());
        }
        if (origin == "original") {
          pair.origin = PairOrigin::kOriginal;
        } else if (origin == "paraphrase") {
          pair.origin = PairOrigin::kParaphrase;
        } else {
          fail(line_number, "unknown origin \"" + origin + "\"");
        }
        pairs.push_back(std::move(pair));
      },
      [&](std::size_t line_number, const std::string& message) -> bool {
        fail(line_number, message);
        return false;
      });
  return pairs;
}

}  // namespace outgen
