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

#include "outgen/pipeline.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>

#include "jsonl.h"
#include "outgen/conllu.h"
#include "outgen/errors.h"
#include "outgen/stats.h"
#include "outgen/utf8.h"

namespace outgen {
namespace {

namespace fs = std::filesystem;

void RequireInput(const fs::path& path, std::string_view what) {
  if (path.empty()) {
    throw ValidationError("no " + std::string(what) + " file configured");
  }
  if (!fs::exists(path)) {
    throw IoError(std::string(what) + " file not found: " + path.string());
  }
}

void RequireOutput(const fs::path& path) {
  if (path.empty()) throw ValidationError("no output file configured");
}

int Guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

std::vector<OutlineExample> LoadExamplesFor(const PipelineConfig& config,
                                            std::ostream& err) {
  RequireInput(config.examples, "examples");
  LoadedExamples loaded = LoadExamples(config.examples, config.load_mode);
  for (const std::string& message : loaded.report.skipped) {
    err << "skipped " << message << '\n';
  }
  if (loaded.examples.empty() && config.load_mode == LoadMode::kStrict) {
    throw ValidationError("no examples in " + config.examples.string());
  }
  return std::move(loaded.examples);
}

std::string BaseId(std::string_view parse_id) {
  return std::string(parse_id.substr(0, parse_id.find('#')));
}

std::string JoinCounts(const std::map<std::string, std::size_t>& counts) {
  std::string text;
  for (const auto& [label, count] : counts) {
    if (!text.empty()) text += ' ';
    text += label + "=" + std::to_string(count);
  }
  return text;
}

fs::path Resolve(const fs::path& base_dir, const std::string& value) {
  const fs::path path(value);
  return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
}

}  // namespace

void ApplyConfigJson(const nlohmann::json& json, const fs::path& base_dir,
                     PipelineConfig& config) {
  if (!json.is_object()) throw ValidationError("config must be a JSON object");
  static const std::set<std::string> kKnown = {
      "examples", "parses",      "paraphrases", "generated",      "input",
      "output",   "report",      "split",       "targets",        "aliases",
      "filter",   "weights",     "source_rule", "max_units",      "random_seed",
      "strict",   "tag",         "originals_only"};
  for (const auto& [key, value] : json.items()) {
    if (!kKnown.contains(key)) {
      throw ValidationError("unknown config key \"" + key + "\"");
    }
  }
  const std::pair<const char*, fs::path PipelineConfig::*> paths[] = {
      {"examples", &PipelineConfig::examples},
      {"parses", &PipelineConfig::parses},
      {"paraphrases", &PipelineConfig::paraphrases},
      {"generated", &PipelineConfig::generated},
      {"input", &PipelineConfig::input},
      {"output", &PipelineConfig::output},
      {"report", &PipelineConfig::report},
  };
  for (const auto& [key, member] : paths) {
    if (json.contains(key)) {
      config.*member = Resolve(base_dir, json.at(key).get<std::string>());
    }
  }
  if (json.contains("split")) {
    config.split = json.at("split").get<std::string>();
    ParseSplitName(config.split);
  }
  if (json.contains("targets")) {
    config.targets = json.at("targets").get<std::vector<std::string>>();
    TargetRelationSet check(config.targets);
  }
  if (json.contains("aliases")) {
    config.aliases.clear();
    for (const auto& [from, to] : json.at("aliases").items()) {
      config.aliases[from] = to.get<std::string>();
    }
  }
  if (json.contains("filter")) {
    const auto& filter = json.at("filter");
    for (const auto& [key, value] : filter.items()) {
      if (key == "min_length_ratio") {
        config.filter.min_length_ratio = value.get<double>();
      } else if (key == "max_length_ratio") {
        config.filter.max_length_ratio = value.get<double>();
      } else if (key == "max_accepted") {
        config.filter.max_accepted = value.get<std::size_t>();
      } else if (key == "reject_exact_duplicates") {
        config.filter.reject_exact_duplicates = value.get<bool>();
      } else {
        throw ValidationError("unknown filter key \"" + key + "\"");
      }
    }
    config.filter.Validate();
  }
  if (json.contains("weights")) {
    const auto& weights = json.at("weights");
    if (weights.is_string()) {
      config.weights_name = weights.get<std::string>();
      config.weights = MetricWeights::Preset(config.weights_name);
    } else {
      const auto values = weights.get<std::vector<double>>();
      config.weights = MetricWeights::FromArray(values);
      config.weights_name.clear();
    }
  }
  if (json.contains("source_rule")) {
    for (const auto& [key, value] : json.at("source_rule").items()) {
      if (key == "title_prefix") {
        config.source_rule.title_prefix = value.get<bool>();
      } else if (key == "separator") {
        config.source_rule.separator = value.get<std::string>();
      } else if (key == "title_separator") {
        config.source_rule.title_separator = value.get<std::string>();
      } else {
        throw ValidationError("unknown source_rule key \"" + key + "\"");
      }
    }
  }
  if (json.contains("max_units")) {
    config.max_units = json.at("max_units").get<std::size_t>();
    if (config.max_units == 0) {
      throw ValidationError("max_units must be at least 1");
    }
  }
  if (json.contains("random_seed")) {
    config.random_seed = json.at("random_seed").get<std::uint64_t>();
  }
  if (json.contains("strict")) {
    config.load_mode =
        json.at("strict").get<bool>() ? LoadMode::kStrict : LoadMode::kPermissive;
  }
  if (json.contains("tag")) config.tag = json.at("tag").get<bool>();
  if (json.contains("originals_only")) {
    config.originals_only = json.at("originals_only").get<bool>();
  }
}

PipelineConfig LoadConfig(const fs::path& path) {
  std::ifstream in = internal::OpenForRead(path);
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
  PipelineConfig config;
  try {
    ApplyConfigJson(json, path.parent_path(), config);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
  return config;
}

std::vector<GeneratedStory> LoadGeneratedStories(const fs::path& path) {
  std::ifstream in = internal::OpenForRead(path);
  std::vector<GeneratedStory> stories;
  auto fail = [&](std::size_t line_number, const std::string& message) {
    throw ValidationError(path.string() + ":" + std::to_string(line_number) +
                          ": " + message);
  };
  internal::ForEachJsonLine(
      in,
      [&](std::size_t line_number, const nlohmann::json& record) {
        try {
          stories.push_back({internal::RequireString(record, "id"),
                             internal::RequireString(record, "story")});
        } catch (const ValidationError& e) {
          fail(line_number, e.what());
        }
      },
      [&](std::size_t line_number, const std::string& message) -> bool {
        fail(line_number, message);
        return false;
      });
  return stories;
}

int RunTag(const PipelineConfig& config, std::ostream& out,
           std::ostream& err) {
  return Guarded(err, [&] {
    RequireOutput(config.output);
    RequireInput(config.parses, "parse");
    const std::vector<OutlineExample> examples = LoadExamplesFor(config, err);
    const std::vector<ParsedStory> parses =
        LoadConllu(config.parses, examples);
    const DependencyTagger tagger = config.Tagger();

    std::vector<TaggedStory> tagged;
    tagged.reserve(parses.size());
    std::map<std::string, std::size_t> totals;
    for (const std::string& label : tagger.targets().labels()) totals[label] = 0;
    std::size_t marker_total = 0;
    for (const ParsedStory& parse : parses) {
      tagged.push_back(tagger.Tag(parse));
      for (const auto& [label, count] :
           tagger.CountByRelation(tagged.back().text)) {
        totals[label] += count;
      }
      marker_total += tagged.back().marker_count;
    }
    WriteTaggedStories(tagged, config.output);
    out << "tagged " << tagged.size() << " stories, " << marker_total
        << " markers: " << JoinCounts(totals) << '\n';
  });
}

int RunAugment(const PipelineConfig& config, std::ostream& out,
               std::ostream& err) {
  return Guarded(err, [&] {
    RequireOutput(config.output);
    config.filter.Validate();
    if (!config.originals_only) RequireInput(config.paraphrases, "paraphrase");
    if (config.tag) RequireInput(config.parses, "parse");
    const std::vector<OutlineExample> examples = LoadExamplesFor(config, err);

    std::unordered_map<std::string_view, const OutlineExample*> by_id;
    for (const OutlineExample& example : examples) by_id[example.id] = &example;

    std::vector<ParaphraseSet> sets;
    if (!config.originals_only) {
      for (const ParaphraseCandidates& record :
           LoadParaphraseCandidates(config.paraphrases)) {
        const auto it = by_id.find(record.example_id);
        if (it == by_id.end()) {
          throw ValidationError("paraphrase file names unknown example_id \"" +
                                record.example_id + "\"");
        }
        sets.push_back(
            FilterParaphrases(*it->second, record.candidates, config.filter));
      }
    }
    AugmentedCorpus corpus =
        BuildAugmentedCorpus(examples, sets, config.source_rule);

    if (config.tag) {
      const std::vector<ParsedStory> parses =
          LoadConllu(config.parses, examples);
      // Parses are matched by base id (text before '#') and by their
      // whitespace-free text, so paraphrase blocks need no fixed numbering.
      std::map<std::pair<std::string, std::string>, const ParsedStory*> index;
      for (const ParsedStory& parse : parses) {
        index.emplace(std::make_pair(BaseId(parse.example_id),
                                     utf8::StripWhitespace(parse.Text())),
                      &parse);
      }
      const DependencyTagger tagger = config.Tagger();
      for (AugmentedPair& pair : corpus.pairs) {
        const auto it = index.find(
            {pair.example_id, utf8::StripWhitespace(pair.target)});
        if (it == index.end()) {
          throw ValidationError(
              "no parse for " + std::string(ToString(pair.origin)) +
              " story of example \"" + pair.example_id + "\"");
        }
        pair.target = tagger.Tag(*it->second).text;
      }
    }

    WriteAugmentedCorpus(corpus.pairs, config.output);

    std::size_t accepted = 0;
    std::size_t candidates = 0;
    for (const ParaphraseSet& entry : corpus.report) {
      accepted += entry.accepted.size();
      candidates += entry.candidates.size();
    }
    if (!config.report.empty()) {
      std::ofstream report = internal::OpenForWrite(config.report);
      for (const ParaphraseSet& entry : corpus.report) {
        internal::OrderedJson record;
        record["example_id"] = entry.example_id;
        record["candidates"] = entry.candidates.size();
        record["accepted"] = entry.accepted.size();
        internal::WriteJsonLine(report, record);
      }
    }
    out << "wrote " << corpus.pairs.size() << " pairs for " << examples.size()
        << " examples (" << accepted << " of " << candidates
        << " paraphrase candidates accepted)\n";
  });
}

int RunEmitTraining(const PipelineConfig& config, std::ostream& out,
                    std::ostream& err) {
  return Guarded(err, [&] {
    RequireOutput(config.output);
    std::vector<TrainingPair> pairs;
    if (!config.input.empty()) {
      RequireInput(config.input, "input");
      for (const AugmentedPair& pair : LoadAugmentedCorpus(config.input)) {
        pairs.push_back({pair.source, pair.target});
      }
    } else {
      for (const OutlineExample& example : LoadExamplesFor(config, err)) {
        pairs.push_back({config.source_rule.Assemble(example), example.story});
      }
    }
    const TrainingWriteReport report = WriteTrainingPairs(
        pairs, config.output, config.max_units, config.TargetSet());
    out << "wrote " << report.written << " training pairs, "
        << report.truncated << " truncated to " << config.max_units
        << " units\n";
  });
}

int RunEvaluate(const PipelineConfig& config, std::ostream& out,
                std::ostream& err) {
  return Guarded(err, [&] {
    RequireInput(config.generated, "generated");
    const std::vector<OutlineExample> references = LoadExamplesFor(config, err);
    const std::vector<GeneratedStory> generated =
        LoadGeneratedStories(config.generated);

    std::unordered_map<std::string_view, const GeneratedStory*> by_id;
    std::vector<std::string> extra;
    for (const GeneratedStory& story : generated) {
      if (!by_id.emplace(story.id, &story).second) {
        throw ValidationError("generated file repeats id \"" + story.id + "\"");
      }
    }
    std::vector<std::string> missing;
    for (const OutlineExample& example : references) {
      if (!by_id.contains(example.id)) missing.push_back(example.id);
    }
    std::set<std::string_view> reference_ids;
    for (const OutlineExample& example : references) {
      reference_ids.insert(example.id);
    }
    for (const GeneratedStory& story : generated) {
      if (!reference_ids.contains(story.id)) extra.push_back(story.id);
    }
    if (!missing.empty() || !extra.empty()) {
      std::string message = "generated ids do not match references;";
      auto list = [&](std::string_view label,
                      const std::vector<std::string>& ids) {
        if (ids.empty()) return;
        message += " " + std::string(label) + ":";
        for (const std::string& id : ids) message += " " + id;
      };
      list("missing", missing);
      list("extra", extra);
      throw ValidationError(message);
    }

    std::vector<std::string> ids;
    std::vector<std::string> candidate_texts;
    std::vector<std::string> reference_texts;
    std::vector<std::vector<std::string>> outlines;
    for (const OutlineExample& example : references) {
      ids.push_back(example.id);
      candidate_texts.push_back(by_id.at(example.id)->story);
      reference_texts.push_back(example.story);
      outlines.push_back(example.phrases);
    }
    const MetricReport report =
        EvaluateCorpus(candidate_texts, reference_texts, outlines,
                       config.weights, config.TargetSet());
    if (!config.output.empty()) {
      std::ofstream file = internal::OpenForWrite(config.output);
      file << ReportToJson(report, ids).dump(2) << '\n';
      if (!file) throw IoError("write failure on " + config.output.string());
    }
    PrintReportTable(report, out);
    if (report.d1_degenerate || report.d2_degenerate) {
      err << "warning: distinct-n undefined (no n-grams); reported as 0\n";
    }
  });
}

int RunAggregate(const PipelineConfig& config,
                 const std::array<double, 6>& scores, std::ostream& out,
                 std::ostream& err) {
  return Guarded(err, [&] {
    config.weights.Validate();
    MetricReport report;
    report.weights = config.weights;
    report.scores = {scores[0], scores[1], scores[2],
                     scores[3], scores[4], scores[5]};
    report.overall = Overall(report.scores, report.weights);
    PrintReportTable(report, out);
  });
}

int RunStats(const PipelineConfig& config, std::ostream& out,
             std::ostream& err) {
  return Guarded(err, [&] {
    DatasetSplit split;
    split.name = ParseSplitName(config.split);
    split.examples = LoadExamplesFor(config, err);
    std::optional<std::vector<ParsedStory>> parses;
    if (!config.parses.empty()) {
      RequireInput(config.parses, "parse");
      parses = LoadConllu(config.parses, split.examples);
    }
    const StatsReport report =
        parses ? ComputeDatasetStats(split, std::span<const ParsedStory>(*parses))
               : ComputeDatasetStats(split);
    if (!config.output.empty()) {
      std::ofstream file = internal::OpenForWrite(config.output);
      file << StatsToJson(report, config.split).dump(2) << '\n';
      if (!file) throw IoError("write failure on " + config.output.string());
    }
    PrintStatsTable(report, config.split, out);
    if (report.vocab_from_characters) {
      err << "note: no parses given; vocabulary counts characters and word "
             "averages are omitted\n";
    }
  });
}

}  // namespace outgen
