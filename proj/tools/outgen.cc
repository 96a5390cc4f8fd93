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

// outgen: tag, augment, emit training files, evaluate and describe
// outline-conditioned story corpora.

#include <array>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "outgen/errors.h"
#include "outgen/pipeline.h"

namespace {

struct Overrides {
  std::optional<std::string> examples;
  std::optional<std::string> parses;
  std::optional<std::string> paraphrases;
  std::optional<std::string> generated;
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::optional<std::string> report;
  std::optional<std::string> split;
  std::optional<std::string> weights;
  std::optional<std::vector<std::string>> targets;
  std::optional<std::size_t> max_units;
  std::optional<std::string> separator;
  bool no_title = false;
  bool strict = false;
  bool permissive = false;
  bool tag = false;
  bool originals_only = false;
};

void AddPathOptions(CLI::App* command, Overrides& o, bool paraphrases,
                    bool generated, bool input, bool report) {
  command->add_option("--examples", o.examples, "Example JSONL file");
  command->add_option("--parses", o.parses, "CoNLL-U parse file");
  if (paraphrases) {
    command->add_option("--paraphrases", o.paraphrases,
                        "Paraphrase candidates JSONL");
  }
  if (generated) {
    command->add_option("--generated", o.generated,
                        "Generated stories JSONL (id, story)");
  }
  if (input) {
    command->add_option("--input", o.input, "Augmented corpus JSONL");
  }
  if (report) {
    command->add_option("--report", o.report, "Acceptance report JSONL");
  }
  command->add_option("--output", o.output, "Output file");
}

outgen::PipelineConfig BuildConfig(const std::string& config_path,
                                   const Overrides& o) {
  outgen::PipelineConfig config =
      config_path.empty() ? outgen::PipelineConfig()
                          : outgen::LoadConfig(config_path);
  nlohmann::json patch = nlohmann::json::object();
  auto set = [&](const char* key, const auto& value) {
    if (value) patch[key] = *value;
  };
  set("examples", o.examples);
  set("parses", o.parses);
  set("paraphrases", o.paraphrases);
  set("generated", o.generated);
  set("input", o.input);
  set("output", o.output);
  set("report", o.report);
  set("split", o.split);
  set("weights", o.weights);
  set("targets", o.targets);
  set("max_units", o.max_units);
  if (o.separator) patch["source_rule"]["separator"] = *o.separator;
  if (o.no_title) patch["source_rule"]["title_prefix"] = false;
  if (o.strict) patch["strict"] = true;
  if (o.permissive) patch["strict"] = false;
  if (o.tag) patch["tag"] = true;
  if (o.originals_only) patch["originals_only"] = true;
  outgen::ApplyConfigJson(patch, {}, config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corpus augmentation and evaluation for outline-conditioned "
               "Chinese story generation"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  Overrides o;
  app.add_option("--config", config_path, "JSON pipeline configuration")
      ->check(CLI::ExistingFile);
  auto* strict = app.add_flag("--strict", o.strict,
                              "Reject any invalid example (default)");
  app.add_flag("--permissive", o.permissive,
               "Skip invalid examples and allow any phrase count")
      ->excludes(strict);
  app.add_option("--weights", o.weights, "Metric weight preset")
      ->check(CLI::IsMember({"lot-val", "lot-test"}));
  app.add_option("--targets", o.targets, "Target relations to tag")
      ->delimiter(',');
  app.add_option("--max-units", o.max_units, "Maximum target length in units")
      ->check(CLI::PositiveNumber);
  app.add_option("--separator", o.separator, "Outline phrase separator");
  app.add_flag("--no-title", o.no_title, "Do not prefix sources with titles");

  auto* tag = app.add_subcommand("tag", "Insert dependency markers");
  AddPathOptions(tag, o, false, false, false, false);

  auto* augment = app.add_subcommand(
      "augment", "Merge filtered paraphrases into a training corpus");
  AddPathOptions(augment, o, true, false, false, true);
  augment->add_flag("--tag", o.tag, "Tag every target story");
  augment->add_flag("--originals-only", o.originals_only,
                    "Ignore paraphrases");

  auto* emit = app.add_subcommand(
      "emit-training", "Write {src, tgt} training pairs with truncation");
  AddPathOptions(emit, o, false, false, true, false);

  auto* evaluate =
      app.add_subcommand("evaluate", "Score generated stories");
  AddPathOptions(evaluate, o, false, true, false, false);
  std::vector<double> aggregate;
  evaluate
      ->add_option("--aggregate-only", aggregate,
                   "Six component scores (B-1 B-2 D-1 D-2 cover order)")
      ->expected(6);

  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  AddPathOptions(stats, o, false, false, false, false);
  stats->add_option("--split", o.split, "Split name")
      ->check(CLI::IsMember({"train", "val", "test"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : outgen::kExitValidation;
  }

  outgen::PipelineConfig config;
  try {
    config = BuildConfig(config_path, o);
  } catch (const outgen::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return outgen::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return outgen::kExitValidation;
  }

  if (tag->parsed()) return outgen::RunTag(config, std::cout, std::cerr);
  if (augment->parsed()) {
    return outgen::RunAugment(config, std::cout, std::cerr);
  }
  if (emit->parsed()) {
    return outgen::RunEmitTraining(config, std::cout, std::cerr);
  }
  if (evaluate->parsed()) {
    if (!aggregate.empty()) {
      std::array<double, 6> scores{};
      std::copy(aggregate.begin(), aggregate.end(), scores.begin());
      return outgen::RunAggregate(config, scores, std::cout, std::cerr);
    }
    return outgen::RunEvaluate(config, std::cout, std::cerr);
  }
  return outgen::RunStats(config, std::cout, std::cerr);
}
