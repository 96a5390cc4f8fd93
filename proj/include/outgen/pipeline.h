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

#ifndef OUTGEN_PIPELINE_H_
#define OUTGEN_PIPELINE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "outgen/augmenter.h"
#include "outgen/corpus.h"
#include "outgen/dep_tagger.h"
#include "outgen/metrics.h"

namespace outgen {

// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;

struct PipelineConfig {
  std::filesystem::path examples;
  std::filesystem::path parses;
  std::filesystem::path paraphrases;
  std::filesystem::path generated;
  std::filesystem::path input;   // emit-training: augmented corpus file
  std::filesystem::path output;
  std::filesystem::path report;  // augment: acceptance report JSONL
  std::string split = "val";

  std::vector<std::string> targets = {"dobj", "nsubj", "pobj", "root"};
  LabelAliases aliases = DefaultLabelAliases();
  FilterPolicy filter;
  std::string weights_name = "lot-val";  // empty when explicit
  MetricWeights weights = MetricWeights::LotVal();
  SourceRule source_rule;
  std::size_t max_units = kDefaultMaxUnits;
  std::uint64_t random_seed = 0;  // reserved; every step is deterministic
  LoadMode load_mode = LoadMode::kStrict;
  bool tag = false;               // augment: tag targets of every pair
  bool originals_only = false;    // augment: ignore paraphrases

  TargetRelationSet TargetSet() const { return TargetRelationSet(targets); }
  DependencyTagger Tagger() const { return DependencyTagger(TargetSet(), aliases); }
};

// Applies the fields present in `json` on top of `config`. Relative paths
// are resolved against `base_dir`. Unknown keys are rejected.
void ApplyConfigJson(const nlohmann::json& json,
                     const std::filesystem::path& base_dir,
                     PipelineConfig& config);
PipelineConfig LoadConfig(const std::filesystem::path& path);

// Generated stories JSONL: `id`, `story`.
struct GeneratedStory {
  std::string id;
  std::string story;
};
std::vector<GeneratedStory> LoadGeneratedStories(
    const std::filesystem::path& path);

// Subcommands. Each returns an exit status and never throws: validation
// failures give kExitValidation, I/O failures kExitIo. Human-readable
// summaries go to `out`, diagnostics to `err`.
int RunTag(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int RunAugment(const PipelineConfig& config, std::ostream& out,
               std::ostream& err);
int RunEmitTraining(const PipelineConfig& config, std::ostream& out,
                    std::ostream& err);
int RunEvaluate(const PipelineConfig& config, std::ostream& out,
                std::ostream& err);
// Replays published component scores (B-1, B-2, D-1, D-2, cover, order).
int RunAggregate(const PipelineConfig& config,
                 const std::array<double, 6>& scores, std::ostream& out,
                 std::ostream& err);
int RunStats(const PipelineConfig& config, std::ostream& out,
             std::ostream& err);

}  // namespace outgen

#endif  // OUTGEN_PIPELINE_H_
