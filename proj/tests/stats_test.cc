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

#include <algorithm>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "outgen/conllu.h"
#include "outgen/errors.h"
#include "test_util.h"

namespace outgen {
namespace {

using testing::MakeExample;
using testing::MakeSentence;

TEST(SplitSentences, Basics) {
  EXPECT_EQ(SplitSentences("甲。乙！"),
            (std::vector<std::string>{"甲。", "乙！"}));
  EXPECT_TRUE(SplitSentences("").empty());
  EXPECT_TRUE(SplitSentences("   ").empty());
  EXPECT_EQ(SplitSentences("没有句号").size(), 1u);
}

TEST(SplitSentences, QuotesAndRunsStayWithTheirSentence) {
  EXPECT_EQ(SplitSentences("他说：“走吧。”我们走了。"),
            (std::vector<std::string>{"他说：“走吧。”", "我们走了。"}));
  EXPECT_EQ(SplitSentences("真的吗？！是的；好"),
            (std::vector<std::string>{"真的吗？！", "是的；", "好"}));
}

TEST(CountStoryChars, IgnoresWhitespace) {
  EXPECT_EQ(CountStoryChars("他们 去了\n学校　。"), 7u);
}

TEST(ComputeDatasetStats, SingleExampleWithoutParses) {
  DatasetSplit split;
  split.name = SplitName::kVal;
  split.examples.push_back(MakeExample("a", "甲乙。丙丁！"));
  const StatsReport report = ComputeDatasetStats(split);
  EXPECT_EQ(report.example_count, 1u);
  EXPECT_DOUBLE_EQ(report.avg_story_chars, 6.0);
  EXPECT_DOUBLE_EQ(report.avg_story_sents, 2.0);
  EXPECT_DOUBLE_EQ(report.avg_outline_phrases, 8.0);
  EXPECT_TRUE(report.vocab_from_characters);
  EXPECT_FALSE(report.avg_story_words.has_value());
}

TEST(ComputeDatasetStats, ThreeExamplesRecountedByHand) {
  DatasetSplit split;
  split.examples.push_back(MakeExample("a", "甲乙。"));           // 3, 1
  split.examples.push_back(MakeExample("b", "甲。乙。丙。"));     // 6, 3
  split.examples.push_back(MakeExample("c", "天 晴"));            // 2, 1

  std::vector<ParsedStory> parses(3);
  parses[0].example_id = "a";
  parses[0].sentences.push_back(
      MakeSentence("1", {{"甲乙", 0, "root"}, {"。", 1, "punct"}}));
  parses[1].example_id = "b";
  for (const char* s : {"甲", "乙", "丙"}) {
    parses[1].sentences.push_back(
        MakeSentence(s, {{s, 0, "root"}, {"。", 1, "punct"}}));
  }
  parses[2].example_id = "c";
  parses[2].sentences.push_back(
      MakeSentence("1", {{"天", 2, "nsubj"}, {"晴", 0, "root"}}));

  const StatsReport report = ComputeDatasetStats(split, parses);
  EXPECT_EQ(report.example_count, 3u);
  EXPECT_EQ(report.total_story_chars, 11u);
  EXPECT_NEAR(report.avg_story_chars, 11.0 / 3.0, 1e-12);
  EXPECT_NEAR(report.avg_story_sents, 5.0 / 3.0, 1e-12);
  ASSERT_TRUE(report.avg_story_words.has_value());
  EXPECT_NEAR(*report.avg_story_words, 10.0 / 3.0, 1e-12);
  // 甲乙 。 甲 乙 丙 天 晴
  EXPECT_EQ(report.vocab_size, 7u);
  EXPECT_FALSE(report.vocab_from_characters);
  EXPECT_FALSE(report.avg_title_words.has_value());
}

TEST(ComputeDatasetStats, TitleAndOutlineParses) {
  DatasetSplit split;
  split.examples.push_back(MakeExample("a", "走。"));
  std::vector<ParsedStory> parses(3);
  parses[0].example_id = "a";
  parses[0].sentences.push_back(
      MakeSentence("1", {{"走", 0, "root"}, {"。", 1, "punct"}}));
  parses[1].example_id = "a@title";
  parses[1].sentences.push_back(
      MakeSentence("t", {{"标题", 0, "root"}, {"a", 1, "dep"}}));
  parses[2].example_id = "a@outline";
  parses[2].sentences.push_back(MakeSentence("o1", {{"短语", 0, "root"}}));
  parses[2].sentences.push_back(MakeSentence("o2", {{"短语", 0, "root"}}));
  const StatsReport report = ComputeDatasetStats(split, parses);
  EXPECT_EQ(report.avg_title_words, 2.0);
  EXPECT_EQ(report.avg_outline_words, 2.0);
}

TEST(ComputeDatasetStats, PermutationInvariant) {
  std::mt19937 rng(3);
  DatasetSplit split;
  for (int i = 0; i < 20; ++i) {
    std::string story;
    for (int k = 0; k <= i % 5; ++k) story += "字" + std::to_string(i) + "。";
    split.examples.push_back(MakeExample("e" + std::to_string(i), story));
  }
  const nlohmann::ordered_json base = StatsToJson(ComputeDatasetStats(split), "train");
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(split.examples.begin(), split.examples.end(), rng);
    ASSERT_EQ(StatsToJson(ComputeDatasetStats(split), "train"), base);
  }
}

TEST(ComputeDatasetStats, Errors) {
  DatasetSplit empty;
  EXPECT_THROW(ComputeDatasetStats(empty), ValidationError);
  DatasetSplit split;
  split.examples.push_back(MakeExample("a", "走。"));
  const std::vector<ParsedStory> none;
  EXPECT_THROW(ComputeDatasetStats(split, none), ValidationError);
}

TEST(ComputeDatasetStats, FixtureFilesAndTable) {
  DatasetSplit split;
  split.name = SplitName::kVal;
  split.examples = LoadExamples(testing::FixturePath("examples.jsonl"),
                                LoadMode::kStrict)
                       .examples;
  const auto parses = LoadConllu(testing::FixturePath("parses.conllu"));
  const StatsReport report = ComputeDatasetStats(split, parses);
  EXPECT_EQ(report.example_count, 3u);
  EXPECT_NEAR(report.avg_story_sents, 2.0, 1e-12);
  std::ostringstream table;
  PrintStatsTable(report, "val", table);
  EXPECT_NE(table.str().find("Vocabulary Size"), std::string::npos);
}

}  // namespace
}  // namespace outgen
