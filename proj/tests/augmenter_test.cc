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
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "outgen/errors.h"
#include "test_util.h"

namespace outgen {
namespace {

using testing::MakeExample;

const std::string kStory = "小明在学校学习数学。";  // 10 characters

std::vector<std::string> Variants(int count, const std::string& prefix = "变") {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(prefix + std::to_string(i) + "在学校学习数学。");
  }
  return out;
}

TEST(FilterPolicy, Validation) {
  EXPECT_NO_THROW(FilterPolicy().Validate());
  EXPECT_THROW((FilterPolicy{0.0, 2.0, 6, true}.Validate()), ValidationError);
  EXPECT_THROW((FilterPolicy{1.2, 2.0, 6, true}.Validate()), ValidationError);
  EXPECT_THROW((FilterPolicy{0.5, 0.9, 6, true}.Validate()), ValidationError);
  EXPECT_THROW((FilterPolicy{0.5, 2.0, 0, true}.Validate()), ValidationError);
}

TEST(FilterParaphrases, SixDistinctValidAllAccepted) {
  const auto candidates = Variants(6);
  const ParaphraseSet set =
      FilterParaphrases(MakeExample("e", kStory), candidates);
  EXPECT_EQ(set.accepted, candidates);
  EXPECT_EQ(set.candidates, candidates);
}

TEST(FilterParaphrases, OriginalStoryRejected) {
  const std::vector<std::string> candidates = {kStory};
  EXPECT_TRUE(FilterParaphrases(MakeExample("e", kStory), candidates)
                  .accepted.empty());
}

TEST(FilterParaphrases, DuplicateSkippedAndCapAtSix) {
  // c0 c1 c0' c2 c3 c4 c5 c6: the third repeats the first, so the six
  // accepted are c0 c1 c2 c3 c4 c5 and c6 is never reached.
  std::vector<std::string> candidates = Variants(7);
  candidates.insert(candidates.begin() + 2, candidates[0]);
  ASSERT_EQ(candidates.size(), 8u);
  const ParaphraseSet set =
      FilterParaphrases(MakeExample("e", kStory), candidates);
  const std::vector<std::string> expected(candidates.begin(),
                                          candidates.begin() + 2);
  ASSERT_EQ(set.accepted.size(), 6u);
  EXPECT_EQ(set.accepted[0], candidates[0]);
  EXPECT_EQ(set.accepted[1], candidates[1]);
  EXPECT_EQ(set.accepted[2], candidates[3]);
  EXPECT_EQ(set.accepted[5], candidates[6]);
}

TEST(FilterParaphrases, LengthBounds) {
  const std::vector<std::string> candidates = {
      "短",                       // 1 char < 5
      "小明学数学。",             // 6 chars, kept
      std::string(63, 'x'),       // > 20
      "",                         // empty
  };
  const ParaphraseSet set =
      FilterParaphrases(MakeExample("e", kStory), candidates);
  EXPECT_EQ(set.accepted, (std::vector<std::string>{"小明学数学。"}));
}

TEST(FilterParaphrases, DuplicatesAllowedWhenPolicySaysSo) {
  const std::vector<std::string> candidates = {"甲乙丙丁戊己庚辛壬癸",
                                               "甲乙丙丁戊己庚辛壬癸"};
  FilterPolicy policy;
  policy.reject_exact_duplicates = false;
  EXPECT_EQ(
      FilterParaphrases(MakeExample("e", kStory), candidates, policy)
          .accepted.size(),
      2u);
}

TEST(FilterParaphrases, IdempotentOnAcceptedTexts) {
  std::mt19937 rng(1);
  std::vector<std::string> candidates = Variants(9);
  candidates.push_back(candidates[3]);
  candidates.push_back(kStory);
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(candidates.begin(), candidates.end(), rng);
    const OutlineExample example = MakeExample("e", kStory);
    const ParaphraseSet first = FilterParaphrases(example, candidates);
    const ParaphraseSet second = FilterParaphrases(example, first.accepted);
    ASSERT_EQ(second.accepted, first.accepted);
  }
}

TEST(FilterParaphrases, TailPermutationDoesNotChangeAcceptance) {
  std::mt19937 rng(2);
  std::vector<std::string> candidates = {kStory};
  for (const std::string& v : Variants(6)) candidates.push_back(v);
  // Everything after index 6 lies beyond the sixth acceptable candidate.
  for (const std::string& v : Variants(8, "尾")) candidates.push_back(v);
  const OutlineExample example = MakeExample("e", kStory);
  const ParaphraseSet base = FilterParaphrases(example, candidates);
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(candidates.begin() + 7, candidates.end(), rng);
    ASSERT_EQ(FilterParaphrases(example, candidates).accepted, base.accepted);
  }
}

TEST(SourceRule, TitlePrefixedHashJoined) {
  OutlineExample example = MakeExample("e", kStory);
  example.title = "上学";
  example.phrases = {"a", "b", "c"};
  EXPECT_EQ(SourceRule().Assemble(example), "上学:a#b#c");
  SourceRule bare;
  bare.title_prefix = false;
  bare.separator = "<sep>";
  EXPECT_EQ(bare.Assemble(example), "a<sep>b<sep>c");
}

TEST(BuildAugmentedCorpus, HundredExamplesTimesSeven) {
  std::vector<OutlineExample> examples;
  std::vector<ParaphraseSet> sets;
  for (int i = 0; i < 100; ++i) {
    const std::string id = "e" + std::to_string(i);
    examples.push_back(MakeExample(id, kStory));
    sets.push_back(FilterParaphrases(examples.back(), Variants(6)));
  }
  const AugmentedCorpus corpus = BuildAugmentedCorpus(examples, sets);
  EXPECT_EQ(corpus.pairs.size(), 700u);
  for (std::size_t e = 0; e < examples.size(); ++e) {
    const auto first = corpus.pairs.begin() + static_cast<long>(e * 7);
    EXPECT_EQ(first->origin, PairOrigin::kOriginal);
    EXPECT_EQ(first->target, kStory);
    for (auto it = first; it != first + 7; ++it) {
      EXPECT_EQ(it->example_id, examples[e].id);
      EXPECT_EQ(it->source, first->source);
    }
  }
}

TEST(BuildAugmentedCorpus, OriginalOnlyWhenNothingAccepted) {
  const std::vector<OutlineExample> examples = {MakeExample("e", kStory)};
  const AugmentedCorpus corpus = BuildAugmentedCorpus(examples, {});
  ASSERT_EQ(corpus.pairs.size(), 1u);
  EXPECT_EQ(corpus.report.size(), 1u);
  EXPECT_TRUE(corpus.report[0].accepted.empty());
}

TEST(BuildAugmentedCorpus, PairCountIsExamplesPlusAccepted) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> count(0, 10);
  std::vector<OutlineExample> examples;
  std::vector<ParaphraseSet> sets;
  std::size_t accepted = 0;
  for (int i = 0; i < 40; ++i) {
    examples.push_back(MakeExample("e" + std::to_string(i), kStory));
    sets.push_back(FilterParaphrases(examples.back(), Variants(count(rng))));
    accepted += sets.back().accepted.size();
  }
  EXPECT_EQ(BuildAugmentedCorpus(examples, sets).pairs.size(),
            examples.size() + accepted);
}

TEST(BuildAugmentedCorpus, DanglingAndDuplicateIdsRejected) {
  const std::vector<OutlineExample> examples = {MakeExample("e", kStory)};
  std::vector<ParaphraseSet> dangling = {{"missing", {}, {}}};
  EXPECT_THROW(BuildAugmentedCorpus(examples, dangling), ValidationError);
  std::vector<ParaphraseSet> duplicate = {{"e", {}, {}}, {"e", {}, {}}};
  EXPECT_THROW(BuildAugmentedCorpus(examples, duplicate), ValidationError);
}

TEST(ParaphraseFile, ReadsRecordsAndRejectsBadShapes) {
  std::istringstream good(
      R"({"example_id":"a","candidates":["x","y"]})"
      "\n"
      R"({"example_id":"b","candidates":[]})");
  const auto records = ReadParaphraseCandidates(good);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].candidates.size(), 2u);
  std::istringstream bad(R"({"example_id":"a","candidates":"x"})");
  EXPECT_THROW(ReadParaphraseCandidates(bad), ValidationError);
}

TEST(AugmentedFile, WriteThenLoad) {
  const std::vector<AugmentedPair> pairs = {
      {"e", "t:a#b", "故事", PairOrigin::kOriginal},
      {"e", "t:a#b", "故事二", PairOrigin::kParaphrase}};
  testing::TempDir dir("aug");
  WriteAugmentedCorpus(pairs, dir / "aug.jsonl");
  EXPECT_EQ(LoadAugmentedCorpus(dir / "aug.jsonl"), pairs);
  EXPECT_EQ(testing::ReadLines(dir / "aug.jsonl")[1],
            R"({"id":"e","src":"t:a#b","tgt":"故事二","origin":"paraphrase"})");
}

}  // namespace
}  // namespace outgen
