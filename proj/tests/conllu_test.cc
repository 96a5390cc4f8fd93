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

#include "outgen/conllu.h"

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "outgen/errors.h"
#include "test_util.h"

namespace outgen {
namespace {

using testing::FixturePath;

std::string Row(int id, const std::string& form, int head,
                const std::string& rel) {
  return std::to_string(id) + "\t" + form + "\t_\t_\t_\t_\t" +
         std::to_string(head) + "\t" + rel + "\t_\t_\n";
}

std::string TravelBlock() {
  return "# example_id = travel\n# sent_id = travel-1\n" + Row(1, "他们", 2, "nsubj") +
         Row(2, "游历", 0, "root") + Row(3, "了", 2, "aux") +
         Row(4, "所有", 6, "det") + Row(5, "的", 6, "det") +
         Row(6, "国家", 2, "dobj") + "\n";
}

std::string ErrorOf(const std::string& text,
                    std::span<const OutlineExample> examples = {}) {
  std::istringstream in(text);
  try {
    ReadConllu(in, examples, "p.conllu");
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(LoadConllu, WorkedExampleSentence) {
  std::istringstream in(TravelBlock());
  const std::vector<ParsedStory> stories = ReadConllu(in, {});
  ASSERT_EQ(stories.size(), 1u);
  EXPECT_EQ(stories[0].example_id, "travel");
  ASSERT_EQ(stories[0].sentences.size(), 1u);
  EXPECT_EQ(stories[0].SegmentCount(), 6u);
  EXPECT_EQ(stories[0], testing::TravelStory());
  EXPECT_EQ(stories[0].sentences[0].segments[0].token_count, 2u);
  EXPECT_FALSE(stories[0].sentences[0].arcs[1].head_index.has_value());
}

TEST(LoadConllu, EmptyFile) {
  std::istringstream in("");
  EXPECT_TRUE(ReadConllu(in, {}).empty());
}

TEST(LoadConllu, ReconstructionMismatchReportsOffset) {
  OutlineExample example;
  example.id = "travel";
  example.story = "他们游历了所有国家";  // drops 的 at offset 7
  const std::vector<OutlineExample> examples = {example};
  const std::string error = ErrorOf(TravelBlock(), examples);
  EXPECT_NE(error.find("reconstruction mismatch at character offset 7"),
            std::string::npos)
      << error;
}

TEST(LoadConllu, ReconstructionIgnoresWhitespace) {
  OutlineExample example;
  example.id = "travel";
  example.story = "他们 游历 了 所有 的 国家";
  const std::vector<OutlineExample> examples = {example};
  EXPECT_EQ(ErrorOf(TravelBlock(), examples), "");
}

TEST(LoadConllu, MissingExampleId) {
  const std::string text = "# sent_id = 1\n" + Row(1, "走", 0, "root");
  EXPECT_NE(ErrorOf(text).find("missing example_id"), std::string::npos);
}

TEST(LoadConllu, MissingSentId) {
  const std::string text = "# example_id = a\n" + Row(1, "走", 0, "root");
  EXPECT_NE(ErrorOf(text).find("missing sent_id"), std::string::npos);
}

TEST(LoadConllu, HeadOutOfRange) {
  const std::string text = "# example_id = a\n# sent_id = 1\n" +
                           Row(1, "走", 0, "root") + Row(2, "了", 5, "aux");
  const std::string error = ErrorOf(text);
  EXPECT_NE(error.find("out of range"), std::string::npos) << error;
  EXPECT_NE(error.find("p.conllu:4:"), std::string::npos) << error;
}

TEST(LoadConllu, CyclicHeadChain) {
  const std::string text = "# example_id = a\n# sent_id = 1\n" +
                           Row(1, "走", 0, "root") + Row(2, "了", 3, "aux") +
                           Row(3, "吗", 2, "aux");
  EXPECT_NE(ErrorOf(text).find("cyclic"), std::string::npos);
}

TEST(LoadConllu, RootLabelMustMatchRootHead) {
  const std::string text = "# example_id = a\n# sent_id = 1\n" +
                           Row(1, "走", 0, "nsubj");
  EXPECT_NE(ErrorOf(text).find("root"), std::string::npos);
}

TEST(LoadConllu, SkipsMultiwordRangesAndEmptyNodes) {
  const std::string text = "# example_id = a\n# sent_id = 1\n"
                           "1-2\t走了\t_\t_\t_\t_\t_\t_\t_\t_\n" +
                           Row(1, "走", 0, "root") + Row(2, "了", 1, "aux") +
                           "2.1\t_\t_\t_\t_\t_\t_\t_\t_\t_\n";
  std::istringstream in(text);
  const auto stories = ReadConllu(in, {});
  ASSERT_EQ(stories.size(), 1u);
  EXPECT_EQ(stories[0].Text(), "走了");
}

TEST(LoadConllu, MultipleSentencesAndStories) {
  const std::vector<ParsedStory> stories =
      LoadConllu(FixturePath("parses.conllu"));
  ASSERT_EQ(stories.size(), 3u);
  EXPECT_EQ(stories[0].sentences.size(), 2u);
  EXPECT_EQ(stories[2].Text(), "天下雨了！我们在家里看书。");
}

TEST(LoadConllu, FixtureMatchesExampleStories) {
  const auto examples =
      LoadExamples(FixturePath("examples.jsonl"), LoadMode::kStrict).examples;
  EXPECT_NO_THROW(LoadConllu(FixturePath("parses.conllu"), examples));
}

TEST(LoadConllu, SerializeThenLoadIsIdentityOnRandomParses) {
  testing::RandomParseGenerator generator(7);
  std::vector<ParsedStory> stories;
  for (int i = 0; i < 200; ++i) {
    stories.push_back(generator.RandomStory("s" + std::to_string(i)));
  }
  std::stringstream buffer;
  WriteConllu(stories, buffer);
  EXPECT_EQ(ReadConllu(buffer, {}), stories);
}

}  // namespace
}  // namespace outgen
