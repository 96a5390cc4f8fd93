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

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

#include "outgen/errors.h"
#include "outgen/utf8.h"
#include "test_util.h"

namespace outgen {
namespace {

using testing::FixturePath;
using testing::MakeExample;
using testing::TempDir;

std::string EightPhraseRecord(const std::string& id) {
  return R"({"id":")" + id +
         R"(","title":"题","outline":["a","b","c","d","e","f","g","h"],"story":"故事。"})";
}

TEST(Utf8, DecodesAndCountsScalars) {
  EXPECT_EQ(utf8::Length("他们<nsubj>"), 9u);
  EXPECT_EQ(utf8::Decode("国家"), U"国家");
  EXPECT_EQ(utf8::Encode(U"国家𠀀"), "国家𠀀");
  EXPECT_EQ(utf8::StripWhitespace(std::string_view("他 们　去\n")),
            "他们去");
}

TEST(Utf8, RejectsMalformedInput) {
  EXPECT_THROW(utf8::Decode("\xE4\xBB"), ValidationError);
  EXPECT_THROW(utf8::Decode("\xC0\xAF"), ValidationError);  // overlong
  EXPECT_THROW(utf8::Decode("\xED\xA0\x80"), ValidationError);  // surrogate
}

TEST(LoadExamples, SingleValidRecord) {
  std::istringstream in(EightPhraseRecord("a1") + "\n");
  const LoadedExamples loaded = ReadExamples(in, LoadMode::kStrict);
  ASSERT_EQ(loaded.examples.size(), 1u);
  EXPECT_EQ(loaded.examples[0].id, "a1");
  EXPECT_EQ(loaded.examples[0].phrases.size(), 8u);
}

TEST(LoadExamples, SevenPhrasesStrictNamesLineAndField) {
  std::istringstream in(
      R"({"id":"x","title":"t","outline":["a","b","c","d","e","f","g"],"story":"s"})"
      "\n");
  try {
    ReadExamples(in, LoadMode::kStrict, "val.jsonl");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const std::string message = e.what();
    EXPECT_NE(message.find("val.jsonl:1:"), std::string::npos) << message;
    EXPECT_NE(message.find("\"outline\""), std::string::npos) << message;
  }
}

TEST(LoadExamples, PermissiveSkipsBadLinesAndAllowsAnyPhraseCount) {
  std::istringstream in(
      R"({"id":"x","title":"t","outline":["a","b"],"story":"s"})"
      "\n"
      "not json\n"
      R"({"id":"y","title":"t","outline":["a",""],"story":"s"})"
      "\n" +
      EightPhraseRecord("x") + "\n");
  const LoadedExamples loaded = ReadExamples(in, LoadMode::kPermissive);
  ASSERT_EQ(loaded.examples.size(), 1u);
  EXPECT_EQ(loaded.examples[0].phrases.size(), 2u);
  EXPECT_EQ(loaded.report.lines_read, 4u);
  ASSERT_EQ(loaded.report.skipped.size(), 3u);
  EXPECT_NE(loaded.report.skipped[0].find(":2:"), std::string::npos);
  EXPECT_NE(loaded.report.skipped[2].find("duplicate id"), std::string::npos);
}

TEST(LoadExamples, MalformedLineReportsLineNumber) {
  std::istringstream in(EightPhraseRecord("a") + "\n\n{broken\n");
  try {
    ReadExamples(in, LoadMode::kStrict, "f");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("f:3:"), std::string::npos);
  }
}

TEST(LoadExamples, DuplicateIdStrictFails) {
  std::istringstream in(EightPhraseRecord("a") + "\n" + EightPhraseRecord("a"));
  EXPECT_THROW(ReadExamples(in, LoadMode::kStrict), ValidationError);
}

TEST(LoadExamples, MissingIdFallsBackToLineNumber) {
  std::istringstream in(
      "\n"
      R"({"title":"t","outline":["a","b","c","d","e","f","g","h"],"story":"s"})");
  const LoadedExamples loaded = ReadExamples(in, LoadMode::kStrict);
  ASSERT_EQ(loaded.examples.size(), 1u);
  EXPECT_EQ(loaded.examples[0].id, "2");
}

TEST(LoadExamples, UnreadableFileIsIoError) {
  EXPECT_THROW(LoadExamples("/nonexistent/dir/x.jsonl", LoadMode::kStrict),
               IoError);
}

TEST(LoadExamples, FixtureFile) {
  const LoadedExamples loaded =
      LoadExamples(FixturePath("examples.jsonl"), LoadMode::kStrict);
  EXPECT_EQ(loaded.examples.size(), 3u);
  EXPECT_TRUE(loaded.report.skipped.empty());
}

TEST(LoadExamples, WriteThenLoadRoundTrips) {
  std::vector<OutlineExample> examples;
  examples.push_back(MakeExample("e1", "全角标点，保持不变！"));
  examples.push_back(MakeExample("e2", "含\"引号\"与\\反斜杠\n和换行"));
  examples[1].title = "";
  TempDir dir("roundtrip");
  WriteExamples(examples, dir / "ex.jsonl");
  const LoadedExamples loaded =
      LoadExamples(dir / "ex.jsonl", LoadMode::kStrict);
  EXPECT_EQ(loaded.examples, examples);
}

TEST(SplitName, OnlyThreeNames) {
  EXPECT_EQ(ParseSplitName("train"), SplitName::kTrain);
  EXPECT_EQ(ToString(ParseSplitName("test")), "test");
  EXPECT_THROW(ParseSplitName("dev"), ValidationError);
}

TEST(WriteTrainingPairs, TruncatesLongTargetAtUnitBoundary) {
  std::string target;
  for (int i = 0; i < 600; ++i) target += "字";
  const std::vector<TrainingPair> pairs = {{"src", target}};
  std::ostringstream out;
  const TrainingWriteReport report = WriteTrainingPairs(pairs, out, 512);
  EXPECT_EQ(report.written, 1u);
  EXPECT_EQ(report.truncated, 1u);
  const auto record = nlohmann::json::parse(out.str());
  EXPECT_EQ(utf8::Length(record["tgt"].get<std::string>()), 512u);
  EXPECT_EQ(record["src"], "src");
}

TEST(WriteTrainingPairs, MarkerCountsAsOneUnit) {
  // Units: 他, 们, <nsubj>, 去. Three fit.
  const std::vector<TrainingPair> pairs = {{"s", "他们<nsubj>去"}};
  std::ostringstream out;
  const TrainingWriteReport report = WriteTrainingPairs(pairs, out, 3);
  EXPECT_EQ(report.truncated, 1u);
  EXPECT_EQ(nlohmann::json::parse(out.str())["tgt"], "他们<nsubj>");
}

TEST(WriteTrainingPairs, ExactFitIsNotTruncated) {
  const std::vector<TrainingPair> pairs = {{"s", "他们<nsubj>"}};
  std::ostringstream out;
  EXPECT_EQ(WriteTrainingPairs(pairs, out, 3).truncated, 0u);
}

TEST(WriteTrainingPairs, EmptyListWritesEmptyFile) {
  TempDir dir("pairs");
  const TrainingWriteReport report =
      WriteTrainingPairs({}, dir / "train.jsonl", 512);
  EXPECT_EQ(report.written, 0u);
  EXPECT_EQ(report.truncated, 0u);
  EXPECT_TRUE(testing::ReadFile(dir / "train.jsonl").empty());
}

TEST(WriteTrainingPairs, UnwritablePathIsIoError) {
  EXPECT_THROW(WriteTrainingPairs({}, "/nonexistent/dir/t.jsonl", 512),
               IoError);
}

TEST(WriteTrainingPairs, ZeroMaxUnitsRejected) {
  std::ostringstream out;
  EXPECT_THROW(WriteTrainingPairs({}, out, 0), ValidationError);
}

}  // namespace
}  // namespace outgen
