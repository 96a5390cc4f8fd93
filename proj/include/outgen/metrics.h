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

#ifndef OUTGEN_METRICS_H_
#define OUTGEN_METRICS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "outgen/markers.h"

namespace outgen {

// Every metric works on Unicode characters; scores are percentages.

// Weights of the six component scores in the Overall aggregate.
struct MetricWeights {
  double b1 = 0.0;
  double b2 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double cover = 0.0;
  double order = 0.0;

  // Benchmark weights for the validation and test splits.
  static MetricWeights LotVal();
  static MetricWeights LotTest();
  // "lot-val" or "lot-test".
  static MetricWeights Preset(std::string_view name);
  static MetricWeights FromArray(std::span<const double> values);

  std::array<double, 6> AsArray() const;
  // Non-negative, summing to within [0.99, 1.01].
  void Validate() const;
};

struct MetricScores {
  double b1 = 0.0;
  double b2 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double cover = 0.0;
  double order = 0.0;

  std::array<double, 6> AsArray() const;
};

double Overall(const MetricScores& scores, const MetricWeights& weights);

using NgramCounts = std::unordered_map<std::u32string, std::size_t>;

NgramCounts CharNgrams(std::u32string_view text, std::size_t n);
NgramCounts CharNgrams(std::string_view text, std::size_t n);

inline constexpr std::size_t kMaxBleuOrder = 4;

// Clipped n-gram statistics of one candidate against one reference.
struct BleuStats {
  std::array<std::size_t, kMaxBleuOrder> matches{};
  std::array<std::size_t, kMaxBleuOrder> totals{};
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats ComputeBleuStats(std::u32string_view candidate,
                           std::u32string_view reference);

// Cumulative BLEU-n from summed statistics: geometric mean of p_1..p_n
// times min(1, exp(1 - ref_len / cand_len)), times 100. No smoothing.
double BleuFromStats(const BleuStats& stats, std::size_t n);

// Corpus-level BLEU-n over parallel lists (one reference per candidate).
double Bleu(std::span<const std::string> candidates,
            std::span<const std::string> references, std::size_t n);

struct DistinctResult {
  double score = 0.0;
  std::size_t unique = 0;
  std::size_t total = 0;
  bool degenerate = false;  // no n-grams at all; score is 0
};

// Unique n-grams over all texts pooled, divided by total n-gram tokens.
DistinctResult Distinct(std::span<const std::string> texts, std::size_t n);

// Bit-parallel LCS against a fixed pattern.
class LcsMatcher {
 public:
  explicit LcsMatcher(std::u32string_view pattern);

  std::size_t pattern_length() const { return length_; }
  std::size_t Against(std::u32string_view text) const;

 private:
  std::size_t length_ = 0;
  std::size_t words_ = 0;
  std::unordered_map<char32_t, std::vector<std::uint64_t>> masks_;
};

std::size_t LcsLength(std::u32string_view a, std::u32string_view b);
std::size_t LcsLength(std::string_view a, std::string_view b);

// Mean over phrases of LCS(phrase, story) / |phrase|, times 100.
double Coverage(std::string_view story, std::span<const std::string> phrases);

struct PhraseAnchor {
  std::size_t phrase_index = 0;
  std::optional<std::size_t> position;  // nullopt is MISSING
  double match_recall = 0.0;

  bool operator==(const PhraseAnchor&) const = default;
};

// Locates a phrase by the leftmost window of the phrase's length with the
// largest LCS against it. A story shorter than the phrase is one window.
PhraseAnchor AnchorPhrase(std::u32string_view story, std::u32string_view phrase,
                          std::size_t phrase_index = 0);
PhraseAnchor AnchorPhrase(std::string_view story, std::string_view phrase,
                          std::size_t phrase_index = 0);

struct OrderResult {
  double score = 0.0;
  std::size_t anchored = 0;   // phrases anchored in both texts
  std::size_t pairs = 0;
  double inversions = 0.0;
  bool degenerate = false;    // fewer than two co-anchored phrases
};

// 100 * (1 - inversions / pairs) over co-anchored phrase pairs. A pair is a
// full inversion when the two texts order it strictly opposite, half when
// exactly one text places both phrases at the same offset.
OrderResult OrderScore(std::string_view generated, std::string_view reference,
                       std::span<const std::string> phrases);

struct ExampleMetrics {
  double cover = 0.0;
  OrderResult order;
  BleuStats bleu;
};

struct MetricReport {
  MetricScores scores;
  double overall = 0.0;
  MetricWeights weights;
  bool d1_degenerate = false;
  bool d2_degenerate = false;
  std::vector<ExampleMetrics> per_example;
};

// Strips target markers from the generated texts, then scores everything.
MetricReport EvaluateCorpus(
    std::span<const std::string> generated,
    std::span<const std::string> references,
    std::span<const std::vector<std::string>> outlines,
    const MetricWeights& weights,
    const TargetRelationSet& targets = TargetRelationSet());

// Scores rounded to two decimals.
nlohmann::ordered_json ReportToJson(const MetricReport& report,
                                    std::span<const std::string> ids = {});
void PrintReportTable(const MetricReport& report, std::ostream& out);

double RoundTo2(double value);

}  // namespace outgen

#endif  // OUTGEN_METRICS_H_
