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

#include "outgen/metrics.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_set>

#include "outgen/errors.h"
#include "outgen/utf8.h"

namespace outgen {
namespace {

void CheckOrder(std::size_t n, std::size_t max_n) {
  if (n < 1 || n > max_n) {
    throw ValidationError("n-gram order " + std::to_string(n) +
                          " outside [1, " + std::to_string(max_n) + "]");
  }
}

int Sign(std::size_t a, std::size_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

std::vector<std::u32string> DecodeAll(std::span<const std::string> texts) {
  std::vector<std::u32string> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) out.push_back(utf8::Decode(text));
  return out;
}

}  // namespace

MetricWeights MetricWeights::LotVal() {
  return {0.190, 0.405, 0.119, 0.095, 0.095, 0.095};
}

MetricWeights MetricWeights::LotTest() {
  return {0.195, 0.390, 0.122, 0.098, 0.098, 0.098};
}

MetricWeights MetricWeights::Preset(std::string_view name) {
  if (name == "lot-val") return LotVal();
  if (name == "lot-test") return LotTest();
  throw ValidationError("unknown weight preset '" + std::string(name) +
                        "' (expected lot-val or lot-test)");
}

MetricWeights MetricWeights::FromArray(std::span<const double> values) {
  if (values.size() != 6) {
    throw ValidationError("metric weights need exactly 6 values");
  }
  MetricWeights weights{values[0], values[1], values[2],
                        values[3], values[4], values[5]};
  weights.Validate();
  return weights;
}

std::array<double, 6> MetricWeights::AsArray() const {
  return {b1, b2, d1, d2, cover, order};
}

void MetricWeights::Validate() const {
  const auto values = AsArray();
  for (double w : values) {
    if (!(w >= 0.0)) throw ValidationError("metric weights must be >= 0");
  }
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (sum < 0.99 || sum > 1.01) {
    throw ValidationError("metric weights sum to " + std::to_string(sum) +
                          ", outside [0.99, 1.01]");
  }
}

std::array<double, 6> MetricScores::AsArray() const {
  return {b1, b2, d1, d2, cover, order};
}

double Overall(const MetricScores& scores, const MetricWeights& weights) {
  const auto s = scores.AsArray();
  const auto w = weights.AsArray();
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) total += w[i] * s[i];
  return total;
}

NgramCounts CharNgrams(std::u32string_view text, std::size_t n) {
  if (n < 1) throw ValidationError("n-gram order must be positive");
  NgramCounts counts;
  if (text.size() < n) return counts;
  for (std::size_t i = 0; i + n <= text.size(); ++i) {
    ++counts[std::u32string(text.substr(i, n))];
  }
  return counts;
}

NgramCounts CharNgrams(std::string_view text, std::size_t n) {
  return CharNgrams(std::u32string_view(utf8::Decode(text)), n);
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t k = 0; k < kMaxBleuOrder; ++k) {
    matches[k] += other.matches[k];
    totals[k] += other.totals[k];
  }
  candidate_length += other.candidate_length;
  reference_length += other.reference_length;
  return *this;
}

BleuStats ComputeBleuStats(std::u32string_view candidate,
                           std::u32string_view reference) {
  BleuStats stats;
  stats.candidate_length = candidate.size();
  stats.reference_length = reference.size();
  for (std::size_t n = 1; n <= kMaxBleuOrder; ++n) {
    if (candidate.size() < n) break;
    const NgramCounts cand = CharNgrams(candidate, n);
    const NgramCounts ref = CharNgrams(reference, n);
    std::size_t matched = 0;
    for (const auto& [gram, count] : cand) {
      const auto it = ref.find(gram);
      if (it != ref.end()) matched += std::min(count, it->second);
    }
    stats.matches[n - 1] = matched;
    stats.totals[n - 1] = candidate.size() - n + 1;
  }
  return stats;
}

double BleuFromStats(const BleuStats& stats, std::size_t n) {
  CheckOrder(n, kMaxBleuOrder);
  if (stats.candidate_length == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (stats.matches[k] == 0 || stats.totals[k] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(stats.matches[k]) /
                        static_cast<double>(stats.totals[k]));
  }
  const double c = static_cast<double>(stats.candidate_length);
  const double r = static_cast<double>(stats.reference_length);
  const double log_bp = std::min(0.0, 1.0 - r / c);
  return 100.0 * std::exp(log_bp + log_sum / static_cast<double>(n));
}

double Bleu(std::span<const std::string> candidates,
            std::span<const std::string> references, std::size_t n) {
  CheckOrder(n, kMaxBleuOrder);
  if (candidates.size() != references.size()) {
    throw ValidationError("BLEU needs parallel candidate/reference lists");
  }
  if (candidates.empty()) throw ValidationError("BLEU needs a non-empty corpus");
  BleuStats total;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    total += ComputeBleuStats(utf8::Decode(candidates[i]),
                              utf8::Decode(references[i]));
  }
  return BleuFromStats(total, n);
}

DistinctResult Distinct(std::span<const std::string> texts, std::size_t n) {
  if (texts.empty()) throw ValidationError("Distinct needs a non-empty corpus");
  if (n < 1) throw ValidationError("n-gram order must be positive");
  std::unordered_set<std::u32string> unique;
  DistinctResult result;
  for (const std::string& text : texts) {
    const std::u32string chars = utf8::Decode(text);
    if (chars.size() < n) continue;
    for (std::size_t i = 0; i + n <= chars.size(); ++i) {
      unique.insert(chars.substr(i, n));
    }
    result.total += chars.size() - n + 1;
  }
  result.unique = unique.size();
  if (result.total == 0) {
    result.degenerate = true;
    return result;
  }
  result.score = 100.0 * static_cast<double>(result.unique) /
                 static_cast<double>(result.total);
  return result;
}

LcsMatcher::LcsMatcher(std::u32string_view pattern)
    : length_(pattern.size()), words_((pattern.size() + 63) / 64) {
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    auto& mask = masks_[pattern[i]];
    if (mask.empty()) mask.assign(words_, 0);
    mask[i / 64] |= std::uint64_t{1} << (i % 64);
  }
}

// Hyyro's bit-vector recurrence: V' = (V + U) | (V - U) with U = V & M[c].
// Since U is a subset of V, V - U is V & ~U and only the sum carries. Each
// zero bit in the first `length_` positions of V is one LCS character.
std::size_t LcsMatcher::Against(std::u32string_view text) const {
  if (length_ == 0 || text.empty()) return 0;
  std::vector<std::uint64_t> v(words_, ~std::uint64_t{0});
  for (char32_t c : text) {
    const auto it = masks_.find(c);
    if (it == masks_.end()) continue;
    const std::vector<std::uint64_t>& mask = it->second;
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      const std::uint64_t u = v[w] & mask[w];
      const std::uint64_t sum = v[w] + u;
      const std::uint64_t sum_c = sum + carry;
      carry = (sum < v[w] || sum_c < sum) ? 1 : 0;
      v[w] = sum_c | (v[w] & ~u);
    }
  }
  std::size_t zeros = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t word = ~v[w];
    const std::size_t valid = std::min<std::size_t>(64, length_ - 64 * w);
    if (valid < 64) word &= (std::uint64_t{1} << valid) - 1;
    zeros += static_cast<std::size_t>(std::popcount(word));
  }
  return zeros;
}

std::size_t LcsLength(std::u32string_view a, std::u32string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  return LcsMatcher(a).Against(b);
}

std::size_t LcsLength(std::string_view a, std::string_view b) {
  return LcsLength(std::u32string_view(utf8::Decode(a)),
                   std::u32string_view(utf8::Decode(b)));
}

double Coverage(std::string_view story, std::span<const std::string> phrases) {
  if (phrases.empty()) throw ValidationError("coverage needs phrases");
  const std::u32string chars = utf8::Decode(story);
  double sum = 0.0;
  for (const std::string& phrase : phrases) {
    const std::u32string p = utf8::Decode(phrase);
    if (p.empty()) throw ValidationError("coverage given an empty phrase");
    sum += static_cast<double>(LcsMatcher(p).Against(chars)) /
           static_cast<double>(p.size());
  }
  return 100.0 * sum / static_cast<double>(phrases.size());
}

PhraseAnchor AnchorPhrase(std::u32string_view story, std::u32string_view phrase,
                          std::size_t phrase_index) {
  if (phrase.empty()) throw ValidationError("cannot anchor an empty phrase");
  PhraseAnchor anchor;
  anchor.phrase_index = phrase_index;
  if (story.empty()) return anchor;
  const LcsMatcher matcher(phrase);
  const std::size_t width = std::min(phrase.size(), story.size());
  std::size_t best = 0;
  std::size_t best_start = 0;
  for (std::size_t start = 0; start + width <= story.size(); ++start) {
    const std::size_t lcs = matcher.Against(story.substr(start, width));
    if (lcs > best) {
      best = lcs;
      best_start = start;
      if (best == phrase.size()) break;
    }
  }
  if (best == 0) return anchor;
  anchor.position = best_start;
  anchor.match_recall =
      static_cast<double>(best) / static_cast<double>(phrase.size());
  return anchor;
}

PhraseAnchor AnchorPhrase(std::string_view story, std::string_view phrase,
                          std::size_t phrase_index) {
  return AnchorPhrase(std::u32string_view(utf8::Decode(story)),
                      std::u32string_view(utf8::Decode(phrase)), phrase_index);
}

OrderResult OrderScore(std::string_view generated, std::string_view reference,
                       std::span<const std::string> phrases) {
  if (phrases.size() < 2) {
    throw ValidationError("order score needs at least two phrases");
  }
  const std::u32string gen = utf8::Decode(generated);
  const std::u32string ref = utf8::Decode(reference);
  std::vector<std::size_t> gen_pos;
  std::vector<std::size_t> ref_pos;
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    const std::u32string phrase = utf8::Decode(phrases[i]);
    const PhraseAnchor in_gen = AnchorPhrase(gen, phrase, i);
    const PhraseAnchor in_ref = AnchorPhrase(ref, phrase, i);
    if (in_gen.position && in_ref.position) {
      gen_pos.push_back(*in_gen.position);
      ref_pos.push_back(*in_ref.position);
    }
  }
  OrderResult result;
  result.anchored = gen_pos.size();
  if (result.anchored < 2) {
    result.degenerate = true;
    return result;
  }
  for (std::size_t i = 0; i < result.anchored; ++i) {
    for (std::size_t j = i + 1; j < result.anchored; ++j) {
      const int g = Sign(gen_pos[i], gen_pos[j]);
      const int r = Sign(ref_pos[i], ref_pos[j]);
      ++result.pairs;
      if (g == r) continue;
      result.inversions += (g == 0 || r == 0) ? 0.5 : 1.0;
    }
  }
  result.score = 100.0 * (1.0 - result.inversions /
                                    static_cast<double>(result.pairs));
  return result;
}

MetricReport EvaluateCorpus(std::span<const std::string> generated,
                            std::span<const std::string> references,
                            std::span<const std::vector<std::string>> outlines,
                            const MetricWeights& weights,
                            const TargetRelationSet& targets) {
  weights.Validate();
  if (generated.empty()) throw ValidationError("nothing to evaluate");
  if (generated.size() != references.size() ||
      generated.size() != outlines.size()) {
    throw ValidationError("generated, references and outlines differ in length");
  }
  std::vector<std::string> cleaned;
  cleaned.reserve(generated.size());
  for (const std::string& text : generated) {
    cleaned.push_back(StripMarkers(text, targets));
  }
  const std::vector<std::u32string> gen = DecodeAll(cleaned);
  const std::vector<std::u32string> ref = DecodeAll(references);

  MetricReport report;
  report.weights = weights;
  BleuStats bleu_total;
  double cover_sum = 0.0;
  double order_sum = 0.0;
  for (std::size_t i = 0; i < generated.size(); ++i) {
    ExampleMetrics example;
    example.bleu = ComputeBleuStats(gen[i], ref[i]);
    example.cover = Coverage(cleaned[i], outlines[i]);
    example.order = OrderScore(cleaned[i], references[i], outlines[i]);
    bleu_total += example.bleu;
    cover_sum += example.cover;
    order_sum += example.order.score;
    report.per_example.push_back(std::move(example));
  }
  const auto count = static_cast<double>(generated.size());
  report.scores.b1 = BleuFromStats(bleu_total, 1);
  report.scores.b2 = BleuFromStats(bleu_total, 2);
  const DistinctResult d1 = Distinct(cleaned, 1);
  const DistinctResult d2 = Distinct(cleaned, 2);
  report.scores.d1 = d1.score;
  report.scores.d2 = d2.score;
  report.d1_degenerate = d1.degenerate;
  report.d2_degenerate = d2.degenerate;
  report.scores.cover = cover_sum / count;
  report.scores.order = order_sum / count;
  report.overall = Overall(report.scores, weights);
  return report;
}

double RoundTo2(double value) { return std::round(value * 100.0) / 100.0; }

nlohmann::ordered_json ReportToJson(const MetricReport& report,
                                    std::span<const std::string> ids) {
  nlohmann::ordered_json json;
  const MetricScores& s = report.scores;
  json["b1"] = RoundTo2(s.b1);
  json["b2"] = RoundTo2(s.b2);
  json["d1"] = RoundTo2(s.d1);
  json["d2"] = RoundTo2(s.d2);
  json["cover"] = RoundTo2(s.cover);
  json["order"] = RoundTo2(s.order);
  json["overall"] = RoundTo2(report.overall);
  json["weights"] = report.weights.AsArray();
  json["flags"] = {{"d1_degenerate", report.d1_degenerate},
                   {"d2_degenerate", report.d2_degenerate}};
  nlohmann::ordered_json examples = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.per_example.size(); ++i) {
    const ExampleMetrics& e = report.per_example[i];
    nlohmann::ordered_json entry;
    if (i < ids.size()) entry["id"] = ids[i];
    entry["cover"] = RoundTo2(e.cover);
    entry["order"] = RoundTo2(e.order.score);
    entry["order_pairs"] = e.order.pairs;
    entry["order_inversions"] = e.order.inversions;
    entry["order_degenerate"] = e.order.degenerate;
    entry["bleu_matches"] = e.bleu.matches;
    entry["bleu_totals"] = e.bleu.totals;
    entry["candidate_length"] = e.bleu.candidate_length;
    entry["reference_length"] = e.bleu.reference_length;
    examples.push_back(std::move(entry));
  }
  json["per_example"] = std::move(examples);
  return json;
}

void PrintReportTable(const MetricReport& report, std::ostream& out) {
  const MetricScores& s = report.scores;
  const double values[] = {s.b1,    s.b2,    s.d1,          s.d2,
                           s.cover, s.order, report.overall};
  out << "   B-1     B-2     D-1     D-2   cover   order Overall\n";
  char buffer[16];
  for (double value : values) {
    std::snprintf(buffer, sizeof(buffer), "%7.2f ", RoundTo2(value));
    out << buffer;
  }
  out << '\n';
}

}  // namespace outgen
