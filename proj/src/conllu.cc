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

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "jsonl.h"
#include "outgen/errors.h"
#include "outgen/utf8.h"

namespace outgen {
namespace {

constexpr std::size_t kColumnCount = 10;

struct Row {
  std::size_t line_number = 0;
  std::string form;
  std::size_t head = 0;  // CoNLL-U numbering, 0 is ROOT
  std::string deprel;
};

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

bool ParseIndex(std::string_view text, std::size_t* value) {
  if (text.empty()) return false;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string_view Trim(std::string_view text) {
  const std::size_t begin = text.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  const std::size_t end = text.find_last_not_of(" \t");
  return text.substr(begin, end - begin + 1);
}

class ConlluReader {
 public:
  explicit ConlluReader(std::string_view source_name)
      : source_name_(source_name) {}

  void Line(std::string_view line, std::size_t line_number) {
    if (Trim(line).empty()) {
      FlushSentence();
      return;
    }
    if (line.front() == '#') {
      Comment(line.substr(1), line_number);
      return;
    }
    TokenRow(line, line_number);
  }

  std::vector<ParsedStory> Finish(std::size_t line_number) {
    FlushSentence();
    if (!pending_example_id_.empty()) {
      Fail(line_number, "example_id comment without any sentence");
    }
    return std::move(stories_);
  }

 private:
  [[noreturn]] void Fail(std::size_t line_number,
                         const std::string& message) const {
    throw ValidationError(source_name_ + ":" + std::to_string(line_number) +
                          ": " + message);
  }

  void Comment(std::string_view body, std::size_t line_number) {
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) return;
    const std::string_view key = Trim(body.substr(0, eq));
    const std::string_view value = Trim(body.substr(eq + 1));
    if (!rows_.empty()) Fail(line_number, "comment inside a sentence");
    if (key == "example_id") {
      if (value.empty()) Fail(line_number, "empty example_id");
      pending_example_id_ = std::string(value);
    } else if (key == "sent_id") {
      pending_sent_id_ = std::string(value);
      has_sent_id_ = true;
    }
  }

  void TokenRow(std::string_view line, std::size_t line_number) {
    const std::vector<std::string_view> fields = SplitTabs(line);
    if (fields.size() != kColumnCount) {
      Fail(line_number, "expected " + std::to_string(kColumnCount) +
                            " tab-separated columns, found " +
                            std::to_string(fields.size()));
    }
    const std::string_view id = fields[0];
    if (id.find('-') != std::string_view::npos ||
        id.find('.') != std::string_view::npos) {
      return;
    }
    std::size_t index = 0;
    if (!ParseIndex(id, &index) || index != rows_.size() + 1) {
      Fail(line_number, "token ID '" + std::string(id) + "' out of sequence");
    }
    Row row;
    row.line_number = line_number;
    row.form = std::string(fields[1]);
    if (row.form.empty() || row.form == "_") {
      Fail(line_number, "empty FORM");
    }
    if (!ParseIndex(fields[6], &row.head)) {
      Fail(line_number, "HEAD '" + std::string(fields[6]) + "' is not an index");
    }
    row.deprel = std::string(fields[7]);
    if (row.deprel.empty() || row.deprel == "_") {
      Fail(line_number, "empty DEPREL");
    }
    rows_.push_back(std::move(row));
  }

  void FlushSentence() {
    if (rows_.empty()) return;
    const std::size_t first_line = rows_.front().line_number;
    if (!pending_example_id_.empty()) {
      if (!seen_ids_.insert(pending_example_id_).second) {
        Fail(first_line,
             "duplicate example_id \"" + pending_example_id_ + "\"");
      }
      stories_.push_back(ParsedStory{std::move(pending_example_id_), {}});
      pending_example_id_.clear();
    }
    if (stories_.empty()) Fail(first_line, "missing example_id comment");
    if (!has_sent_id_) Fail(first_line, "missing sent_id comment");

    ParsedSentence sentence;
    sentence.sent_id = std::move(pending_sent_id_);
    const std::size_t n = rows_.size();
    for (std::size_t i = 0; i < n; ++i) {
      Row& row = rows_[i];
      if (row.head > n) {
        Fail(row.line_number, "HEAD index " + std::to_string(row.head) +
                                  " out of range (sentence has " +
                                  std::to_string(n) + " tokens)");
      }
      try {
        sentence.segments.push_back(WordSegment::FromText(std::move(row.form)));
      } catch (const ValidationError& e) {
        Fail(row.line_number, e.what());
      }
      DependencyArc arc;
      arc.dependent_index = i;
      if (row.head != 0) arc.head_index = row.head - 1;
      arc.relation = std::move(row.deprel);
      sentence.arcs.push_back(std::move(arc));
    }
    ParsedStory probe{stories_.back().example_id, {sentence}};
    try {
      ValidateParsedStory(probe);
    } catch (const ValidationError& e) {
      Fail(first_line, e.what());
    }
    stories_.back().sentences.push_back(std::move(sentence));
    rows_.clear();
    pending_sent_id_.clear();
    has_sent_id_ = false;
  }

  std::string source_name_;
  std::vector<ParsedStory> stories_;
  std::unordered_set<std::string> seen_ids_;
  std::vector<Row> rows_;
  std::string pending_example_id_;
  std::string pending_sent_id_;
  bool has_sent_id_ = false;
};

}  // namespace

void ValidateParsedStory(const ParsedStory& story) {
  for (std::size_t s = 0; s < story.sentences.size(); ++s) {
    const ParsedSentence& sentence = story.sentences[s];
    const std::string where = "story \"" + story.example_id + "\" sentence " +
                              std::to_string(s + 1) + ": ";
    const std::size_t n = sentence.segments.size();
    if (n == 0) throw ValidationError(where + "no segments");
    if (sentence.arcs.size() != n) {
      throw ValidationError(where + "expected one arc per segment");
    }
    std::size_t roots = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const DependencyArc& arc = sentence.arcs[i];
      if (sentence.segments[i].text.empty()) {
        throw ValidationError(where + "empty segment");
      }
      if (arc.dependent_index != i) {
        throw ValidationError(where + "arcs out of dependent order");
      }
      if (arc.head_index && *arc.head_index >= n) {
        throw ValidationError(where + "HEAD index out of range");
      }
      const bool is_root = !arc.head_index.has_value();
      if (is_root != (arc.relation == "root")) {
        throw ValidationError(where + "token " + std::to_string(i + 1) +
                              ": relation 'root' must coincide with HEAD 0");
      }
      roots += is_root ? 1 : 0;
    }
    if (roots != 1) {
      throw ValidationError(where + "expected exactly one root, found " +
                            std::to_string(roots));
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t node = i;
      std::size_t steps = 0;
      while (sentence.arcs[node].head_index) {
        node = *sentence.arcs[node].head_index;
        if (++steps > n) {
          throw ValidationError(where + "cyclic head chain through token " +
                                std::to_string(i + 1));
        }
      }
    }
  }
}

void CheckReconstruction(const ParsedStory& parse, std::string_view story) {
  const std::u32string expected = utf8::StripWhitespace(utf8::Decode(story));
  const std::u32string actual =
      utf8::StripWhitespace(utf8::Decode(parse.Text()));
  if (expected == actual) return;
  std::size_t offset = 0;
  while (offset < expected.size() && offset < actual.size() &&
         expected[offset] == actual[offset]) {
    ++offset;
  }
  throw ValidationError("story \"" + parse.example_id +
                        "\": reconstruction mismatch at character offset " +
                        std::to_string(offset));
}

std::vector<ParsedStory> ReadConllu(std::istream& in,
                                    std::span<const OutlineExample> examples,
                                    std::string_view source_name) {
  ConlluReader reader(source_name);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    reader.Line(line, line_number);
  }
  if (in.bad()) throw IoError("read failure on " + std::string(source_name));
  std::vector<ParsedStory> stories = reader.Finish(line_number + 1);

  if (!examples.empty()) {
    std::unordered_map<std::string_view, const OutlineExample*> by_id;
    for (const OutlineExample& example : examples) by_id[example.id] = &example;
    for (const ParsedStory& story : stories) {
      const auto it = by_id.find(story.example_id);
      if (it != by_id.end()) CheckReconstruction(story, it->second->story);
    }
  }
  return stories;
}

std::vector<ParsedStory> LoadConllu(const std::filesystem::path& path,
                                    std::span<const OutlineExample> examples) {
  std::ifstream in = internal::OpenForRead(path);
  return ReadConllu(in, examples, path.string());
}

void WriteConllu(std::span<const ParsedStory> stories, std::ostream& out) {
  for (const ParsedStory& story : stories) {
    for (std::size_t s = 0; s < story.sentences.size(); ++s) {
      const ParsedSentence& sentence = story.sentences[s];
      if (s == 0) out << "# example_id = " << story.example_id << '\n';
      out << "# sent_id = " << sentence.sent_id << '\n';
      out << "# text = ";
      for (const WordSegment& segment : sentence.segments) out << segment.text;
      out << '\n';
      for (std::size_t i = 0; i < sentence.segments.size(); ++i) {
        const DependencyArc& arc = sentence.arcs[i];
        out << (i + 1) << '\t' << sentence.segments[i].text << "\t_\t_\t_\t_\t"
            << (arc.head_index ? *arc.head_index + 1 : 0) << '\t'
            << arc.relation << "\t_\t_\n";
      }
      out << '\n';
    }
  }
  if (!out) throw IoError("write failure");
}

void WriteConllu(std::span<const ParsedStory> stories,
                 const std::filesystem::path& path) {
  std::ofstream out = internal::OpenForWrite(path);
  WriteConllu(stories, out);
}

}  // namespace outgen
