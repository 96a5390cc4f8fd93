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

#include "outgen/dep_tagger.h"

#include <algorithm>
#include <string>

#include "jsonl.h"

namespace outgen {

LabelAliases DefaultLabelAliases() { return {{"obj", "dobj"}}; }

std::string_view DependencyTagger::Canonical(std::string_view relation) const {
  const auto it = aliases_.find(relation);
  return it == aliases_.end() ? relation : std::string_view(it->second);
}

std::vector<DependencyArc> DependencyTagger::SelectTargets(
    std::span<const DependencyArc> arcs) const {
  std::vector<DependencyArc> selected;
  for (const DependencyArc& arc : arcs) {
    const std::string_view label = Canonical(arc.relation);
    if (!targets_.Contains(label)) continue;
    DependencyArc copy = arc;
    copy.relation = std::string(label);
    selected.push_back(std::move(copy));
  }
  std::stable_sort(selected.begin(), selected.end(),
                   [](const DependencyArc& a, const DependencyArc& b) {
                     return a.dependent_index < b.dependent_index;
                   });
  return selected;
}

TaggedStory DependencyTagger::Tag(const ParsedStory& story) const {
  TaggedStory tagged;
  tagged.example_id = story.example_id;
  // Untagged segments are buffered into one literal run so that escaping
  // sees markers-in-text that straddle segment boundaries.
  std::string pending;
  auto flush = [&](bool marker_follows) {
    tagged.text.append(EscapeLiteral(pending, marker_follows, targets_));
    pending.clear();
  };
  for (const ParsedSentence& sentence : story.sentences) {
    std::vector<const DependencyArc*> arc_of(sentence.segments.size(), nullptr);
    for (const DependencyArc& arc : sentence.arcs) {
      if (arc.dependent_index < arc_of.size()) {
        arc_of[arc.dependent_index] = &arc;
      }
    }
    for (std::size_t i = 0; i < sentence.segments.size(); ++i) {
      pending.append(sentence.segments[i].text);
      if (arc_of[i] == nullptr) continue;
      const std::string_view label = Canonical(arc_of[i]->relation);
      if (!targets_.Contains(label)) continue;
      flush(/*marker_follows=*/true);
      tagged.text.append(MarkerFor(label));
      ++tagged.marker_count;
    }
  }
  flush(/*marker_follows=*/false);
  return tagged;
}

std::map<std::string, std::size_t> DependencyTagger::CountByRelation(
    std::string_view tagged) const {
  std::map<std::string, std::size_t> counts;
  for (const std::string& label : targets_.labels()) counts[label] = 0;
  for (const MarkerPiece& piece : SplitMarkerPieces(tagged, targets_)) {
    if (piece.kind == MarkerPiece::Kind::kMarker) ++counts[piece.label];
  }
  return counts;
}

void WriteTaggedStories(std::span<const TaggedStory> stories,
                        std::ostream& out) {
  for (const TaggedStory& story : stories) {
    internal::OrderedJson record;
    record["id"] = story.example_id;
    record["tagged_story"] = story.text;
    record["marker_count"] = story.marker_count;
    internal::WriteJsonLine(out, record);
  }
}

void WriteTaggedStories(std::span<const TaggedStory> stories,
                        const std::filesystem::path& path) {
  std::ofstream out = internal::OpenForWrite(path);
  WriteTaggedStories(stories, out);
}

std::vector<TaggedStory> LoadTaggedStories(const std::filesystem::path& path) {
  std::ifstream in = internal::OpenForRead(path);
  std::vector<TaggedStory> stories;
  auto fail = [&](std::size_t line_number, const std::string& message) {
    throw ValidationError(path.string() + ":" + std::to_string(line_number) +
                          ": " + message);
  };
  internal::ForEachJsonLine(
      in,
      [&](std::size_t line_number, const nlohmann::json& record) {
        TaggedStory story;
        try {
          story.example_id = internal::RequireString(record, "id");
          story.text = internal::RequireString(record, "tagged_story");
        } catch (const ValidationError& e) {
          fail(line_number, e.what());
        }
        const auto count = record.find("marker_count");
        if (count == record.end() || !count->is_number_unsigned()) {
          fail(line_number, "field \"marker_count\" must be a count");
        }
        story.marker_count = count->get<std::size_t>();
        stories.push_back(std::move(story));
      },
      [&](std::size_t line_number, const std::string& message) -> bool {
        fail(line_number, message);
        return false;
      });
  return stories;
}

}  // namespace outgen
