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

#ifndef OUTGEN_DEP_TAGGER_H_
#define OUTGEN_DEP_TAGGER_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "outgen/corpus.h"
#include "outgen/markers.h"

namespace outgen {

// Parser label -> canonical label, applied before target filtering.
using LabelAliases = std::map<std::string, std::string, std::less<>>;

// obj -> dobj.
LabelAliases DefaultLabelAliases();

struct TaggedStory {
  std::string example_id;
  std::string text;
  std::size_t marker_count = 0;

  bool operator==(const TaggedStory&) const = default;
};

class DependencyTagger {
 public:
  DependencyTagger() : DependencyTagger(TargetRelationSet()) {}
  explicit DependencyTagger(TargetRelationSet targets,
                            LabelAliases aliases = DefaultLabelAliases())
      : targets_(std::move(targets)), aliases_(std::move(aliases)) {}

  const TargetRelationSet& targets() const { return targets_; }

  // Label after aliasing.
  std::string_view Canonical(std::string_view relation) const;

  // The arcs whose (aliased) relation is a target, ordered by dependent.
  // Returned arcs carry the canonical label.
  std::vector<DependencyArc> SelectTargets(
      std::span<const DependencyArc> arcs) const;

  // Appends `<relation>` directly after every segment whose relation is a
  // target. Untagged text is escaped so StripTags inverts this exactly.
  TaggedStory Tag(const ParsedStory& story) const;

  std::string StripTags(std::string_view text) const {
    return StripMarkers(text, targets_);
  }

  // Per-label marker totals of a tagged text.
  std::map<std::string, std::size_t> CountByRelation(
      std::string_view tagged) const;

 private:
  TargetRelationSet targets_;
  LabelAliases aliases_;
};

// Tagged-corpus JSONL: `id`, `tagged_story`, `marker_count`.
void WriteTaggedStories(std::span<const TaggedStory> stories,
                        std::ostream& out);
void WriteTaggedStories(std::span<const TaggedStory> stories,
                        const std::filesystem::path& path);
std::vector<TaggedStory> LoadTaggedStories(const std::filesystem::path& path);

}  // namespace outgen

#endif  // OUTGEN_DEP_TAGGER_H_
