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

#ifndef OUTGEN_MARKERS_H_
#define OUTGEN_MARKERS_H_

#include <cstddef>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace outgen {

// The dependency relations that receive inline markers. Labels are
// non-empty lowercase ASCII (letters, digits, ':' and '_').
class TargetRelationSet {
 public:
  // nsubj, root, dobj, pobj.
  TargetRelationSet();
  explicit TargetRelationSet(std::initializer_list<std::string_view> labels);
  explicit TargetRelationSet(const std::vector<std::string>& labels);

  bool Contains(std::string_view label) const;
  const std::set<std::string, std::less<>>& labels() const { return labels_; }

  bool operator==(const TargetRelationSet&) const = default;

 private:
  void Add(std::string_view label);

  std::set<std::string, std::less<>> labels_;
};

std::string MarkerFor(std::string_view label);

// Tagged text is read as a stream of pieces:
//   kMarker   `<label>` for a target label; decodes to nothing.
//   kEscaped  a backslash run of odd length 2k+1 followed by `<label>`;
//             decodes to k backslashes plus the literal `<label>`.
//   kChar     anything else, one Unicode scalar (or, for a backslash run
//             of even length in front of a marker, one `\\` pair).
struct MarkerPiece {
  enum class Kind { kChar, kMarker, kEscaped };
  Kind kind;
  std::string_view source;  // bytes of the tagged text this piece spans
  std::string decoded;      // untagged text this piece stands for
  std::string label;        // set for kMarker and kEscaped
};

std::vector<MarkerPiece> SplitMarkerPieces(std::string_view tagged,
                                           const TargetRelationSet& targets);

// Removes every marker for a target label and undoes escaping. Everything
// else (including `<html>` or markers for non-target labels) is kept.
std::string StripMarkers(std::string_view tagged,
                         const TargetRelationSet& targets);

std::size_t CountMarkers(std::string_view tagged,
                         const TargetRelationSet& targets);

// Escapes a run of untagged text so that StripMarkers recovers it exactly.
// `marker_follows` must be true when the next thing written after `raw` is
// a marker, since a trailing backslash run would otherwise bind to it.
std::string EscapeLiteral(std::string_view raw, bool marker_follows,
                          const TargetRelationSet& targets);

// Length in training units: one per piece, so a marker is a single unit.
std::size_t CountUnits(std::string_view tagged,
                       const TargetRelationSet& targets);

// Longest prefix of at most `max_units` units. Never splits a piece.
std::string TruncateUnits(std::string_view tagged, std::size_t max_units,
                          const TargetRelationSet& targets);

}  // namespace outgen

#endif  // OUTGEN_MARKERS_H_
