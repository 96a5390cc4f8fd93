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

#include "outgen/markers.h"

#include <string>

#include "outgen/errors.h"

namespace outgen {
namespace {

constexpr std::size_t kMaxLabelLength = 64;

bool IsLabelChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ':' ||
         c == '_';
}

// Length in bytes of a target marker starting at `pos`, or 0.
std::size_t MarkerLengthAt(std::string_view text, std::size_t pos,
                           const TargetRelationSet& targets,
                           std::string_view* label) {
  if (pos >= text.size() || text[pos] != '<') return 0;
  std::size_t end = pos + 1;
  while (end < text.size() && end - pos <= kMaxLabelLength + 1 &&
         IsLabelChar(text[end])) {
    ++end;
  }
  if (end >= text.size() || text[end] != '>' || end == pos + 1) return 0;
  const std::string_view candidate = text.substr(pos + 1, end - pos - 1);
  if (!targets.Contains(candidate)) return 0;
  if (label != nullptr) *label = candidate;
  return end - pos + 1;
}

std::size_t BackslashRun(std::string_view text, std::size_t pos) {
  std::size_t end = pos;
  while (end < text.size() && text[end] == '\\') ++end;
  return end - pos;
}

std::size_t Utf8SequenceLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 1;
}

}  // namespace

TargetRelationSet::TargetRelationSet()
    : TargetRelationSet({"nsubj", "root", "dobj", "pobj"}) {}

TargetRelationSet::TargetRelationSet(
    std::initializer_list<std::string_view> labels) {
  for (std::string_view label : labels) Add(label);
  if (labels_.empty()) throw ValidationError("target relation set is empty");
}

TargetRelationSet::TargetRelationSet(const std::vector<std::string>& labels) {
  for (const std::string& label : labels) Add(label);
  if (labels_.empty()) throw ValidationError("target relation set is empty");
}

void TargetRelationSet::Add(std::string_view label) {
  if (label.empty() || label.size() > kMaxLabelLength) {
    throw ValidationError("invalid relation label '" + std::string(label) +
                          "'");
  }
  for (char c : label) {
    if (!IsLabelChar(c)) {
      throw ValidationError("relation label '" + std::string(label) +
                            "' is not lowercase ASCII");
    }
  }
  labels_.emplace(label);
}

bool TargetRelationSet::Contains(std::string_view label) const {
  return labels_.find(label) != labels_.end();
}

std::string MarkerFor(std::string_view label) {
  std::string marker;
  marker.reserve(label.size() + 2);
  marker.push_back('<');
  marker.append(label);
  marker.push_back('>');
  return marker;
}

std::vector<MarkerPiece> SplitMarkerPieces(std::string_view tagged,
                                           const TargetRelationSet& targets) {
  std::vector<MarkerPiece> pieces;
  std::size_t pos = 0;
  while (pos < tagged.size()) {
    const std::size_t run = BackslashRun(tagged, pos);
    std::string_view label;
    const std::size_t marker_len =
        MarkerLengthAt(tagged, pos + run, targets, &label);
    if (marker_len == 0) {
      if (run > 0) {
        for (std::size_t k = 0; k < run; ++k) {
          pieces.push_back({MarkerPiece::Kind::kChar, tagged.substr(pos + k, 1),
                            "\\", ""});
        }
        pos += run;
        continue;
      }
      const std::size_t len = std::min(
          Utf8SequenceLength(static_cast<unsigned char>(tagged[pos])),
          tagged.size() - pos);
      const std::string_view ch = tagged.substr(pos, len);
      pieces.push_back({MarkerPiece::Kind::kChar, ch, std::string(ch), ""});
      pos += len;
      continue;
    }
    if (run % 2 == 1) {
      std::string decoded(run / 2, '\\');
      decoded.append(MarkerFor(label));
      pieces.push_back({MarkerPiece::Kind::kEscaped,
                        tagged.substr(pos, run + marker_len),
                        std::move(decoded), std::string(label)});
      pos += run + marker_len;
      continue;
    }
    for (std::size_t k = 0; k < run; k += 2) {
      pieces.push_back(
          {MarkerPiece::Kind::kChar, tagged.substr(pos + k, 2), "\\", ""});
    }
    pos += run;
    pieces.push_back({MarkerPiece::Kind::kMarker,
                      tagged.substr(pos, marker_len), "", std::string(label)});
    pos += marker_len;
  }
  return pieces;
}

std::string StripMarkers(std::string_view tagged,
                         const TargetRelationSet& targets) {
  std::string out;
  out.reserve(tagged.size());
  for (const MarkerPiece& piece : SplitMarkerPieces(tagged, targets)) {
    out.append(piece.decoded);
  }
  return out;
}

std::size_t CountMarkers(std::string_view tagged,
                         const TargetRelationSet& targets) {
  std::size_t count = 0;
  for (const MarkerPiece& piece : SplitMarkerPieces(tagged, targets)) {
    if (piece.kind == MarkerPiece::Kind::kMarker) ++count;
  }
  return count;
}

std::string EscapeLiteral(std::string_view raw, bool marker_follows,
                          const TargetRelationSet& targets) {
  std::string out;
  out.reserve(raw.size());
  std::size_t pos = 0;
  while (pos < raw.size()) {
    const std::size_t run = BackslashRun(raw, pos);
    const std::size_t marker_len = MarkerLengthAt(raw, pos + run, targets,
                                                  nullptr);
    if (marker_len > 0) {
      out.append(2 * run + 1, '\\');
      out.append(raw.substr(pos + run, marker_len));
      pos += run + marker_len;
    } else if (run > 0) {
      const bool trailing = pos + run == raw.size();
      out.append(trailing && marker_follows ? 2 * run : run, '\\');
      pos += run;
    } else {
      out.push_back(raw[pos]);
      ++pos;
    }
  }
  return out;
}

std::size_t CountUnits(std::string_view tagged,
                       const TargetRelationSet& targets) {
  return SplitMarkerPieces(tagged, targets).size();
}

std::string TruncateUnits(std::string_view tagged, std::size_t max_units,
                          const TargetRelationSet& targets) {
  const std::vector<MarkerPiece> pieces = SplitMarkerPieces(tagged, targets);
  if (pieces.size() <= max_units) return std::string(tagged);
  if (max_units == 0) return {};
  const MarkerPiece& last = pieces[max_units - 1];
  const std::size_t end =
      static_cast<std::size_t>(last.source.data() - tagged.data()) +
      last.source.size();
  return std::string(tagged.substr(0, end));
}

}  // namespace outgen
