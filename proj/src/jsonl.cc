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

#include "jsonl.h"

#include <string>

namespace outgen::internal {

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void ForEachJsonLine(
    std::istream& in,
    const std::function<void(std::size_t, const nlohmann::json&)>& fn,
    const std::function<bool(std::size_t, const std::string&)>& on_error) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      if (!on_error(line_number, std::string("malformed JSON: ") + e.what())) {
        return;
      }
      continue;
    }
    if (!record.is_object()) {
      if (!on_error(line_number, "record is not a JSON object")) return;
      continue;
    }
    fn(line_number, record);
  }
  if (in.bad()) throw IoError("read failure");
}

void WriteJsonLine(std::ostream& out, const OrderedJson& record) {
  try {
    out << record.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict)
        << '\n';
  } catch (const nlohmann::json::type_error& e) {
    throw ValidationError(std::string("cannot serialize record: ") + e.what());
  }
  if (!out) throw IoError("write failure");
}

std::string RequireString(const nlohmann::json& record,
                          std::string_view field) {
  const auto it = record.find(std::string(field));
  if (it == record.end()) {
    throw ValidationError("missing field \"" + std::string(field) + "\"");
  }
  if (!it->is_string()) {
    throw ValidationError("field \"" + std::string(field) +
                          "\" is not a string");
  }
  return it->get<std::string>();
}

}  // namespace outgen::internal
