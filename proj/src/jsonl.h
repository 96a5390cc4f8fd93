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

// Line-delimited JSON helpers shared by the readers and writers.

#ifndef OUTGEN_SRC_JSONL_H_
#define OUTGEN_SRC_JSONL_H_

#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "outgen/errors.h"

namespace outgen::internal {

using OrderedJson = nlohmann::ordered_json;

std::ifstream OpenForRead(const std::filesystem::path& path);
std::ofstream OpenForWrite(const std::filesystem::path& path);

// Calls `fn(line_number, record)` for every non-blank line. Parse failures
// are reported through `on_error(line_number, message)`; when that returns
// false reading stops.
void ForEachJsonLine(
    std::istream& in,
    const std::function<void(std::size_t, const nlohmann::json&)>& fn,
    const std::function<bool(std::size_t, const std::string&)>& on_error);

// Single line, UTF-8 kept verbatim, invalid UTF-8 rejected.
void WriteJsonLine(std::ostream& out, const OrderedJson& record);

std::string RequireString(const nlohmann::json& record, std::string_view field);

}  // namespace outgen::internal

#endif  // OUTGEN_SRC_JSONL_H_
