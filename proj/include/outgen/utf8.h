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

#ifndef OUTGEN_UTF8_H_
#define OUTGEN_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace outgen::utf8 {

// Decodes UTF-8 into Unicode scalar values. Throws ValidationError on
// malformed input (overlong forms, surrogates, truncated sequences).
std::u32string Decode(std::string_view text);

std::string Encode(std::u32string_view text);

// Number of Unicode scalar values in `text`.
std::size_t Length(std::string_view text);

bool IsWhitespace(char32_t c);

// Removes every whitespace scalar (ASCII whitespace, NBSP, U+3000).
std::u32string StripWhitespace(std::u32string_view text);
std::string StripWhitespace(std::string_view text);

}  // namespace outgen::utf8

#endif  // OUTGEN_UTF8_H_
