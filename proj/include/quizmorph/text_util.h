// Copyright 2026 The Quizmorph Authors.
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

#ifndef QUIZMORPH_TEXT_UTIL_H_
#define QUIZMORPH_TEXT_UTIL_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quizmorph {

// ASCII-only case folding; bytes >= 0x80 pass through untouched.
std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);

// Trims and collapses every run of whitespace into a single space.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);

std::string join(std::span<const std::string> parts, std::string_view sep);

// True when the token carries no letters or digits: ",", "...", "\"", "“".
bool is_punctuation(std::string_view token);

// A token counts as a word when it is not pure punctuation.
inline bool is_word(std::string_view token) {
  return !token.empty() && !is_punctuation(token);
}

std::size_t count_words(std::span<const std::string> tokens);

bool starts_upper(std::string_view s);
std::string capitalize_first(std::string_view s);
std::string lowercase_first(std::string_view s);

// Copies the initial capitalization of `model` onto `word`.
std::string match_capitalization(std::string_view model, std::string_view word);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view data,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);

}  // namespace quizmorph

#endif  // QUIZMORPH_TEXT_UTIL_H_
