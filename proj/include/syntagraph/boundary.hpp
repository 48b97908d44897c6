// Copyright 2026 The Syntagraph Authors
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

#pragma once

#include <cstddef>
#include <vector>

#include "json.hpp"
#include "syntagraph/dependency_tree.hpp"

namespace syntagraph {

// Alignment of phonemes to words. Chinese maps additionally carry the
// phoneme -> character and character -> word levels, and word_of_phoneme
// must equal their composition.
struct BoundaryMap {
  Language language = Language::English;
  std::vector<std::size_t> word_of_phoneme;
  std::vector<std::size_t> char_of_phoneme;  // Chinese only
  std::vector<std::size_t> word_of_char;     // Chinese only

  std::size_t num_phonemes() const noexcept { return word_of_phoneme.size(); }
  std::size_t num_words() const noexcept;
  std::size_t num_chars() const noexcept;

  // Number of pooled units: words for English, characters for Chinese.
  std::size_t num_units() const noexcept;
  // Pooling group of each phoneme: word_of_phoneme or char_of_phoneme.
  const std::vector<std::size_t>& unit_of_phoneme() const noexcept;

  friend bool operator==(const BoundaryMap&, const BoundaryMap&) = default;
};

// Throws AlignmentError on any broken invariant (non-decreasing, surjective,
// every group non-empty, Chinese composition law).
void validate_boundary(const BoundaryMap& b);

// Sizes of consecutive runs in a validated non-decreasing index array.
std::vector<std::size_t> group_sizes(const std::vector<std::size_t>& group_of);

// Builds a map from per-word phoneme counts (and per-character phoneme counts
// plus per-word character counts for Chinese).
BoundaryMap english_boundary(const std::vector<std::size_t>& phonemes_per_word);
BoundaryMap chinese_boundary(const std::vector<std::size_t>& phonemes_per_char,
                             const std::vector<std::size_t>& chars_per_word);

// {"language": "en"|"zh", "word_of_phoneme": [...],
//  "char_of_phoneme": [...]?, "word_of_char": [...]?}
nlohmann::ordered_json boundary_to_json(const BoundaryMap& b);
BoundaryMap boundary_from_json(const nlohmann::ordered_json& j);

}  // namespace syntagraph
