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
#include <span>
#include <vector>

#include "json.hpp"
#include "syntagraph/boundary.hpp"
#include "syntagraph/tensor.hpp"

namespace syntagraph {

// Word-level durations. Every count is >= 1.
struct DurationTable {
  std::vector<std::size_t> phonemes_per_word;
  std::vector<std::size_t> frames_per_word;

  friend bool operator==(const DurationTable&, const DurationTable&) = default;
};

void validate_durations(const DurationTable& d);

// Phoneme counts come from the boundary map; frames are supplied.
DurationTable durations_from_boundary(const BoundaryMap& boundary,
                                      std::vector<std::size_t> frames_per_word);

// {"phonemes_per_word": [...], "frames_per_word": [...]}
nlohmann::ordered_json durations_to_json(const DurationTable& d);
DurationTable durations_from_json(const nlohmann::ordered_json& j);

// Row k of `rows` repeated counts[k] times, in order. ShapeError when the
// number of counts differs from the row count; ValidationError on a 0 count.
Tensor expand_rows(const Tensor& rows, std::span<const std::size_t> counts);
// Gradient of expand_rows: sums each block of repeated rows.
Tensor expand_rows_backward(const Tensor& dexpanded,
                            std::span<const std::size_t> counts);

// Mean of rows [first, first + count) written to `out`, computed as
// first_row + sum(row - first_row) / count so that a block of identical rows
// averages back to that row exactly.
void block_mean(const Tensor& rows, std::size_t first, std::size_t count,
                std::span<double> out);

// Mean of each consecutive block of counts[k] rows; the left inverse of
// expand_rows.
Tensor pool_rows(const Tensor& rows, std::span<const std::size_t> counts);

Tensor expand_to_phoneme(const Tensor& word_enc, const DurationTable& durations);
Tensor expand_to_frame(const Tensor& word_enc, const DurationTable& durations);

// Mean-pools character-level rows to word level following word_of_char.
// Used to bring Chinese character encodings onto the word-level duration grid.
Tensor chars_to_words(const Tensor& char_enc, const BoundaryMap& boundary);

}  // namespace syntagraph
