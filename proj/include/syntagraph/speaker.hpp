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

#include "syntagraph/rng.hpp"
#include "syntagraph/tensor.hpp"

namespace syntagraph {

inline constexpr std::size_t kDefaultSpeakers = 2320;

// Learned per-speaker vectors, [num_speakers x d].
struct SpeakerTable {
  Tensor table;

  std::size_t num_speakers() const { return table.rows(); }
  std::size_t hidden() const { return table.cols(); }
};

SpeakerTable init_speaker_table(std::size_t num_speakers, std::size_t hidden, Rng& rng);

// Row `speaker_id` as a length-d vector. LookupError when out of range.
Tensor speaker_embed(std::size_t speaker_id, const SpeakerTable& table);

// Gradient with respect to the table: `dembedding` in row `speaker_id`,
// zeros elsewhere.
Tensor speaker_embed_backward(std::size_t speaker_id, const Tensor& dembedding,
                              const SpeakerTable& table);

}  // namespace syntagraph
