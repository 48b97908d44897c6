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

#include "syntagraph/speaker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "syntagraph/error.hpp"

namespace syntagraph {
namespace {

void check_id(std::size_t speaker_id, const SpeakerTable& table) {
  if (speaker_id >= table.num_speakers()) {
    throw LookupError("speaker id " + std::to_string(speaker_id) +
                      " out of range [0, " + std::to_string(table.num_speakers()) + ")");
  }
}

}  // namespace

SpeakerTable init_speaker_table(std::size_t num_speakers, std::size_t hidden, Rng& rng) {
  SpeakerTable t{Tensor({num_speakers, hidden})};
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
  for (double& v : t.table.data()) v = rng.uniform(-bound, bound);
  return t;
}

Tensor speaker_embed(std::size_t speaker_id, const SpeakerTable& table) {
  check_id(speaker_id, table);
  const auto row = table.table.row(speaker_id);
  return Tensor({row.size()}, std::vector<double>(row.begin(), row.end()));
}

Tensor speaker_embed_backward(std::size_t speaker_id, const Tensor& dembedding,
                              const SpeakerTable& table) {
  check_id(speaker_id, table);
  if (dembedding.size() != table.hidden()) {
    throw ShapeError("speaker_embed_backward: gradient " +
                     shape_to_string(dembedding.shape()) + " for hidden size " +
                     std::to_string(table.hidden()));
  }
  Tensor grad(table.table.shape());
  std::copy(dembedding.values().begin(), dembedding.values().end(),
            grad.row(speaker_id).begin());
  return grad;
}

}  // namespace syntagraph
