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

#include "syntagraph/boundary.hpp"
#include "syntagraph/dependency_tree.hpp"
#include "syntagraph/rng.hpp"
#include "syntagraph/tensor.hpp"

namespace syntagraph::verify {

// Uniformly random attachment order: a random word is the root and every
// later word in a random permutation picks a head among the earlier ones.
DependencyTree random_tree(Rng& rng, std::size_t num_words, Language lang);

struct Sentence {
  DependencyTree tree;
  BoundaryMap boundary;
};

// 1..max_words words, 1..5 phonemes each.
Sentence random_english_sentence(Rng& rng, std::size_t max_words);
// 1..max_words words of 1..max_chars characters, 1..3 phonemes per character.
Sentence random_chinese_sentence(Rng& rng, std::size_t max_words, std::size_t max_chars = 4);
Sentence random_sentence(Rng& rng, Language lang, std::size_t max_words);

// Elements ~ U(lo, hi) in row-major order.
Tensor random_tensor(const Shape& shape, Rng& rng, double lo = -1.0, double hi = 1.0);

}  // namespace syntagraph::verify
