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

#include "syntagraph/verify/generators.hpp"

#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace syntagraph::verify {
namespace {

std::size_t draw(Rng& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

}  // namespace

DependencyTree random_tree(Rng& rng, std::size_t num_words, Language lang) {
  std::vector<int> order(num_words);
  std::iota(order.begin(), order.end(), 1);
  for (std::size_t i = num_words; i > 1; --i) std::swap(order[i - 1], order[draw(rng, 0, i - 1)]);

  DependencyTree tree;
  tree.language = lang;
  for (std::size_t i = 0; i < num_words; ++i) {
    tree.words.push_back({static_cast<int>(i + 1), "w" + std::to_string(i + 1), 0});
  }
  for (std::size_t i = 1; i < num_words; ++i) {
    tree.words[order[i] - 1].head = order[draw(rng, 0, i - 1)];
  }
  return tree;
}

Sentence random_english_sentence(Rng& rng, std::size_t max_words) {
  const std::size_t n = draw(rng, 1, max_words);
  Sentence s{random_tree(rng, n, Language::English), {}};
  std::vector<std::size_t> phonemes(n);
  for (auto& p : phonemes) p = draw(rng, 1, 5);
  s.boundary = english_boundary(phonemes);
  return s;
}

Sentence random_chinese_sentence(Rng& rng, std::size_t max_words, std::size_t max_chars) {
  const std::size_t n = draw(rng, 1, max_words);
  Sentence s{random_tree(rng, n, Language::Chinese), {}};
  std::vector<std::size_t> chars(n);
  std::vector<std::size_t> phonemes;
  for (auto& k : chars) {
    k = draw(rng, 1, max_chars);
    for (std::size_t c = 0; c < k; ++c) phonemes.push_back(draw(rng, 1, 3));
  }
  s.boundary = chinese_boundary(phonemes, chars);
  return s;
}

Sentence random_sentence(Rng& rng, Language lang, std::size_t max_words) {
  return lang == Language::English ? random_english_sentence(rng, max_words)
                                   : random_chinese_sentence(rng, max_words);
}

Tensor random_tensor(const Shape& shape, Rng& rng, double lo, double hi) {
  Tensor t(shape);
  for (double& v : t.data()) v = rng.uniform(lo, hi);
  return t;
}

}  // namespace syntagraph::verify
