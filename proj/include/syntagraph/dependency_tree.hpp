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
#include <string>
#include <string_view>
#include <vector>

namespace syntagraph {

enum class Language { English, Chinese };

// "en" / "zh"
std::string_view language_code(Language lang);
Language language_from_code(std::string_view code);

struct Word {
  int id = 0;        // 1-based position in the sentence
  std::string form;
  int head = 0;      // 0 marks the root

  friend bool operator==(const Word&, const Word&) = default;
};

// One parsed sentence. Invariants (checked by validate_tree): ids are exactly
// 1..n, a single root, every other head in [1, n] and distinct from the
// word's own id, and no cycles.
struct DependencyTree {
  std::vector<Word> words;
  Language language = Language::English;

  std::size_t size() const noexcept { return words.size(); }
  friend bool operator==(const DependencyTree&, const DependencyTree&) = default;
};

// Throws ValidationError naming the violated invariant.
void validate_tree(const DependencyTree& tree);

// Reads ID, FORM and HEAD (columns 1, 2, 7) of a CoNLL-U document. Comment
// lines are skipped and blank lines separate sentences.
//  - ParseError (with line number) for malformed lines,
//  - UnsupportedFeatureError for multiword tokens ("3-4") and empty nodes
//    ("3.1"),
//  - ValidationError ("sentence k: ...") when a tree violates an invariant.
std::vector<DependencyTree> parse_conllu(std::string_view text, Language lang);

// Writes 10-column CoNLL-U with "_" in the columns this library ignores and a
// blank line after every sentence. parse_conllu(to_conllu(t)) == t.
std::string to_conllu(std::span<const DependencyTree> trees);

}  // namespace syntagraph
