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

#include "syntagraph/boundary.hpp"

#include <string>

#include "syntagraph/error.hpp"

namespace syntagraph {
namespace {

// Non-decreasing, starts at 0, steps by at most 1: equivalent to being
// surjective onto 0..max with every group non-empty.
void check_runs(const std::vector<std::size_t>& v, const char* name) {
  if (v.empty()) throw AlignmentError(std::string(name) + " is empty");
  if (v.front() != 0) {
    throw AlignmentError(std::string(name) + " must start at index 0");
  }
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1]) {
      throw AlignmentError(std::string(name) + " decreases at position " +
                           std::to_string(i));
    }
    if (v[i] > v[i - 1] + 1) {
      throw AlignmentError(std::string(name) + " skips group " +
                           std::to_string(v[i - 1] + 1) + " at position " +
                           std::to_string(i) + " (a unit with no members)");
    }
  }
}

std::vector<std::size_t> expand_counts(const std::vector<std::size_t>& counts,
                                       const char* name) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < counts.size(); ++g) {
    if (counts[g] == 0) {
      throw AlignmentError(std::string(name) + ": group " + std::to_string(g) +
                           " has zero members");
    }
    out.insert(out.end(), counts[g], g);
  }
  return out;
}

}  // namespace

std::size_t BoundaryMap::num_words() const noexcept {
  return word_of_phoneme.empty() ? 0 : word_of_phoneme.back() + 1;
}

std::size_t BoundaryMap::num_chars() const noexcept {
  return word_of_char.size();
}

std::size_t BoundaryMap::num_units() const noexcept {
  return language == Language::Chinese ? num_chars() : num_words();
}

const std::vector<std::size_t>& BoundaryMap::unit_of_phoneme() const noexcept {
  return language == Language::Chinese ? char_of_phoneme : word_of_phoneme;
}

void validate_boundary(const BoundaryMap& b) {
  check_runs(b.word_of_phoneme, "word_of_phoneme");
  if (b.language == Language::English) {
    if (!b.char_of_phoneme.empty() || !b.word_of_char.empty()) {
      throw AlignmentError("English boundary maps carry no character level");
    }
    return;
  }
  check_runs(b.char_of_phoneme, "char_of_phoneme");
  check_runs(b.word_of_char, "word_of_char");
  if (b.char_of_phoneme.size() != b.word_of_phoneme.size()) {
    throw AlignmentError("char_of_phoneme has " +
                         std::to_string(b.char_of_phoneme.size()) +
                         " entries but there are " +
                         std::to_string(b.word_of_phoneme.size()) + " phonemes");
  }
  if (b.char_of_phoneme.back() + 1 != b.word_of_char.size()) {
    throw AlignmentError("char_of_phoneme covers " +
                         std::to_string(b.char_of_phoneme.back() + 1) +
                         " characters but word_of_char lists " +
                         std::to_string(b.word_of_char.size()));
  }
  for (std::size_t i = 0; i < b.word_of_phoneme.size(); ++i) {
    if (b.word_of_char[b.char_of_phoneme[i]] != b.word_of_phoneme[i]) {
      throw AlignmentError("phoneme " + std::to_string(i) +
                           ": word_of_char[char_of_phoneme] != word_of_phoneme");
    }
  }
}

std::vector<std::size_t> group_sizes(const std::vector<std::size_t>& group_of) {
  std::vector<std::size_t> sizes(group_of.empty() ? 0 : group_of.back() + 1, 0);
  for (std::size_t g : group_of) ++sizes[g];
  return sizes;
}

BoundaryMap english_boundary(const std::vector<std::size_t>& phonemes_per_word) {
  BoundaryMap b;
  b.language = Language::English;
  b.word_of_phoneme = expand_counts(phonemes_per_word, "phonemes_per_word");
  return b;
}

BoundaryMap chinese_boundary(const std::vector<std::size_t>& phonemes_per_char,
                             const std::vector<std::size_t>& chars_per_word) {
  BoundaryMap b;
  b.language = Language::Chinese;
  b.char_of_phoneme = expand_counts(phonemes_per_char, "phonemes_per_char");
  b.word_of_char = expand_counts(chars_per_word, "chars_per_word");
  if (b.word_of_char.size() != phonemes_per_char.size()) {
    throw AlignmentError("chars_per_word sums to " +
                         std::to_string(b.word_of_char.size()) + " but " +
                         std::to_string(phonemes_per_char.size()) +
                         " characters have phoneme counts");
  }
  b.word_of_phoneme.reserve(b.char_of_phoneme.size());
  for (std::size_t c : b.char_of_phoneme) b.word_of_phoneme.push_back(b.word_of_char[c]);
  return b;
}

nlohmann::ordered_json boundary_to_json(const BoundaryMap& b) {
  nlohmann::ordered_json j;
  j["language"] = std::string(language_code(b.language));
  j["word_of_phoneme"] = b.word_of_phoneme;
  if (b.language == Language::Chinese) {
    j["char_of_phoneme"] = b.char_of_phoneme;
    j["word_of_char"] = b.word_of_char;
  }
  return j;
}

BoundaryMap boundary_from_json(const nlohmann::ordered_json& j) {
  BoundaryMap b;
  try {
    b.language = language_from_code(j.at("language").get<std::string>());
    b.word_of_phoneme = j.at("word_of_phoneme").get<std::vector<std::size_t>>();
    if (b.language == Language::Chinese) {
      if (!j.contains("char_of_phoneme") || !j.contains("word_of_char")) {
        throw AlignmentError(
            "Chinese boundary needs char_of_phoneme and word_of_char");
      }
      b.char_of_phoneme = j.at("char_of_phoneme").get<std::vector<std::size_t>>();
      b.word_of_char = j.at("word_of_char").get<std::vector<std::size_t>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad boundary JSON: ") + e.what());
  }
  validate_boundary(b);
  return b;
}

}  // namespace syntagraph
