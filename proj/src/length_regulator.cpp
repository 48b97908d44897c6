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

#include "syntagraph/length_regulator.hpp"

#include <algorithm>
#include <string>

#include "syntagraph/error.hpp"

namespace syntagraph {
namespace {

void check_counts(const Tensor& rows, std::span<const std::size_t> counts,
                  const char* what) {
  if (rows.rank() != 2 || rows.rows() != counts.size()) {
    throw ShapeError(std::string(what) + ": " + std::to_string(counts.size()) +
                     " counts for rows of shape " + shape_to_string(rows.shape()));
  }
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) {
      throw ValidationError(std::string(what) + ": count " + std::to_string(k) +
                            " is zero");
    }
  }
}

std::size_t total(std::span<const std::size_t> counts) {
  std::size_t t = 0;
  for (std::size_t c : counts) t += c;
  return t;
}

}  // namespace

void validate_durations(const DurationTable& d) {
  if (d.phonemes_per_word.size() != d.frames_per_word.size()) {
    throw AlignmentError("duration table lists " +
                         std::to_string(d.phonemes_per_word.size()) +
                         " phoneme counts but " +
                         std::to_string(d.frames_per_word.size()) + " frame counts");
  }
  if (d.phonemes_per_word.empty()) throw AlignmentError("duration table is empty");
  const auto zero = [](std::size_t c) { return c == 0; };
  if (std::any_of(d.phonemes_per_word.begin(), d.phonemes_per_word.end(), zero) ||
      std::any_of(d.frames_per_word.begin(), d.frames_per_word.end(), zero)) {
    throw ValidationError("duration counts must all be >= 1");
  }
}

DurationTable durations_from_boundary(const BoundaryMap& boundary,
                                      std::vector<std::size_t> frames_per_word) {
  DurationTable d{group_sizes(boundary.word_of_phoneme), std::move(frames_per_word)};
  validate_durations(d);
  return d;
}

nlohmann::ordered_json durations_to_json(const DurationTable& d) {
  nlohmann::ordered_json j;
  j["phonemes_per_word"] = d.phonemes_per_word;
  j["frames_per_word"] = d.frames_per_word;
  return j;
}

DurationTable durations_from_json(const nlohmann::ordered_json& j) {
  DurationTable d;
  try {
    d.phonemes_per_word = j.at("phonemes_per_word").get<std::vector<std::size_t>>();
    d.frames_per_word = j.at("frames_per_word").get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad duration JSON: ") + e.what());
  }
  validate_durations(d);
  return d;
}

Tensor expand_rows(const Tensor& rows, std::span<const std::size_t> counts) {
  check_counts(rows, counts, "expand_rows");
  const std::size_t d = rows.cols();
  Tensor out({total(counts), d});
  std::size_t r = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const auto src = rows.row(k);
    for (std::size_t rep = 0; rep < counts[k]; ++rep, ++r) {
      std::copy(src.begin(), src.end(), out.row(r).begin());
    }
  }
  return out;
}

Tensor expand_rows_backward(const Tensor& dexpanded,
                            std::span<const std::size_t> counts) {
  if (dexpanded.rank() != 2 || dexpanded.rows() != total(counts)) {
    throw ShapeError("expand_rows_backward: counts sum to " +
                     std::to_string(total(counts)) + " for a gradient of shape " +
                     shape_to_string(dexpanded.shape()));
  }
  Tensor out({counts.size(), dexpanded.cols()});
  std::size_t r = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    auto dst = out.row(k);
    for (std::size_t rep = 0; rep < counts[k]; ++rep, ++r) {
      const auto src = dexpanded.row(r);
      for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += src[c];
    }
  }
  return out;
}

void block_mean(const Tensor& rows, std::size_t first, std::size_t count,
                std::span<double> out) {
  const auto base = rows.row(first);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t r = first; r < first + count; ++r) {
    const auto src = rows.row(r);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += src[c] - base[c];
  }
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] = base[c] + out[c] / static_cast<double>(count);
  }
}

Tensor pool_rows(const Tensor& rows, std::span<const std::size_t> counts) {
  if (rows.rank() != 2 || rows.rows() != total(counts)) {
    throw ShapeError("pool_rows: counts sum to " + std::to_string(total(counts)) +
                     " for rows of shape " + shape_to_string(rows.shape()));
  }
  Tensor out({counts.size(), rows.cols()});
  std::size_t first = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) throw AlignmentError("pool_rows: empty group " + std::to_string(k));
    block_mean(rows, first, counts[k], out.row(k));
    first += counts[k];
  }
  return out;
}

Tensor expand_to_phoneme(const Tensor& word_enc, const DurationTable& durations) {
  validate_durations(durations);
  return expand_rows(word_enc, durations.phonemes_per_word);
}

Tensor expand_to_frame(const Tensor& word_enc, const DurationTable& durations) {
  validate_durations(durations);
  return expand_rows(word_enc, durations.frames_per_word);
}

Tensor chars_to_words(const Tensor& char_enc, const BoundaryMap& boundary) {
  if (boundary.language != Language::Chinese) {
    throw AlignmentError("chars_to_words needs a Chinese boundary map");
  }
  if (char_enc.rank() != 2 || char_enc.rows() != boundary.num_chars()) {
    throw ShapeError("chars_to_words: " + std::to_string(boundary.num_chars()) +
                     " characters but encoding has shape " +
                     shape_to_string(char_enc.shape()));
  }
  return pool_rows(char_enc, group_sizes(boundary.word_of_char));
}

}  // namespace syntagraph
