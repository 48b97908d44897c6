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

#include "syntagraph/dependency_tree.hpp"

#include <charconv>
#include <sstream>

#include "syntagraph/error.hpp"

namespace syntagraph {
namespace {

constexpr std::size_t kConlluColumns = 10;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

std::string_view language_code(Language lang) {
  return lang == Language::English ? "en" : "zh";
}

Language language_from_code(std::string_view code) {
  if (code == "en") return Language::English;
  if (code == "zh") return Language::Chinese;
  throw ConfigError("unknown language \"" + std::string(code) +
                    "\" (expected en or zh)");
}

void validate_tree(const DependencyTree& tree) {
  const int n = static_cast<int>(tree.words.size());
  if (n == 0) throw ValidationError("tree has no words");
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Word& w = tree.words[static_cast<std::size_t>(i)];
    if (w.id != i + 1) {
      throw ValidationError("word ids must be 1..n without gaps; position " +
                            std::to_string(i + 1) + " has id " +
                            std::to_string(w.id));
    }
    if (w.form.empty()) {
      throw ValidationError("word " + std::to_string(w.id) + " has an empty form");
    }
    if (w.head == 0) {
      ++roots;
    } else if (w.head < 0 || w.head > n) {
      throw ValidationError("word " + std::to_string(w.id) + " has head " +
                            std::to_string(w.head) + " outside [0, " +
                            std::to_string(n) + "]");
    } else if (w.head == w.id) {
      throw ValidationError("word " + std::to_string(w.id) + " is its own head");
    }
  }
  if (roots != 1) {
    throw ValidationError("tree must have exactly one root, found " +
                          std::to_string(roots));
  }
  // Walk up from every word; a path longer than n means a cycle.
  for (int i = 0; i < n; ++i) {
    int cur = i + 1;
    int steps = 0;
    while (cur != 0) {
      if (++steps > n) {
        throw ValidationError("head pointers from word " + std::to_string(i + 1) +
                              " never reach the root (cycle)");
      }
      cur = tree.words[static_cast<std::size_t>(cur - 1)].head;
    }
  }
}

std::vector<DependencyTree> parse_conllu(std::string_view text, Language lang) {
  std::vector<DependencyTree> trees;
  DependencyTree current{{}, lang};
  std::size_t line_no = 0;

  auto finish_sentence = [&] {
    if (current.words.empty()) return;
    try {
      validate_tree(current);
    } catch (const ValidationError& e) {
      throw ValidationError("sentence " + std::to_string(trees.size() + 1) +
                            " (ending before line " + std::to_string(line_no) +
                            "): " + e.what());
    }
    trees.push_back(std::move(current));
    current = DependencyTree{{}, lang};
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (is_blank(line)) {
      finish_sentence();
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '#') continue;

    const auto fields = split_tabs(line);
    if (fields.size() != kConlluColumns) {
      throw ParseError(line_no, "expected " + std::to_string(kConlluColumns) +
                                    " tab-separated columns, found " +
                                    std::to_string(fields.size()));
    }
    const std::string_view id_field = fields[0];
    if (id_field.find('-') != std::string_view::npos) {
      throw UnsupportedFeatureError(
          line_no, "multiword token range \"" + std::string(id_field) +
                       "\" is not supported");
    }
    if (id_field.find('.') != std::string_view::npos) {
      throw UnsupportedFeatureError(
          line_no, "empty node \"" + std::string(id_field) + "\" is not supported");
    }
    Word w;
    if (!parse_int(id_field, w.id) || w.id < 1) {
      throw ParseError(line_no, "ID column \"" + std::string(id_field) +
                                    "\" is not a positive integer");
    }
    if (fields[1].empty()) throw ParseError(line_no, "FORM column is empty");
    w.form = std::string(fields[1]);
    if (!parse_int(fields[6], w.head) || w.head < 0) {
      throw ParseError(line_no, "HEAD column \"" + std::string(fields[6]) +
                                    "\" is not a non-negative integer");
    }
    current.words.push_back(std::move(w));
    if (end == text.size()) break;
  }
  finish_sentence();
  return trees;
}

std::string to_conllu(std::span<const DependencyTree> trees) {
  std::ostringstream os;
  for (const DependencyTree& tree : trees) {
    for (const Word& w : tree.words) {
      os << w.id << '\t' << w.form << "\t_\t_\t_\t_\t" << w.head << "\t_\t_\t_\n";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace syntagraph
