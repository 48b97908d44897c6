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

#include <algorithm>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "syntagraph/batching.hpp"
#include "syntagraph/boundary.hpp"
#include "syntagraph/dependency_tree.hpp"
#include "syntagraph/dot.hpp"
#include "syntagraph/error.hpp"
#include "syntagraph/syntactic_graph.hpp"
#include "syntagraph/verify/fixtures.hpp"
#include "syntagraph/verify/generators.hpp"
#include "syntagraph/verify/reference.hpp"

namespace syntagraph {
namespace {

std::string line(int id, const std::string& form, const std::string& head) {
  return std::to_string(id) + "\t" + form + "\t_\t_\t_\t_\t" + head + "\t_\t_\t_\n";
}

std::size_t count_type(const SyntacticGraph& g, EdgeType t) {
  return static_cast<std::size_t>(
      std::count_if(g.edges.begin(), g.edges.end(), [t](const Edge& e) { return e.type == t; }));
}

DependencyTree two_word_tree(Language lang) {
  DependencyTree t;
  t.language = lang;
  t.words = {{1, "the", 2}, {2, "book", 0}};
  return t;
}

TEST(ConllTest, SingleWordRoot) {
  const auto trees = parse_conllu(line(1, "Hello", "0") + "\n", Language::English);
  ASSERT_EQ(trees.size(), 1u);
  ASSERT_EQ(trees[0].size(), 1u);
  EXPECT_EQ(trees[0].words[0].head, 0);
  EXPECT_EQ(trees[0].words[0].form, "Hello");
}

TEST(ConllTest, TwoWords) {
  const auto trees = parse_conllu(line(1, "the", "2") + line(2, "book", "0"), Language::English);
  ASSERT_EQ(trees.size(), 1u);
  EXPECT_EQ(trees[0], two_word_tree(Language::English));
}

TEST(ConllTest, CommentsAndSeveralSentences) {
  const std::string text = "# sent_id = 1\n" + line(1, "a", "0") + "\n# sent_id = 2\n" +
                           line(1, "b", "2") + line(2, "c", "0") + "\n";
  const auto trees = parse_conllu(text, Language::English);
  ASSERT_EQ(trees.size(), 2u);
  EXPECT_EQ(trees[1].size(), 2u);
}

TEST(ConllTest, PrintedTypesRoundTrip) {
  const auto trees = parse_conllu(verify::kPrintedTypesConllu, Language::English);
  ASSERT_EQ(trees.size(), 1u);
  EXPECT_EQ(trees[0].size(), 7u);
  EXPECT_EQ(trees[0].words[2].form, "book");
  EXPECT_EQ(trees[0].words[2].head, 0);
  EXPECT_EQ(trees[0].words[6].head, 4);
  EXPECT_EQ(parse_conllu(to_conllu(trees), Language::English), trees);
}

TEST(ConllTest, MalformedHeadReportsLine) {
  const std::string text = "# comment\n" + line(1, "a", "0") + line(2, "b", "x");
  try {
    parse_conllu(text, Language::English);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(ConllTest, WrongColumnCount) {
  EXPECT_THROW(parse_conllu("1\tword\t0\n", Language::English), ParseError);
}

TEST(ConllTest, MultiwordAndEmptyNodesAreUnsupported) {
  const std::string mwt = "1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n" + line(1, "de", "0") +
                          line(2, "el", "1");
  EXPECT_THROW(parse_conllu(mwt, Language::English), UnsupportedFeatureError);
  const std::string empty = line(1, "a", "0") + "1.1\tb\t_\t_\t_\t_\t_\t_\t_\t_\n";
  EXPECT_THROW(parse_conllu(empty, Language::English), UnsupportedFeatureError);
}

TEST(ConllTest, CyclesAndBadTreesAreValidationErrors) {
  // 1 -> 2 -> 3 -> 2 with 1 as root is cyclic.
  const std::string cyclic = line(1, "a", "0") + line(2, "b", "3") + line(3, "c", "2");
  EXPECT_THROW(parse_conllu(cyclic, Language::English), ValidationError);
  const std::string two_roots = line(1, "a", "0") + line(2, "b", "0");
  EXPECT_THROW(parse_conllu(two_roots, Language::English), ValidationError);
  const std::string gap = line(1, "a", "0") + line(3, "b", "1");
  EXPECT_THROW(parse_conllu(gap, Language::English), ValidationError);
  const std::string self = line(1, "a", "0") + line(2, "b", "2");
  EXPECT_THROW(parse_conllu(self, Language::English), ValidationError);
  const std::string out_of_range = line(1, "a", "0") + line(2, "b", "9");
  EXPECT_THROW(parse_conllu(out_of_range, Language::English), ValidationError);
}

TEST(ConllTest, ValidationErrorNamesSentence) {
  const std::string text = line(1, "a", "0") + "\n" + line(1, "b", "0") + line(2, "c", "0");
  try {
    parse_conllu(text, Language::English);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("sentence 2"), std::string::npos) << e.what();
  }
}

TEST(BoundaryTest, EnglishGroups) {
  const BoundaryMap b = english_boundary({2, 1, 3});
  EXPECT_EQ(b.word_of_phoneme, (std::vector<std::size_t>{0, 0, 1, 2, 2, 2}));
  EXPECT_EQ(b.num_words(), 3u);
  EXPECT_EQ(b.num_units(), 3u);
  EXPECT_EQ(group_sizes(b.word_of_phoneme), (std::vector<std::size_t>{2, 1, 3}));
}

TEST(BoundaryTest, ChineseComposition) {
  const BoundaryMap b = chinese_boundary({2, 1, 2}, {1, 2});
  EXPECT_EQ(b.char_of_phoneme, (std::vector<std::size_t>{0, 0, 1, 2, 2}));
  EXPECT_EQ(b.word_of_char, (std::vector<std::size_t>{0, 1, 1}));
  EXPECT_EQ(b.word_of_phoneme, (std::vector<std::size_t>{0, 0, 1, 1, 1}));
  EXPECT_EQ(b.num_units(), 3u);
  BoundaryMap broken = b;
  broken.word_of_phoneme[2] = 0;
  EXPECT_THROW(validate_boundary(broken), AlignmentError);
}

TEST(BoundaryTest, RejectsGapsAndDecreases) {
  BoundaryMap b;
  b.word_of_phoneme = {0, 2};
  EXPECT_THROW(validate_boundary(b), AlignmentError);
  b.word_of_phoneme = {0, 1, 0};
  EXPECT_THROW(validate_boundary(b), AlignmentError);
  b.word_of_phoneme = {1, 1};
  EXPECT_THROW(validate_boundary(b), AlignmentError);
  EXPECT_THROW(english_boundary({1, 0, 2}), AlignmentError);
}

TEST(BoundaryTest, JsonRoundTrip) {
  const BoundaryMap b = chinese_boundary({2, 1, 2}, {1, 2});
  EXPECT_EQ(boundary_from_json(boundary_to_json(b)), b);
  const BoundaryMap e = english_boundary({1, 4});
  EXPECT_EQ(boundary_from_json(boundary_to_json(e)), e);
}

TEST(EnglishGraphTest, SingleWord) {
  DependencyTree t;
  t.words = {{1, "hi", 0}};
  const SyntacticGraph g = build_english_graph(t, english_boundary({2}));
  validate_graph(g);
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.edges.size(), 4u);
  const std::vector<Edge> expected = {{0, 1, EdgeType::DepForward},
                                      {1, 0, EdgeType::DepReverse},
                                      {1, 2, EdgeType::DepForward},
                                      {2, 1, EdgeType::DepReverse}};
  EXPECT_EQ(g.edges, expected);
}

TEST(EnglishGraphTest, TwoWords) {
  const SyntacticGraph g =
      build_english_graph(two_word_tree(Language::English), english_boundary({2, 3}));
  validate_graph(g);
  EXPECT_EQ(g.num_nodes(), 4u);
  EXPECT_EQ(g.edges.size(), 6u);
  EXPECT_NE(std::find(g.edges.begin(), g.edges.end(), Edge{2, 1, EdgeType::DepForward}),
            g.edges.end());
  EXPECT_NE(std::find(g.edges.begin(), g.edges.end(), Edge{1, 2, EdgeType::DepReverse}),
            g.edges.end());
}

TEST(EnglishGraphTest, PrintedTypesCounts) {
  const auto trees = parse_conllu(verify::kPrintedTypesConllu, Language::English);
  const SyntacticGraph g = build_graph(trees[0], english_boundary(verify::kPrintedTypesPhonemesPerWord));
  validate_graph(g);
  EXPECT_EQ(g.num_nodes(), 9u);
  EXPECT_EQ(g.edges.size(), 16u);
  EXPECT_EQ(count_type(g, EdgeType::DepForward), 8u);
  EXPECT_EQ(count_type(g, EdgeType::DepReverse), 8u);
  // "types" (word 7, node 7) hangs off "printed" (word 4, node 4).
  EXPECT_NE(std::find(g.edges.begin(), g.edges.end(), Edge{4, 7, EdgeType::DepForward}),
            g.edges.end());
  EXPECT_TRUE(is_connected(g));
}

TEST(EnglishGraphTest, WordCountMismatchIsAlignmentError) {
  EXPECT_THROW(build_english_graph(two_word_tree(Language::English), english_boundary({1})),
               AlignmentError);
}

TEST(ChineseGraphTest, SingleCharacter) {
  DependencyTree t;
  t.language = Language::Chinese;
  t.words = {{1, "好", 0}};
  const SyntacticGraph g = build_chinese_graph(t, chinese_boundary({2}, {1}));
  validate_graph(g);
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.edges.size(), 4u);
  EXPECT_EQ(count_type(g, EdgeType::IntraForward), 0u);
}

TEST(ChineseGraphTest, TwoTwoCharacterWords) {
  const SyntacticGraph g = build_chinese_graph(two_word_tree(Language::Chinese),
                                               chinese_boundary({1, 2, 2, 1}, {2, 2}));
  validate_graph(g);
  EXPECT_EQ(g.num_nodes(), 6u);
  EXPECT_EQ(g.edges.size(), 10u);
  EXPECT_EQ(count_type(g, EdgeType::IntraForward) + count_type(g, EdgeType::IntraReverse), 4u);
  // Dependency edge joins the first characters: word 2 starts at node 3.
  EXPECT_NE(std::find(g.edges.begin(), g.edges.end(), Edge{3, 1, EdgeType::DepForward}),
            g.edges.end());
  // EOS attaches to the last character of the last word.
  EXPECT_NE(std::find(g.edges.begin(), g.edges.end(), Edge{4, 5, EdgeType::DepForward}),
            g.edges.end());
}

TEST(ChineseGraphTest, MismatchedWordsAreAlignmentErrors) {
  EXPECT_THROW(build_chinese_graph(two_word_tree(Language::Chinese), chinese_boundary({1}, {1})),
               AlignmentError);
  BoundaryMap b = chinese_boundary({1, 1}, {1, 1});
  b.word_of_char = {0, 0};
  EXPECT_THROW(build_chinese_graph(two_word_tree(Language::Chinese), b), AlignmentError);
}

TEST(GraphPropertyTest, CountLawsOnRandomSentences) {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const verify::Sentence en = verify::random_english_sentence(rng, 30);
    const SyntacticGraph ge = build_graph(en.tree, en.boundary);
    validate_graph(ge);
    EXPECT_EQ((verify::GraphCounts{ge.num_nodes(), ge.edges.size()}),
              verify::english_counts(en.tree.size()));
    EXPECT_TRUE(verify::reverse_pairing_bijection(ge));

    const verify::Sentence zh = verify::random_chinese_sentence(rng, 15);
    const SyntacticGraph gz = build_graph(zh.tree, zh.boundary);
    validate_graph(gz);
    EXPECT_EQ((verify::GraphCounts{gz.num_nodes(), gz.edges.size()}),
              verify::chinese_counts(group_sizes(zh.boundary.word_of_char)));
    EXPECT_TRUE(verify::reverse_pairing_bijection(gz));
    EXPECT_TRUE(is_connected(gz));
  }
}

TEST(GraphValidationTest, CatchesBrokenGraphs) {
  const SyntacticGraph good =
      build_english_graph(two_word_tree(Language::English), english_boundary({1, 1}));
  SyntacticGraph g = good;
  g.edges.pop_back();
  EXPECT_THROW(validate_graph(g), ValidationError);
  g = good;
  g.edges.push_back({1, 1, EdgeType::DepForward});
  EXPECT_THROW(validate_graph(g), ValidationError);
  g = good;
  g.edges.push_back(g.edges.front());
  EXPECT_THROW(validate_graph(g), ValidationError);
  g = good;
  g.unit_index = {0, 0};
  EXPECT_THROW(validate_graph(g), ValidationError);
  g = good;
  g.roles.back() = NodeRole::Bos;
  EXPECT_THROW(validate_graph(g), ValidationError);
  g = good;
  g.edges.push_back({0, 9, EdgeType::DepForward});
  EXPECT_THROW(validate_graph(g), ValidationError);
}

TEST(GraphJsonTest, RoundTripAndRejectsBadInput) {
  const SyntacticGraph g = build_chinese_graph(two_word_tree(Language::Chinese),
                                               chinese_boundary({1, 2, 2, 1}, {2, 2}));
  const auto j = graph_to_json(g);
  EXPECT_EQ(graph_from_json(nlohmann::ordered_json::parse(j.dump())), g);
  EXPECT_EQ(j["edges"][0], nlohmann::ordered_json::parse(R"([0, 1, "DF"])"));
  auto bad = j;
  bad["edges"][0][2] = "XX";
  EXPECT_THROW(graph_from_json(bad), Error);
  bad = j;
  bad["num_nodes"] = 3;
  EXPECT_THROW(graph_from_json(bad), Error);
}

TEST(BatchingTest, SingleGraphIsIdentity) {
  const SyntacticGraph g =
      build_english_graph(two_word_tree(Language::English), english_boundary({1, 1}));
  const std::vector<SyntacticGraph> gs = {g};
  const BatchedGraph b = merge_graphs(gs);
  EXPECT_EQ(b.offsets, (std::vector<std::size_t>{0}));
  EXPECT_EQ(b.merged, g);
}

TEST(BatchingTest, SecondGraphShiftedByFirstSize) {
  DependencyTree one;
  one.words = {{1, "a", 0}};
  const SyntacticGraph g3 = build_english_graph(one, english_boundary({1}));
  const SyntacticGraph g4 =
      build_english_graph(two_word_tree(Language::English), english_boundary({1, 1}));
  const std::vector<SyntacticGraph> gs = {g3, g4};
  const BatchedGraph b = merge_graphs(gs);
  validate_batch(b);
  EXPECT_EQ(b.merged.num_nodes(), 7u);
  EXPECT_EQ(b.offsets, (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(b.unit_offsets, (std::vector<std::size_t>{0, 1}));
  for (std::size_t i = 0; i < g4.edges.size(); ++i) {
    const Edge& e = b.merged.edges[g3.edges.size() + i];
    EXPECT_EQ(e.src, g4.edges[i].src + 3);
    EXPECT_EQ(e.dst, g4.edges[i].dst + 3);
    EXPECT_EQ(e.type, g4.edges[i].type);
  }
  EXPECT_EQ(b.merged.unit_index, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(BatchingTest, SplitMergeRoundTrip) {
  Rng rng(22);
  for (int t = 0; t < 50; ++t) {
    std::vector<SyntacticGraph> gs;
    const Language lang = t % 2 ? Language::Chinese : Language::English;
    for (int k = 0; k < 1 + t % 6; ++k) {
      const verify::Sentence s = verify::random_sentence(rng, lang, 8);
      gs.push_back(build_graph(s.tree, s.boundary));
    }
    const BatchedGraph b = merge_graphs(gs);
    validate_batch(b);
    validate_graph_structure(b.merged);
    EXPECT_EQ(split_graphs(b), gs);
  }
  EXPECT_THROW(merge_graphs(std::vector<SyntacticGraph>{}), ValidationError);
}

TEST(BatchingTest, SplitNodeMatrix) {
  DependencyTree one;
  one.words = {{1, "a", 0}};
  const std::vector<SyntacticGraph> gs = {
      build_english_graph(one, english_boundary({1})),
      build_english_graph(two_word_tree(Language::English), english_boundary({1, 1}))};
  const BatchedGraph b = merge_graphs(gs);
  Tensor mat({7, 2});
  for (std::size_t i = 0; i < mat.size(); ++i) mat[i] = static_cast<double>(i);
  const auto parts = split_node_matrix(b, mat);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].rows(), 3u);
  EXPECT_EQ(parts[1].rows(), 4u);
  EXPECT_EQ(parts[1].at(0, 0), 6.0);
  EXPECT_THROW(split_node_matrix(b, Tensor({6, 2})), ShapeError);

  const std::vector<SyntacticGraph> single = {gs[1]};
  const BatchedGraph s = merge_graphs(single);
  Rng rng(23);
  const Tensor m4 = verify::random_tensor({4, 3}, rng);
  EXPECT_EQ(split_node_matrix(s, m4), std::vector<Tensor>{m4});
}

TEST(BatchingTest, ConcatOfSplitIsIdentity) {
  Rng rng(24);
  for (int t = 0; t < 20; ++t) {
    std::vector<SyntacticGraph> gs;
    for (int k = 0; k < 1 + t % 5; ++k) {
      const verify::Sentence s = verify::random_english_sentence(rng, 6);
      gs.push_back(build_graph(s.tree, s.boundary));
    }
    const BatchedGraph b = merge_graphs(gs);
    const Tensor mat = verify::random_tensor({b.merged.num_nodes(), 3}, rng);
    std::vector<Tensor> parts = split_node_matrix(b, mat);
    Tensor joined({mat.rows(), 3});
    std::size_t r = 0;
    for (const auto& p : parts) {
      for (std::size_t i = 0; i < p.rows(); ++i, ++r) {
        for (std::size_t c = 0; c < 3; ++c) joined.at(r, c) = p.at(i, c);
      }
    }
    EXPECT_EQ(joined, mat);
  }
}

TEST(DotTest, SingleWordGraph) {
  DependencyTree t;
  t.words = {{1, "hi", 0}};
  const std::string dot = graph_to_dot(build_english_graph(t, english_boundary({1})));
  const auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto p = dot.find(needle); p != std::string::npos; p = dot.find(needle, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("[label="), 3u);
  EXPECT_EQ(count("style=solid"), 2u);
  EXPECT_EQ(count("style=dashed"), 2u);
  EXPECT_NE(dot.find("label=\"BOS\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"EOS\""), std::string::npos);
}

TEST(DotTest, LabelsAreEscapedAndMustBeNonEmpty) {
  const SyntacticGraph g =
      build_english_graph(two_word_tree(Language::English), english_boundary({1, 1}));
  const std::vector<std::string> quotes = {"say \"hi\"", "x"};
  EXPECT_NE(graph_to_dot(g, quotes).find(R"(label="say \"hi\"")"), std::string::npos);
  const std::vector<std::string> empty = {"", "x"};
  EXPECT_THROW(graph_to_dot(g, empty), ValidationError);
}

}  // namespace
}  // namespace syntagraph
