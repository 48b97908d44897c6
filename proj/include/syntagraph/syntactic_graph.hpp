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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "syntagraph/boundary.hpp"
#include "syntagraph/dependency_tree.hpp"

namespace syntagraph {

enum class EdgeType : std::uint8_t {
  DepForward,    // head -> dependent, and BOS -> first / last -> EOS
  DepReverse,    // the reversed twin of a DepForward edge
  IntraForward,  // character -> next character inside a Chinese word
  IntraReverse,
};

inline constexpr std::array<EdgeType, 4> kAllEdgeTypes = {
    EdgeType::DepForward, EdgeType::DepReverse, EdgeType::IntraForward,
    EdgeType::IntraReverse};

// "DF", "DR", "IF", "IR"
std::string_view edge_type_code(EdgeType t);
EdgeType edge_type_from_code(std::string_view code);
bool is_reverse(EdgeType t);
EdgeType reverse_of(EdgeType t);

// Edge types a graph of the given language may contain.
std::vector<EdgeType> edge_types_for(Language lang);

enum class NodeRole : std::uint8_t { Bos, Eos, Unit };

// "BOS", "EOS", "U"
std::string_view role_code(NodeRole r);

struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  EdgeType type = EdgeType::DepForward;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Heterogeneous directed graph over sentinel and unit nodes. Unit nodes are
// words (English) or characters (Chinese). `unit_index` lists, for each Unit
// node in ascending node-id order, its row in the pooled-encoding sequence.
struct SyntacticGraph {
  std::vector<NodeRole> roles;
  std::vector<std::size_t> unit_index;
  std::vector<Edge> edges;

  std::size_t num_nodes() const noexcept { return roles.size(); }
  std::size_t num_units() const noexcept { return unit_index.size(); }

  friend bool operator==(const SyntacticGraph&, const SyntacticGraph&) = default;
};

// Node id of every pooled row: node_of_unit(g)[j] is the node whose
// unit_index is j.
std::vector<std::size_t> node_of_unit(const SyntacticGraph& g);

// Structural checks shared by single and merged graphs: unit_index is a
// permutation, endpoints in range, no self-loops or duplicate edges, and the
// forward/reverse pairing is a bijection. Throws ValidationError.
void validate_graph_structure(const SyntacticGraph& g);
// validate_graph_structure plus exactly one BOS and one EOS.
void validate_graph(const SyntacticGraph& g);

// Treating every edge as undirected.
bool is_connected(const SyntacticGraph& g);

// BOS = node 0, words 1..n in sentence order, EOS = n + 1. For every non-root
// word w with head p: p -> w (DepForward) and w -> p (DepReverse). The
// sentinels attach to the first and last words with a DepForward edge in
// sentence order (BOS -> first, last -> EOS) and its DepReverse twin.
SyntacticGraph build_english_graph(const DependencyTree& tree,
                                   const BoundaryMap& boundary);

// Same layout over characters. Dependency edges join the first characters of
// head and dependent words; each word's characters form an IntraForward
// chain c1 -> c2 -> ... with IntraReverse twins. BOS attaches to the first
// character of the first word and EOS to the last character of the last word.
SyntacticGraph build_chinese_graph(const DependencyTree& tree,
                                   const BoundaryMap& boundary);

// Dispatches on tree.language (which must match boundary.language).
SyntacticGraph build_graph(const DependencyTree& tree, const BoundaryMap& boundary);

// {"num_nodes", "roles", "unit_index", "edges": [[src, dst, "DF"], ...]}
nlohmann::ordered_json graph_to_json(const SyntacticGraph& g);
// Validates with validate_graph_structure; extra keys are ignored.
SyntacticGraph graph_from_json(const nlohmann::ordered_json& j);

}  // namespace syntagraph
