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

#include "syntagraph/syntactic_graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include "syntagraph/error.hpp"

namespace syntagraph {
namespace {

using EdgeKey = std::tuple<std::size_t, std::size_t, EdgeType>;

void add_pair(std::vector<Edge>& edges, std::size_t from, std::size_t to,
              EdgeType forward) {
  edges.push_back({from, to, forward});
  edges.push_back({to, from, reverse_of(forward)});
}

void check_tree_alignment(const DependencyTree& tree, const BoundaryMap& boundary,
                          Language expected) {
  if (tree.language != expected) {
    throw AlignmentError(std::string("tree language is ") +
                         std::string(language_code(tree.language)) + ", expected " +
                         std::string(language_code(expected)));
  }
  if (boundary.language != expected) {
    throw AlignmentError(std::string("boundary language is ") +
                         std::string(language_code(boundary.language)) +
                         ", expected " + std::string(language_code(expected)));
  }
  validate_tree(tree);
  validate_boundary(boundary);
  if (boundary.num_words() != tree.size()) {
    throw AlignmentError("tree has " + std::to_string(tree.size()) +
                         " words but the boundary map covers " +
                         std::to_string(boundary.num_words()));
  }
}

}  // namespace

std::string_view edge_type_code(EdgeType t) {
  switch (t) {
    case EdgeType::DepForward: return "DF";
    case EdgeType::DepReverse: return "DR";
    case EdgeType::IntraForward: return "IF";
    case EdgeType::IntraReverse: return "IR";
  }
  return "?";
}

EdgeType edge_type_from_code(std::string_view code) {
  for (EdgeType t : kAllEdgeTypes) {
    if (edge_type_code(t) == code) return t;
  }
  throw ParseError(0, "unknown edge type \"" + std::string(code) + "\"");
}

bool is_reverse(EdgeType t) {
  return t == EdgeType::DepReverse || t == EdgeType::IntraReverse;
}

EdgeType reverse_of(EdgeType t) {
  switch (t) {
    case EdgeType::DepForward: return EdgeType::DepReverse;
    case EdgeType::DepReverse: return EdgeType::DepForward;
    case EdgeType::IntraForward: return EdgeType::IntraReverse;
    case EdgeType::IntraReverse: return EdgeType::IntraForward;
  }
  return t;
}

std::vector<EdgeType> edge_types_for(Language lang) {
  if (lang == Language::English) return {EdgeType::DepForward, EdgeType::DepReverse};
  return {kAllEdgeTypes.begin(), kAllEdgeTypes.end()};
}

std::string_view role_code(NodeRole r) {
  switch (r) {
    case NodeRole::Bos: return "BOS";
    case NodeRole::Eos: return "EOS";
    case NodeRole::Unit: return "U";
  }
  return "?";
}

std::vector<std::size_t> node_of_unit(const SyntacticGraph& g) {
  std::vector<std::size_t> out(g.num_units());
  std::size_t k = 0;
  for (std::size_t node = 0; node < g.num_nodes(); ++node) {
    if (g.roles[node] != NodeRole::Unit) continue;
    if (k >= g.unit_index.size() || g.unit_index[k] >= out.size()) {
      throw ValidationError("unit_index does not match the Unit nodes");
    }
    out[g.unit_index[k++]] = node;
  }
  return out;
}

void validate_graph_structure(const SyntacticGraph& g) {
  const std::size_t n = g.num_nodes();
  const auto units = static_cast<std::size_t>(
      std::count(g.roles.begin(), g.roles.end(), NodeRole::Unit));
  if (units != g.unit_index.size()) {
    throw ValidationError("graph has " + std::to_string(units) +
                          " Unit nodes but unit_index lists " +
                          std::to_string(g.unit_index.size()));
  }
  std::vector<bool> seen(units, false);
  for (std::size_t idx : g.unit_index) {
    if (idx >= units || seen[idx]) {
      throw ValidationError("unit_index must be a permutation of 0.." +
                            std::to_string(units == 0 ? 0 : units - 1));
    }
    seen[idx] = true;
  }
  std::set<EdgeKey> keys;
  for (const Edge& e : g.edges) {
    if (e.src >= n || e.dst >= n) {
      throw ValidationError("edge " + std::to_string(e.src) + "->" +
                            std::to_string(e.dst) + " has an endpoint outside [0, " +
                            std::to_string(n) + ")");
    }
    if (e.src == e.dst) {
      throw ValidationError("self-loop at node " + std::to_string(e.src));
    }
    if (!keys.emplace(e.src, e.dst, e.type).second) {
      throw ValidationError("duplicate edge " + std::to_string(e.src) + "->" +
                            std::to_string(e.dst) + " " +
                            std::string(edge_type_code(e.type)));
    }
  }
  // With duplicates excluded, "every edge has its twin" is a bijection.
  for (const Edge& e : g.edges) {
    if (!keys.count({e.dst, e.src, reverse_of(e.type)})) {
      throw ValidationError("edge " + std::to_string(e.src) + "->" +
                            std::to_string(e.dst) + " " +
                            std::string(edge_type_code(e.type)) +
                            " has no reversed twin");
    }
  }
}

void validate_graph(const SyntacticGraph& g) {
  const auto bos = std::count(g.roles.begin(), g.roles.end(), NodeRole::Bos);
  const auto eos = std::count(g.roles.begin(), g.roles.end(), NodeRole::Eos);
  if (bos != 1 || eos != 1) {
    throw ValidationError("graph must have exactly one BOS and one EOS, found " +
                          std::to_string(bos) + " and " + std::to_string(eos));
  }
  validate_graph_structure(g);
}

bool is_connected(const SyntacticGraph& g) {
  const std::size_t n = g.num_nodes();
  if (n == 0) return true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const Edge& e : g.edges) {
    const std::size_t a = find(e.src), b = find(e.dst);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

SyntacticGraph build_english_graph(const DependencyTree& tree,
                                   const BoundaryMap& boundary) {
  check_tree_alignment(tree, boundary, Language::English);
  const std::size_t n = tree.size();
  const std::size_t bos = 0, eos = n + 1;

  SyntacticGraph g;
  g.roles.assign(n + 2, NodeRole::Unit);
  g.roles[bos] = NodeRole::Bos;
  g.roles[eos] = NodeRole::Eos;
  g.unit_index.resize(n);
  std::iota(g.unit_index.begin(), g.unit_index.end(), std::size_t{0});

  g.edges.reserve(2 * (n - 1) + 4);
  add_pair(g.edges, bos, 1, EdgeType::DepForward);
  for (const Word& w : tree.words) {
    if (w.head == 0) continue;
    add_pair(g.edges, static_cast<std::size_t>(w.head),
             static_cast<std::size_t>(w.id), EdgeType::DepForward);
  }
  add_pair(g.edges, n, eos, EdgeType::DepForward);
  return g;
}

SyntacticGraph build_chinese_graph(const DependencyTree& tree,
                                   const BoundaryMap& boundary) {
  check_tree_alignment(tree, boundary, Language::Chinese);
  const std::size_t n = tree.size();
  const std::size_t chars = boundary.num_chars();
  const std::size_t bos = 0, eos = chars + 1;

  // Node of character c is c + 1.
  std::vector<std::size_t> first_char(n, chars), last_char(n, 0);
  for (std::size_t c = 0; c < chars; ++c) {
    const std::size_t w = boundary.word_of_char[c];
    first_char[w] = std::min(first_char[w], c);
    last_char[w] = std::max(last_char[w], c);
  }
  for (std::size_t w = 0; w < n; ++w) {
    if (first_char[w] == chars) {
      throw AlignmentError("word " + std::to_string(w + 1) + " has no characters");
    }
  }

  SyntacticGraph g;
  g.roles.assign(chars + 2, NodeRole::Unit);
  g.roles[bos] = NodeRole::Bos;
  g.roles[eos] = NodeRole::Eos;
  g.unit_index.resize(chars);
  std::iota(g.unit_index.begin(), g.unit_index.end(), std::size_t{0});

  g.edges.reserve(2 * (n - 1) + 2 * (chars - n) + 4);
  add_pair(g.edges, bos, first_char.front() + 1, EdgeType::DepForward);
  for (const Word& w : tree.words) {
    if (w.head == 0) continue;
    const std::size_t head_word = static_cast<std::size_t>(w.head) - 1;
    const std::size_t dep_word = static_cast<std::size_t>(w.id) - 1;
    add_pair(g.edges, first_char[head_word] + 1, first_char[dep_word] + 1,
             EdgeType::DepForward);
  }
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t c = first_char[w]; c < last_char[w]; ++c) {
      add_pair(g.edges, c + 1, c + 2, EdgeType::IntraForward);
    }
  }
  add_pair(g.edges, last_char.back() + 1, eos, EdgeType::DepForward);
  return g;
}

SyntacticGraph build_graph(const DependencyTree& tree, const BoundaryMap& boundary) {
  return tree.language == Language::English ? build_english_graph(tree, boundary)
                                            : build_chinese_graph(tree, boundary);
}

nlohmann::ordered_json graph_to_json(const SyntacticGraph& g) {
  nlohmann::ordered_json j;
  j["num_nodes"] = g.num_nodes();
  auto roles = nlohmann::ordered_json::array();
  for (NodeRole r : g.roles) roles.push_back(std::string(role_code(r)));
  j["roles"] = std::move(roles);
  j["unit_index"] = g.unit_index;
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges) {
    edges.push_back({e.src, e.dst, std::string(edge_type_code(e.type))});
  }
  j["edges"] = std::move(edges);
  return j;
}

SyntacticGraph graph_from_json(const nlohmann::ordered_json& j) {
  SyntacticGraph g;
  try {
    const auto num_nodes = j.at("num_nodes").get<std::size_t>();
    for (const auto& r : j.at("roles")) {
      const auto code = r.get<std::string>();
      if (code == "BOS") g.roles.push_back(NodeRole::Bos);
      else if (code == "EOS") g.roles.push_back(NodeRole::Eos);
      else if (code == "U") g.roles.push_back(NodeRole::Unit);
      else throw ParseError(0, "unknown node role \"" + code + "\"");
    }
    if (g.roles.size() != num_nodes) {
      throw ValidationError("num_nodes is " + std::to_string(num_nodes) +
                            " but roles lists " + std::to_string(g.roles.size()));
    }
    g.unit_index = j.at("unit_index").get<std::vector<std::size_t>>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw ParseError(0, "edges must be [src, dst, type] triples");
      }
      g.edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                         edge_type_from_code(e[2].get<std::string>())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad graph JSON: ") + e.what());
  }
  validate_graph_structure(g);
  return g;
}

}  // namespace syntagraph
