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

#include "syntagraph/dot.hpp"

#include <sstream>

#include "syntagraph/error.hpp"

namespace syntagraph {
namespace {

std::string dot_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string graph_to_dot(const SyntacticGraph& g,
                         std::span<const std::string> unit_labels) {
  if (!unit_labels.empty() && unit_labels.size() != g.num_units()) {
    throw ValidationError("graph_to_dot: " + std::to_string(unit_labels.size()) +
                          " labels for " + std::to_string(g.num_units()) + " units");
  }
  std::ostringstream os;
  os << "digraph syntactic_graph {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=ellipse];\n";
  std::size_t unit_cursor = 0;
  for (std::size_t node = 0; node < g.num_nodes(); ++node) {
    std::string label;
    switch (g.roles[node]) {
      case NodeRole::Bos: label = "BOS"; break;
      case NodeRole::Eos: label = "EOS"; break;
      case NodeRole::Unit: {
        const std::size_t idx = g.unit_index.at(unit_cursor++);
        label = unit_labels.empty() ? "u" + std::to_string(idx) : unit_labels[idx];
        break;
      }
    }
    if (label.empty()) {
      throw ValidationError("graph_to_dot: node " + std::to_string(node) +
                            " has an empty label");
    }
    os << "  n" << node << " [label=" << dot_string(label) << "];\n";
  }
  for (const Edge& e : g.edges) {
    const bool intra =
        e.type == EdgeType::IntraForward || e.type == EdgeType::IntraReverse;
    os << "  n" << e.src << " -> n" << e.dst << " [style="
       << (is_reverse(e.type) ? "dashed" : "solid")
       << ", color=" << (intra ? "green" : "black") << ", label="
       << edge_type_code(e.type) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace syntagraph
