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

#include <span>
#include <string>

#include "syntagraph/syntactic_graph.hpp"

namespace syntagraph {

// Graphviz rendering: forward edges solid, reversed edges dashed, dependency
// edges black and intra-word edges green. Nodes are emitted in id order and
// edges in storage order. `unit_labels`, when given, names each pooled unit
// (indexed by unit_index); otherwise units are labelled "u<index>".
// Throws ValidationError for an empty label or a label count mismatch.
std::string graph_to_dot(const SyntacticGraph& g,
                         std::span<const std::string> unit_labels = {});

}  // namespace syntagraph
