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
#include <vector>

#include "syntagraph/syntactic_graph.hpp"
#include "syntagraph/tensor.hpp"

namespace syntagraph {

// Several graphs laid side by side as one disconnected graph so a single
// message-passing sweep covers the whole mini-batch. Graph k owns node ids
// [offsets[k], offsets[k] + sizes[k]) and pooled rows
// [unit_offsets[k], unit_offsets[k] + unit_counts[k]).
struct BatchedGraph {
  SyntacticGraph merged;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> unit_offsets;
  std::vector<std::size_t> unit_counts;
  std::vector<std::size_t> edge_counts;

  std::size_t num_graphs() const noexcept { return sizes.size(); }
};

// Throws ValidationError on an empty list.
BatchedGraph merge_graphs(std::span<const SyntacticGraph> graphs);

// Recovers the constituent graphs; split_graphs(merge_graphs(gs)) == gs.
std::vector<SyntacticGraph> split_graphs(const BatchedGraph& batch);

// Checks offsets/sizes consistency and that no edge crosses two graphs.
void validate_batch(const BatchedGraph& batch);

// Row slices of a [total_nodes x d] matrix, one per graph.
std::vector<Tensor> split_node_matrix(const BatchedGraph& batch, const Tensor& mat);
// Row slices of a [total_units x d] matrix, one per graph.
std::vector<Tensor> split_unit_matrix(const BatchedGraph& batch, const Tensor& mat);

}  // namespace syntagraph
