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
#include <vector>

#include "syntagraph/boundary.hpp"
#include "syntagraph/encoder_params.hpp"
#include "syntagraph/syntactic_graph.hpp"
#include "syntagraph/tensor.hpp"

// Slow, loop-by-loop implementations used as oracles for the library code.
// They share no code with the implementations they check.
namespace syntagraph::verify {

struct GraphCounts {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  friend bool operator==(const GraphCounts&, const GraphCounts&) = default;
};

// n + 2 nodes and 2(n - 1) + 4 edges.
GraphCounts english_counts(std::size_t num_words);
// 2 + sum(k) nodes and 2(n - 1) + 2 sum(k - 1) + 4 edges.
GraphCounts chinese_counts(const std::vector<std::size_t>& chars_per_word);

// Every edge has exactly one twin (dst, src, reverse type), and forward and
// reverse edges are equally many.
bool reverse_pairing_bijection(const SyntacticGraph& g);

// Direct cross-correlation; `bias` may be an unset tensor.
Tensor reference_conv2d(const Tensor& input, const Tensor& kernel, const Tensor& bias,
                        std::size_t stride, std::size_t padding);

// Group-by mean over `group_of` (one group id per row).
Tensor reference_pool(const Tensor& rows, const std::vector<std::size_t>& group_of);

// Node-by-node evaluation of the gated propagation.
Tensor reference_ggnn_layer(const Tensor& h0, const SyntacticGraph& graph,
                            const GgnnLayerParams& layer, std::size_t iterations);

// pool -> sentinels -> layers -> sum -> unit rows.
Tensor reference_encode(const Tensor& phoneme_enc, const BoundaryMap& boundary,
                        const SyntacticGraph& graph, const GraphEncoderParams& params);

}  // namespace syntagraph::verify
