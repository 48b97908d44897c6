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

#include "syntagraph/encoder_params.hpp"
#include "syntagraph/syntactic_graph.hpp"
#include "syntagraph/tensor.hpp"

namespace syntagraph {

// Activations of one propagation step, kept for the backward pass.
struct GgnnStep {
  Tensor h_prev;   // M x d
  Tensor a;        // aggregated incoming messages
  Tensor z;        // update gate
  Tensor r;        // reset gate
  Tensor rh;       // r (.) h_prev
  Tensor h_tilde;  // candidate state
};

struct GgnnTrace {
  std::vector<GgnnStep> steps;
};

// `iterations` rounds of
//   a_v = sum over edges u -> v of type e of (h_u W_e + b_e)
//   z   = sigmoid(a W_z + h U_z + b_z)
//   r   = sigmoid(a W_r + h U_r + b_r)
//   h~  = tanh(a W_h + (r (.) h) U_h + b_h)
//   h'  = (1 - z) (.) h + z (.) h~
// Incoming messages are summed in edge storage order. Throws ConfigError
// when the graph uses an edge type the layer has no weights for.
Tensor ggnn_layer_forward(const Tensor& node_emb, const SyntacticGraph& graph,
                          const GgnnLayerParams& layer, std::size_t iterations,
                          GgnnTrace* trace = nullptr);

struct GgnnLayerGrad {
  GgnnLayerParams dlayer;
  Tensor dinput;
};

// Backpropagates `doutput` through every recorded step.
GgnnLayerGrad ggnn_layer_backward(const SyntacticGraph& graph,
                                  const GgnnLayerParams& layer,
                                  const GgnnTrace& trace, const Tensor& doutput);

// Zero-valued gradient accumulator shaped like `layer`.
GgnnLayerParams zeros_like(const GgnnLayerParams& layer);

}  // namespace syntagraph
