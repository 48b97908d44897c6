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
#include <vector>

#include "syntagraph/batching.hpp"
#include "syntagraph/boundary.hpp"
#include "syntagraph/encoder_params.hpp"
#include "syntagraph/ggnn.hpp"
#include "syntagraph/length_regulator.hpp"
#include "syntagraph/rng.hpp"
#include "syntagraph/syntactic_graph.hpp"
#include "syntagraph/tensor.hpp"

namespace syntagraph {

// Mean of the phoneme rows of each pooled unit (word for English, character
// for Chinese) -> [num_units x d]. AlignmentError if a unit owns no phoneme.
Tensor pool_units(const Tensor& phoneme_enc, const BoundaryMap& boundary);
// Each phoneme row receives 1/n of its unit's gradient.
Tensor pool_units_backward(const Tensor& dunits, const BoundaryMap& boundary);

// Forward identity; its backward contributes nothing to the producer.
Tensor stop_gradient(const Tensor& x);
Tensor stop_gradient_backward(const Tensor& dy);

// Node embeddings for the first layer: unit nodes take their pooled row,
// BOS/EOS take the learned sentinel embeddings.
Tensor pool_to_nodes(const Tensor& phoneme_enc, const BoundaryMap& boundary,
                     const SyntacticGraph& graph, const GraphEncoderParams& params);

// Places pooled unit rows and sentinel embeddings onto graph nodes.
Tensor units_to_nodes(const Tensor& units, const SyntacticGraph& graph,
                      const GraphEncoderParams& params);
// Unit rows of a node matrix, ordered by unit_index.
Tensor gather_units(const Tensor& node_mat, const SyntacticGraph& graph);

struct EncodeTrace {
  Tensor h0;
  std::vector<Tensor> layer_inputs;
  std::vector<GgnnTrace> layers;
};

// Runs the stacked layers on node embeddings and returns the node-level sum
// of the layer outputs (plus h0 when config.sum_includes_input).
Tensor encode_nodes(const Tensor& h0, const SyntacticGraph& graph,
                    const GraphEncoderParams& params, EncodeTrace* trace = nullptr);

// pool -> stop_gradient -> layers -> layer sum -> unit rows in unit_index
// order. Sentinel rows are dropped.
Tensor encode(const Tensor& phoneme_enc, const BoundaryMap& boundary,
              const SyntacticGraph& graph, const GraphEncoderParams& params);

// Encodes a mini-batch as one merged graph and splits the result back,
// one [num_units_k x d] tensor per input graph.
std::vector<Tensor> encode_batch(std::span<const Tensor> phoneme_encs,
                                 std::span<const BoundaryMap> boundaries,
                                 std::span<const SyntacticGraph> graphs,
                                 const GraphEncoderParams& params);

struct EncoderGradients {
  GraphEncoderParams dparams;
  // Always zero: the stop-gradient sits between pooling and the first layer.
  Tensor dphoneme_enc;
};

// Gradient of sum(doutput (.) encode(...)) with respect to every parameter
// and to the phoneme encodings.
EncoderGradients encode_backward(const Tensor& phoneme_enc, const BoundaryMap& boundary,
                                 const SyntacticGraph& graph,
                                 const GraphEncoderParams& params, const Tensor& doutput);

// The two independently parameterised encoders: one feeds the duration
// predictor (phoneme level), the other the prior flow (frame level).
struct SyntacticEncoders {
  GraphEncoderParams duration_branch;
  GraphEncoderParams prior_branch;
};

SyntacticEncoders init_syntactic_encoders(const EncoderConfig& config, Rng& rng);

struct SyntacticFeatures {
  Tensor phoneme_level;  // [num_phonemes x d]
  Tensor frame_level;    // [num_frames x d]
};

// Word-level encoding of each branch, expanded by the duration table. For
// Chinese the character-level output is first mean-pooled to words.
Tensor word_level(const Tensor& unit_enc, const BoundaryMap& boundary);
SyntacticFeatures syntactic_features(const SyntacticEncoders& encoders,
                                     const Tensor& phoneme_enc,
                                     const BoundaryMap& boundary,
                                     const SyntacticGraph& graph,
                                     const DurationTable& durations);

}  // namespace syntagraph
