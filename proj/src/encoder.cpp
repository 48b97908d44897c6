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

#include "syntagraph/encoder.hpp"

#include <algorithm>
#include <string>

#include "syntagraph/error.hpp"
#include "syntagraph/ops.hpp"

namespace syntagraph {
namespace {

void check_phonemes(const Tensor& phoneme_enc, const BoundaryMap& boundary) {
  if (phoneme_enc.rank() != 2 || phoneme_enc.rows() != boundary.num_phonemes()) {
    throw AlignmentError("phoneme encoding has shape " +
                         shape_to_string(phoneme_enc.shape()) + " but the boundary map has " +
                         std::to_string(boundary.num_phonemes()) + " phonemes");
  }
}

void check_units(const SyntacticGraph& graph, const BoundaryMap& boundary) {
  if (graph.num_units() != boundary.num_units()) {
    throw AlignmentError("graph has " + std::to_string(graph.num_units()) +
                         " unit nodes but the boundary map pools " +
                         std::to_string(boundary.num_units()) + " units");
  }
}

void copy_row(std::span<const double> src, std::span<double> dst) {
  std::copy(src.begin(), src.end(), dst.begin());
}

}  // namespace

Tensor pool_units(const Tensor& phoneme_enc, const BoundaryMap& boundary) {
  validate_boundary(boundary);
  check_phonemes(phoneme_enc, boundary);
  return pool_rows(phoneme_enc, group_sizes(boundary.unit_of_phoneme()));
}

Tensor pool_units_backward(const Tensor& dunits, const BoundaryMap& boundary) {
  const auto sizes = group_sizes(boundary.unit_of_phoneme());
  Tensor dx = expand_rows(dunits, sizes);
  const auto& unit_of = boundary.unit_of_phoneme();
  for (std::size_t p = 0; p < dx.rows(); ++p) {
    const double n = static_cast<double>(sizes[unit_of[p]]);
    for (double& v : dx.row(p)) v /= n;
  }
  return dx;
}

Tensor stop_gradient(const Tensor& x) { return x; }

Tensor stop_gradient_backward(const Tensor& dy) { return Tensor(dy.shape()); }

Tensor units_to_nodes(const Tensor& units, const SyntacticGraph& graph,
                      const GraphEncoderParams& params) {
  const std::size_t d = params.config.hidden;
  if (units.rank() != 2 || units.rows() != graph.num_units() || units.cols() != d) {
    throw ShapeError("units_to_nodes: unit rows " + shape_to_string(units.shape()) +
                     " for " + std::to_string(graph.num_units()) +
                     " units of hidden size " + std::to_string(d));
  }
  Tensor nodes({graph.num_nodes(), d});
  std::size_t cursor = 0;
  for (std::size_t node = 0; node < graph.num_nodes(); ++node) {
    switch (graph.roles[node]) {
      case NodeRole::Bos: copy_row(params.e_bos.data(), nodes.row(node)); break;
      case NodeRole::Eos: copy_row(params.e_eos.data(), nodes.row(node)); break;
      case NodeRole::Unit:
        copy_row(units.row(graph.unit_index[cursor++]), nodes.row(node));
        break;
    }
  }
  return nodes;
}

Tensor gather_units(const Tensor& node_mat, const SyntacticGraph& graph) {
  if (node_mat.rank() != 2 || node_mat.rows() != graph.num_nodes()) {
    throw ShapeError("gather_units: node matrix " + shape_to_string(node_mat.shape()) +
                     " for a graph of " + std::to_string(graph.num_nodes()) + " nodes");
  }
  const auto nodes = node_of_unit(graph);
  Tensor out({nodes.size(), node_mat.cols()});
  for (std::size_t j = 0; j < nodes.size(); ++j) copy_row(node_mat.row(nodes[j]), out.row(j));
  return out;
}

Tensor pool_to_nodes(const Tensor& phoneme_enc, const BoundaryMap& boundary,
                     const SyntacticGraph& graph, const GraphEncoderParams& params) {
  check_units(graph, boundary);
  return units_to_nodes(pool_units(phoneme_enc, boundary), graph, params);
}

Tensor encode_nodes(const Tensor& h0, const SyntacticGraph& graph,
                    const GraphEncoderParams& params, EncodeTrace* trace) {
  validate_encoder_params(params);
  const EncoderConfig& cfg = params.config;
  if (trace) {
    trace->h0 = h0;
    trace->layer_inputs.clear();
    trace->layers.assign(cfg.layers, {});
  }
  Tensor total = cfg.sum_includes_input ? h0 : Tensor(h0.shape());
  Tensor h = h0;
  for (std::size_t l = 0; l < cfg.layers; ++l) {
    if (trace) trace->layer_inputs.push_back(h);
    h = ggnn_layer_forward(h, graph, params.layers[l], cfg.iterations,
                           trace ? &trace->layers[l] : nullptr);
    add_inplace(total, h);
  }
  return total;
}

Tensor encode(const Tensor& phoneme_enc, const BoundaryMap& boundary,
              const SyntacticGraph& graph, const GraphEncoderParams& params) {
  check_units(graph, boundary);
  const Tensor pooled = stop_gradient(pool_units(phoneme_enc, boundary));
  return gather_units(encode_nodes(units_to_nodes(pooled, graph, params), graph, params),
                      graph);
}

std::vector<Tensor> encode_batch(std::span<const Tensor> phoneme_encs,
                                 std::span<const BoundaryMap> boundaries,
                                 std::span<const SyntacticGraph> graphs,
                                 const GraphEncoderParams& params) {
  if (phoneme_encs.size() != graphs.size() || boundaries.size() != graphs.size()) {
    throw AlignmentError("encode_batch: " + std::to_string(graphs.size()) + " graphs, " +
                         std::to_string(boundaries.size()) + " boundary maps and " +
                         std::to_string(phoneme_encs.size()) + " phoneme encodings");
  }
  std::vector<Tensor> pooled;
  pooled.reserve(graphs.size());
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    check_units(graphs[k], boundaries[k]);
    pooled.push_back(stop_gradient(pool_units(phoneme_encs[k], boundaries[k])));
  }
  const BatchedGraph batch = merge_graphs(graphs);
  const Tensor h0 = units_to_nodes(concat_rows(pooled), batch.merged, params);
  const Tensor out = encode_nodes(h0, batch.merged, params);
  return split_unit_matrix(batch, gather_units(out, batch.merged));
}

EncoderGradients encode_backward(const Tensor& phoneme_enc, const BoundaryMap& boundary,
                                 const SyntacticGraph& graph,
                                 const GraphEncoderParams& params, const Tensor& doutput) {
  check_units(graph, boundary);
  const Tensor pooled = stop_gradient(pool_units(phoneme_enc, boundary));
  EncodeTrace trace;
  encode_nodes(units_to_nodes(pooled, graph, params), graph, params, &trace);

  const std::size_t d = params.config.hidden;
  if (doutput.shape() != Shape{graph.num_units(), d}) {
    throw ShapeError("encode_backward: gradient " + shape_to_string(doutput.shape()) +
                     " for output " + shape_to_string(Shape{graph.num_units(), d}));
  }
  // Scatter the unit-row gradient back onto nodes; sentinel rows get none.
  Tensor dnodes({graph.num_nodes(), d});
  const auto nodes = node_of_unit(graph);
  for (std::size_t j = 0; j < nodes.size(); ++j) copy_row(doutput.row(j), dnodes.row(nodes[j]));

  EncoderGradients grads{zero_encoder_params(params.config), Tensor(phoneme_enc.shape())};
  // Every layer output feeds the sum directly, and layer l's output is also
  // layer l+1's input.
  Tensor dh = dnodes;
  for (std::size_t l = params.config.layers; l-- > 0;) {
    GgnnLayerGrad lg =
        ggnn_layer_backward(graph, params.layers[l], trace.layers[l], dh);
    grads.dparams.layers[l] = std::move(lg.dlayer);
    dh = std::move(lg.dinput);
    if (l > 0 || params.config.sum_includes_input) add_inplace(dh, dnodes);
  }

  Tensor dunits({graph.num_units(), d});
  for (std::size_t node = 0; node < graph.num_nodes(); ++node) {
    Tensor* sentinel = nullptr;
    switch (graph.roles[node]) {
      case NodeRole::Bos: sentinel = &grads.dparams.e_bos; break;
      case NodeRole::Eos: sentinel = &grads.dparams.e_eos; break;
      case NodeRole::Unit: break;
    }
    const auto src = dh.row(node);
    if (sentinel) {
      for (std::size_t c = 0; c < d; ++c) (*sentinel)[c] += src[c];
    }
  }
  for (std::size_t j = 0; j < nodes.size(); ++j) copy_row(dh.row(nodes[j]), dunits.row(j));
  grads.dphoneme_enc = pool_units_backward(stop_gradient_backward(dunits), boundary);
  return grads;
}

SyntacticEncoders init_syntactic_encoders(const EncoderConfig& config, Rng& rng) {
  SyntacticEncoders e;
  e.duration_branch = init_encoder_params(config, rng);
  e.prior_branch = init_encoder_params(config, rng);
  return e;
}

Tensor word_level(const Tensor& unit_enc, const BoundaryMap& boundary) {
  return boundary.language == Language::Chinese ? chars_to_words(unit_enc, boundary)
                                                : unit_enc;
}

SyntacticFeatures syntactic_features(const SyntacticEncoders& encoders,
                                     const Tensor& phoneme_enc,
                                     const BoundaryMap& boundary,
                                     const SyntacticGraph& graph,
                                     const DurationTable& durations) {
  validate_durations(durations);
  if (durations.phonemes_per_word != group_sizes(boundary.word_of_phoneme)) {
    throw AlignmentError("duration table phoneme counts disagree with the boundary map");
  }
  SyntacticFeatures f;
  f.phoneme_level = expand_to_phoneme(
      word_level(encode(phoneme_enc, boundary, graph, encoders.duration_branch), boundary),
      durations);
  f.frame_level = expand_to_frame(
      word_level(encode(phoneme_enc, boundary, graph, encoders.prior_branch), boundary),
      durations);
  return f;
}

}  // namespace syntagraph
