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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "syntagraph/dependency_tree.hpp"
#include "syntagraph/rng.hpp"
#include "syntagraph/syntactic_graph.hpp"
#include "syntagraph/tensor.hpp"

namespace syntagraph {

struct EncoderConfig {
  Language language = Language::English;
  std::size_t hidden = 192;
  std::size_t layers = 2;
  std::size_t iterations = 5;
  // Whether the pooled input joins the layer-output sum.
  bool sum_includes_input = false;

  friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

// One gated graph convolution layer. Weights act on row vectors: a message
// along an edge of type e is h_src * W_e + b_e, and the GRU gates read
// a * W_g + h * U_g + b_g.
struct GgnnLayerParams {
  std::map<EdgeType, Tensor> message_weight;  // d x d per edge type
  std::map<EdgeType, Tensor> message_bias;    // d per edge type
  Tensor w_z, u_z, b_z;
  Tensor w_r, u_r, b_r;
  Tensor w_h, u_h, b_h;

  friend bool operator==(const GgnnLayerParams&, const GgnnLayerParams&) = default;
};

struct GraphEncoderParams {
  EncoderConfig config;
  std::vector<GgnnLayerParams> layers;
  Tensor e_bos;  // d
  Tensor e_eos;  // d

  friend bool operator==(const GraphEncoderParams&, const GraphEncoderParams&) = default;
};

// All tensors zero.
GraphEncoderParams zero_encoder_params(const EncoderConfig& config);

// Matrices and sentinel embeddings ~ U(-1/sqrt(d), 1/sqrt(d)); biases zero.
GraphEncoderParams init_encoder_params(const EncoderConfig& config, Rng& rng);

// Visits every tensor with its canonical name ("e_BOS", "layer1.W_DF",
// "gru2.U_r", ...) in a fixed order.
template <typename Params, typename F>
void for_each_param(Params& params, F&& f);

std::vector<std::string> encoder_param_names(const EncoderConfig& config);

// Total number of scalars.
std::size_t parameter_count(const GraphEncoderParams& params);

// Checks every tensor shape against the config. Throws ConfigError.
void validate_encoder_params(const GraphEncoderParams& params);

// Flat JSON map from canonical name to tensor JSON.
nlohmann::ordered_json encoder_params_to_json(const GraphEncoderParams& params);
// The key set must match `config` exactly: a missing key raises ConfigError
// naming it, as does any unexpected key.
GraphEncoderParams encoder_params_from_json(const nlohmann::ordered_json& j,
                                            const EncoderConfig& config);

// Flattens to / writes back from one contiguous vector in for_each_param order.
std::vector<double> flatten(const GraphEncoderParams& params);
void unflatten(GraphEncoderParams& params, std::span<const double> values);

template <typename Params, typename F>
void for_each_param(Params& params, F&& f) {
  f(std::string("e_BOS"), params.e_bos);
  f(std::string("e_EOS"), params.e_eos);
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    auto& layer = params.layers[l];
    const std::string msg = "layer" + std::to_string(l + 1) + ".";
    const std::string gru = "gru" + std::to_string(l + 1) + ".";
    for (auto& [type, w] : layer.message_weight) {
      f(msg + "W_" + std::string(edge_type_code(type)), w);
      f(msg + "b_" + std::string(edge_type_code(type)), layer.message_bias.at(type));
    }
    f(gru + "W_z", layer.w_z);
    f(gru + "U_z", layer.u_z);
    f(gru + "b_z", layer.b_z);
    f(gru + "W_r", layer.w_r);
    f(gru + "U_r", layer.u_r);
    f(gru + "b_r", layer.b_r);
    f(gru + "W_h", layer.w_h);
    f(gru + "U_h", layer.u_h);
    f(gru + "b_h", layer.b_h);
  }
}

}  // namespace syntagraph
