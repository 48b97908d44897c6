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

#include "syntagraph/ggnn.hpp"

#include <string>

#include "syntagraph/error.hpp"
#include "syntagraph/ops.hpp"

namespace syntagraph {
namespace {

void check_edge_types(const SyntacticGraph& graph, const GgnnLayerParams& layer) {
  for (const Edge& e : graph.edges) {
    if (!layer.message_weight.count(e.type)) {
      throw ConfigError("graph uses edge type " +
                        std::string(edge_type_code(e.type)) +
                        " but the encoder has no weights for it");
    }
  }
}

Tensor aggregate(const Tensor& h, const SyntacticGraph& graph,
                 const GgnnLayerParams& layer) {
  std::map<EdgeType, Tensor> messages;
  for (const auto& [type, w] : layer.message_weight) {
    messages.emplace(type, add_row_bias(matmul(h, w), layer.message_bias.at(type)));
  }
  Tensor a(h.shape());
  for (const Edge& e : graph.edges) {
    const auto src = messages.at(e.type).row(e.src);
    auto dst = a.row(e.dst);
    for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += src[c];
  }
  return a;
}

Tensor gate_preactivation(const Tensor& a, const Tensor& w, const Tensor& x,
                          const Tensor& u, const Tensor& b) {
  return add_row_bias(add(matmul(a, w), matmul(x, u)), b);
}

}  // namespace

GgnnLayerParams zeros_like(const GgnnLayerParams& layer) {
  GgnnLayerParams z;
  for (const auto& [type, w] : layer.message_weight) {
    z.message_weight.emplace(type, Tensor(w.shape()));
    z.message_bias.emplace(type, Tensor(layer.message_bias.at(type).shape()));
  }
  z.w_z = Tensor(layer.w_z.shape());
  z.u_z = Tensor(layer.u_z.shape());
  z.b_z = Tensor(layer.b_z.shape());
  z.w_r = Tensor(layer.w_r.shape());
  z.u_r = Tensor(layer.u_r.shape());
  z.b_r = Tensor(layer.b_r.shape());
  z.w_h = Tensor(layer.w_h.shape());
  z.u_h = Tensor(layer.u_h.shape());
  z.b_h = Tensor(layer.b_h.shape());
  return z;
}

Tensor ggnn_layer_forward(const Tensor& node_emb, const SyntacticGraph& graph,
                          const GgnnLayerParams& layer, std::size_t iterations,
                          GgnnTrace* trace) {
  if (node_emb.rank() != 2 || node_emb.rows() != graph.num_nodes()) {
    throw ShapeError("ggnn layer: node embeddings " +
                     shape_to_string(node_emb.shape()) + " for a graph of " +
                     std::to_string(graph.num_nodes()) + " nodes");
  }
  if (node_emb.cols() != layer.w_z.rows()) {
    throw ShapeError("ggnn layer: embedding width " + std::to_string(node_emb.cols()) +
                     " does not match hidden size " + std::to_string(layer.w_z.rows()));
  }
  check_edge_types(graph, layer);
  if (trace) trace->steps.clear();

  Tensor h = node_emb;
  for (std::size_t t = 0; t < iterations; ++t) {
    Tensor a = aggregate(h, graph, layer);
    Tensor z = sigmoid(gate_preactivation(a, layer.w_z, h, layer.u_z, layer.b_z));
    Tensor r = sigmoid(gate_preactivation(a, layer.w_r, h, layer.u_r, layer.b_r));
    Tensor rh = mul(r, h);
    Tensor h_tilde = tanh(gate_preactivation(a, layer.w_h, rh, layer.u_h, layer.b_h));
    Tensor next(h.shape());
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = (1.0 - z[i]) * h[i] + z[i] * h_tilde[i];
    }
    if (trace) {
      trace->steps.push_back({std::move(h), std::move(a), std::move(z), std::move(r),
                              std::move(rh), std::move(h_tilde)});
    }
    h = std::move(next);
  }
  return h;
}

GgnnLayerGrad ggnn_layer_backward(const SyntacticGraph& graph,
                                  const GgnnLayerParams& layer,
                                  const GgnnTrace& trace, const Tensor& doutput) {
  GgnnLayerGrad grad{zeros_like(layer), doutput};
  GgnnLayerParams& g = grad.dlayer;
  Tensor& dh = grad.dinput;  // gradient w.r.t. the state entering the current step

  for (auto step = trace.steps.rbegin(); step != trace.steps.rend(); ++step) {
    const Tensor& h = step->h_prev;
    const std::size_t n = h.size();

    // h' = (1 - z) h + z h~
    Tensor dz(h.shape()), dh_tilde(h.shape()), dh_prev(h.shape());
    for (std::size_t i = 0; i < n; ++i) {
      dz[i] = dh[i] * (step->h_tilde[i] - h[i]);
      dh_tilde[i] = dh[i] * step->z[i];
      dh_prev[i] = dh[i] * (1.0 - step->z[i]);
    }

    // Candidate state.
    const Tensor dpre_h = tanh_backward(step->h_tilde, dh_tilde);
    add_inplace(g.w_h, matmul_tn(step->a, dpre_h));
    add_inplace(g.u_h, matmul_tn(step->rh, dpre_h));
    add_inplace(g.b_h, column_sum(dpre_h));
    Tensor da = matmul_nt(dpre_h, layer.w_h);
    const Tensor drh = matmul_nt(dpre_h, layer.u_h);
    Tensor dr(h.shape());
    for (std::size_t i = 0; i < n; ++i) {
      dr[i] = drh[i] * h[i];
      dh_prev[i] += drh[i] * step->r[i];
    }

    // Update gate.
#ifdef SYNTAGRAPH_INJECT_SIGN_FLIP
    const Tensor dpre_z = scale(sigmoid_backward(step->z, dz), -1.0);
#else
    const Tensor dpre_z = sigmoid_backward(step->z, dz);
#endif
    add_inplace(g.w_z, matmul_tn(step->a, dpre_z));
    add_inplace(g.u_z, matmul_tn(h, dpre_z));
    add_inplace(g.b_z, column_sum(dpre_z));
    add_inplace(da, matmul_nt(dpre_z, layer.w_z));
    add_inplace(dh_prev, matmul_nt(dpre_z, layer.u_z));

    // Reset gate.
    const Tensor dpre_r = sigmoid_backward(step->r, dr);
    add_inplace(g.w_r, matmul_tn(step->a, dpre_r));
    add_inplace(g.u_r, matmul_tn(h, dpre_r));
    add_inplace(g.b_r, column_sum(dpre_r));
    add_inplace(da, matmul_nt(dpre_r, layer.w_r));
    add_inplace(dh_prev, matmul_nt(dpre_r, layer.u_r));

    // Messages: a_v += m_e(h_u) for every edge u -> v, so dm_e[u] += da[v].
    std::map<EdgeType, Tensor> dmessages;
    for (const auto& [type, w] : layer.message_weight) {
      dmessages.emplace(type, Tensor(h.shape()));
    }
    for (const Edge& e : graph.edges) {
      auto dst = dmessages.at(e.type).row(e.src);
      const auto src = da.row(e.dst);
      for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += src[c];
    }
    for (const auto& [type, dm] : dmessages) {
      add_inplace(g.message_weight.at(type), matmul_tn(h, dm));
      add_inplace(g.message_bias.at(type), column_sum(dm));
      add_inplace(dh_prev, matmul_nt(dm, layer.message_weight.at(type)));
    }

    dh = std::move(dh_prev);
  }
  return grad;
}

}  // namespace syntagraph
