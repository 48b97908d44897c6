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

#include "syntagraph/verify/reference.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "syntagraph/error.hpp"

namespace syntagraph::verify {
namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix to_matrix(const Tensor& t) {
  Matrix m(t.rows(), std::vector<double>(t.cols()));
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.cols(); ++c) m[r][c] = t.at(r, c);
  }
  return m;
}

Tensor to_tensor(const Matrix& m) {
  Tensor t({m.size(), m.empty() ? 0 : m[0].size()});
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m[r].size(); ++c) t.at(r, c) = m[r][c];
  }
  return t;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// sum_k x[k] * w[k][j]
double vec_mat(const std::vector<double>& x, const Tensor& w, std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * w.at(k, j);
  return s;
}

}  // namespace

GraphCounts english_counts(std::size_t num_words) {
  return {num_words + 2, 2 * (num_words - 1) + 4};
}

GraphCounts chinese_counts(const std::vector<std::size_t>& chars_per_word) {
  std::size_t chars = 0, intra = 0;
  for (std::size_t k : chars_per_word) {
    chars += k;
    intra += k - 1;
  }
  return {2 + chars, 2 * (chars_per_word.size() - 1) + 2 * intra + 4};
}

bool reverse_pairing_bijection(const SyntacticGraph& g) {
  std::map<std::tuple<std::size_t, std::size_t, EdgeType>, int> count;
  std::size_t forward = 0, reverse = 0;
  for (const Edge& e : g.edges) {
    ++count[{e.src, e.dst, e.type}];
    (is_reverse(e.type) ? reverse : forward) += 1;
  }
  if (forward != reverse) return false;
  for (const Edge& e : g.edges) {
    if (count[{e.src, e.dst, e.type}] != 1) return false;
    const auto twin = count.find({e.dst, e.src, reverse_of(e.type)});
    if (twin == count.end() || twin->second != 1) return false;
  }
  return true;
}

Tensor reference_conv2d(const Tensor& input, const Tensor& kernel, const Tensor& bias,
                        std::size_t stride, std::size_t padding) {
  const std::size_t cin = input.dim(0), h = input.dim(1), w = input.dim(2);
  const std::size_t cout = kernel.dim(0), kh = kernel.dim(2), kw = kernel.dim(3);
  const std::size_t oh = (h + 2 * padding - kh) / stride + 1;
  const std::size_t ow = (w + 2 * padding - kw) / stride + 1;
  Tensor out({cout, oh, ow});
  for (std::size_t o = 0; o < cout; ++o) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        double acc = 0.0;
        for (std::size_t c = 0; c < cin; ++c) {
          for (std::size_t i = 0; i < kh; ++i) {
            for (std::size_t j = 0; j < kw; ++j) {
              const long iy = static_cast<long>(y * stride + i) - static_cast<long>(padding);
              const long ix = static_cast<long>(x * stride + j) - static_cast<long>(padding);
              if (iy < 0 || ix < 0 || iy >= static_cast<long>(h) || ix >= static_cast<long>(w)) {
                continue;
              }
              acc += input.at(c, static_cast<std::size_t>(iy), static_cast<std::size_t>(ix)) *
                     kernel[((o * cin + c) * kh + i) * kw + j];
            }
          }
        }
        if (!bias.empty()) acc += bias[o];
        out.at(o, y, x) = acc;
      }
    }
  }
  return out;
}

Tensor reference_pool(const Tensor& rows, const std::vector<std::size_t>& group_of) {
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t r = 0; r < group_of.size(); ++r) members[group_of[r]].push_back(r);
  Tensor out({members.size(), rows.cols()});
  std::size_t g = 0;
  for (const auto& [id, rs] : members) {
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      const double base = rows.at(rs.front(), c);
      double offset = 0.0;
      for (std::size_t r : rs) offset += rows.at(r, c) - base;
      out.at(g, c) = base + offset / static_cast<double>(rs.size());
    }
    ++g;
  }
  return out;
}

Tensor reference_ggnn_layer(const Tensor& h0, const SyntacticGraph& graph,
                            const GgnnLayerParams& layer, std::size_t iterations) {
  const std::size_t n = h0.rows(), d = h0.cols();
  Matrix h = to_matrix(h0);
  for (std::size_t it = 0; it < iterations; ++it) {
    Matrix a(n, std::vector<double>(d, 0.0));
    for (const Edge& e : graph.edges) {
      const Tensor& w = layer.message_weight.at(e.type);
      const Tensor& b = layer.message_bias.at(e.type);
      for (std::size_t j = 0; j < d; ++j) a[e.dst][j] += vec_mat(h[e.src], w, j) + b[j];
    }
    Matrix next(n, std::vector<double>(d));
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<double> z(d), r(d), rh(d);
      for (std::size_t j = 0; j < d; ++j) {
        z[j] = logistic(vec_mat(a[v], layer.w_z, j) + vec_mat(h[v], layer.u_z, j) + layer.b_z[j]);
        r[j] = logistic(vec_mat(a[v], layer.w_r, j) + vec_mat(h[v], layer.u_r, j) + layer.b_r[j]);
      }
      for (std::size_t j = 0; j < d; ++j) rh[j] = r[j] * h[v][j];
      for (std::size_t j = 0; j < d; ++j) {
        const double cand =
            std::tanh(vec_mat(a[v], layer.w_h, j) + vec_mat(rh, layer.u_h, j) + layer.b_h[j]);
        next[v][j] = (1.0 - z[j]) * h[v][j] + z[j] * cand;
      }
    }
    h = std::move(next);
  }
  return to_tensor(h);
}

Tensor reference_encode(const Tensor& phoneme_enc, const BoundaryMap& boundary,
                        const SyntacticGraph& graph, const GraphEncoderParams& params) {
  const std::vector<std::size_t>& group_of = boundary.language == Language::Chinese
                                                 ? boundary.char_of_phoneme
                                                 : boundary.word_of_phoneme;
  const Tensor pooled = reference_pool(phoneme_enc, group_of);
  const std::size_t d = params.config.hidden;
  Tensor h({graph.num_nodes(), d});
  std::size_t unit = 0;
  for (std::size_t v = 0; v < graph.num_nodes(); ++v) {
    for (std::size_t j = 0; j < d; ++j) {
      switch (graph.roles[v]) {
        case NodeRole::Bos: h.at(v, j) = params.e_bos[j]; break;
        case NodeRole::Eos: h.at(v, j) = params.e_eos[j]; break;
        case NodeRole::Unit: h.at(v, j) = pooled.at(graph.unit_index[unit], j); break;
      }
    }
    if (graph.roles[v] == NodeRole::Unit) ++unit;
  }
  Tensor total({graph.num_nodes(), d});
  if (params.config.sum_includes_input) total = h;
  for (const auto& layer : params.layers) {
    h = reference_ggnn_layer(h, graph, layer, params.config.iterations);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += h[i];
  }
  Tensor out({graph.num_units(), d});
  unit = 0;
  for (std::size_t v = 0; v < graph.num_nodes(); ++v) {
    if (graph.roles[v] != NodeRole::Unit) continue;
    const std::size_t row = graph.unit_index[unit++];
    for (std::size_t j = 0; j < d; ++j) out.at(row, j) = total.at(v, j);
  }
  return out;
}

}  // namespace syntagraph::verify
