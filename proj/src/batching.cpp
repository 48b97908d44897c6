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

#include "syntagraph/batching.hpp"

#include <string>

#include "syntagraph/error.hpp"

namespace syntagraph {
namespace {

std::vector<Tensor> split_rows(const Tensor& mat,
                               const std::vector<std::size_t>& counts,
                               const char* what) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  if (mat.rank() != 2 || mat.rows() != total) {
    throw ShapeError(std::string(what) + ": batch has " + std::to_string(total) +
                     " rows but the matrix has shape " +
                     shape_to_string(mat.shape()));
  }
  std::vector<Tensor> out;
  out.reserve(counts.size());
  const std::size_t d = mat.cols();
  std::size_t start = 0;
  for (std::size_t c : counts) {
    const auto first = mat.values().begin() + static_cast<std::ptrdiff_t>(start * d);
    out.emplace_back(Shape{c, d},
                     std::vector<double>(first, first + static_cast<std::ptrdiff_t>(c * d)));
    start += c;
  }
  return out;
}

}  // namespace

BatchedGraph merge_graphs(std::span<const SyntacticGraph> graphs) {
  if (graphs.empty()) throw ValidationError("merge_graphs: empty graph list");
  BatchedGraph b;
  std::size_t node_base = 0, unit_base = 0;
  for (const SyntacticGraph& g : graphs) {
    b.offsets.push_back(node_base);
    b.sizes.push_back(g.num_nodes());
    b.unit_offsets.push_back(unit_base);
    b.unit_counts.push_back(g.num_units());
    b.edge_counts.push_back(g.edges.size());
    b.merged.roles.insert(b.merged.roles.end(), g.roles.begin(), g.roles.end());
    for (std::size_t u : g.unit_index) b.merged.unit_index.push_back(u + unit_base);
    for (const Edge& e : g.edges) {
      b.merged.edges.push_back({e.src + node_base, e.dst + node_base, e.type});
    }
    node_base += g.num_nodes();
    unit_base += g.num_units();
  }
  return b;
}

std::vector<SyntacticGraph> split_graphs(const BatchedGraph& batch) {
  validate_batch(batch);
  std::vector<SyntacticGraph> out(batch.num_graphs());
  std::size_t unit_cursor = 0, edge_cursor = 0;
  for (std::size_t k = 0; k < batch.num_graphs(); ++k) {
    SyntacticGraph& g = out[k];
    const auto node_first =
        batch.merged.roles.begin() + static_cast<std::ptrdiff_t>(batch.offsets[k]);
    g.roles.assign(node_first, node_first + static_cast<std::ptrdiff_t>(batch.sizes[k]));
    for (std::size_t i = 0; i < batch.unit_counts[k]; ++i) {
      g.unit_index.push_back(batch.merged.unit_index[unit_cursor++] -
                             batch.unit_offsets[k]);
    }
    for (std::size_t i = 0; i < batch.edge_counts[k]; ++i) {
      const Edge& e = batch.merged.edges[edge_cursor++];
      g.edges.push_back({e.src - batch.offsets[k], e.dst - batch.offsets[k], e.type});
    }
  }
  return out;
}

void validate_batch(const BatchedGraph& b) {
  const std::size_t k = b.sizes.size();
  if (k == 0 || b.offsets.size() != k || b.unit_offsets.size() != k ||
      b.unit_counts.size() != k || b.edge_counts.size() != k) {
    throw ValidationError("batch bookkeeping arrays disagree in length");
  }
  std::size_t nodes = 0, units = 0, edges = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (b.offsets[i] != nodes || b.unit_offsets[i] != units) {
      throw ValidationError("batch offsets are not the running sums of sizes");
    }
    nodes += b.sizes[i];
    units += b.unit_counts[i];
    edges += b.edge_counts[i];
  }
  if (nodes != b.merged.num_nodes() || units != b.merged.num_units() ||
      edges != b.merged.edges.size()) {
    throw ValidationError("batch totals do not match the merged graph");
  }
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t lo = b.offsets[i], hi = lo + b.sizes[i];
    for (std::size_t j = 0; j < b.edge_counts[i]; ++j, ++cursor) {
      const Edge& e = b.merged.edges[cursor];
      if (e.src < lo || e.src >= hi || e.dst < lo || e.dst >= hi) {
        throw ValidationError("edge " + std::to_string(e.src) + "->" +
                              std::to_string(e.dst) + " crosses graph " +
                              std::to_string(i) + "'s boundary");
      }
    }
  }
  validate_graph_structure(b.merged);
}

std::vector<Tensor> split_node_matrix(const BatchedGraph& batch, const Tensor& mat) {
  return split_rows(mat, batch.sizes, "split_node_matrix");
}

std::vector<Tensor> split_unit_matrix(const BatchedGraph& batch, const Tensor& mat) {
  return split_rows(mat, batch.unit_counts, "split_unit_matrix");
}

}  // namespace syntagraph
