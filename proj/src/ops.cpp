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

#include "syntagraph/ops.hpp"

#include <cmath>
#include <string>

#include "syntagraph/error.hpp"

namespace syntagraph {
namespace {

void require_matrix(const Tensor& t, const char* op) {
  if (t.rank() != 2) {
    throw ShapeError(std::string(op) + ": expected a matrix, got " +
                     shape_to_string(t.shape()));
  }
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shape mismatch " +
                     shape_to_string(a.shape()) + " vs " +
                     shape_to_string(b.shape()));
  }
}

template <typename F>
Tensor map(const Tensor& x, F f) {
  Tensor y(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  return y;
}

template <typename F>
Tensor zip(const Tensor& a, const Tensor& b, const char* op, F f) {
  require_same_shape(a, b, op);
  Tensor y(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = f(a[i], b[i]);
  return y;
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions differ, " +
                     shape_to_string(a.shape()) + " x " +
                     shape_to_string(b.shape()));
  }
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  Tensor c({n, m});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += a.at(i, p) * b.at(p, j);
      c.at(i, j) = acc;
    }
  }
  return c;
}

Tensor matmul_tn(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul_tn");
  require_matrix(b, "matmul_tn");
  if (a.rows() != b.rows()) {
    throw ShapeError("matmul_tn: row counts differ, " +
                     shape_to_string(a.shape()) + " vs " +
                     shape_to_string(b.shape()));
  }
  const std::size_t k = a.rows(), n = a.cols(), m = b.cols();
  Tensor c({n, m});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += a.at(p, i) * b.at(p, j);
      c.at(i, j) = acc;
    }
  }
  return c;
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul_nt");
  require_matrix(b, "matmul_nt");
  if (a.cols() != b.cols()) {
    throw ShapeError("matmul_nt: column counts differ, " +
                     shape_to_string(a.shape()) + " vs " +
                     shape_to_string(b.shape()));
  }
  const std::size_t n = a.rows(), k = a.cols(), m = b.rows();
  Tensor c({n, m});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += a.at(i, p) * b.at(j, p);
      c.at(i, j) = acc;
    }
  }
  return c;
}

MatmulGrad matmul_backward(const Tensor& a, const Tensor& b, const Tensor& dc) {
  return {matmul_nt(dc, b), matmul_tn(a, dc)};
}

Tensor add(const Tensor& a, const Tensor& b) {
  return zip(a, b, "add", [](double x, double y) { return x + y; });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  return zip(a, b, "sub", [](double x, double y) { return x - y; });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  return zip(a, b, "mul", [](double x, double y) { return x * y; });
}

Tensor scale(const Tensor& a, double s) {
  return map(a, [s](double x) { return x * s; });
}

void add_inplace(Tensor& acc, const Tensor& x) {
  require_same_shape(acc, x, "add_inplace");
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += x[i];
}

MulGrad mul_backward(const Tensor& a, const Tensor& b, const Tensor& dc) {
  return {mul(dc, b), mul(dc, a)};
}

Tensor add_row_bias(const Tensor& a, const Tensor& bias) {
  require_matrix(a, "add_row_bias");
  if (bias.size() != a.cols()) {
    throw ShapeError("add_row_bias: bias " + shape_to_string(bias.shape()) +
                     " does not match " + shape_to_string(a.shape()));
  }
  Tensor y = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto row = y.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += bias[c];
  }
  return y;
}

Tensor column_sum(const Tensor& dc) {
  require_matrix(dc, "column_sum");
  Tensor s({dc.cols()});
  for (std::size_t r = 0; r < dc.rows(); ++r) {
    for (std::size_t c = 0; c < dc.cols(); ++c) s[c] += dc.at(r, c);
  }
  return s;
}

Tensor sigmoid(const Tensor& x) {
  return map(x, [](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

Tensor sigmoid_backward(const Tensor& y, const Tensor& dy) {
  return zip(y, dy, "sigmoid_backward",
             [](double s, double g) { return g * s * (1.0 - s); });
}

Tensor tanh(const Tensor& x) {
  return map(x, [](double v) { return std::tanh(v); });
}

Tensor tanh_backward(const Tensor& y, const Tensor& dy) {
  return zip(y, dy, "tanh_backward",
             [](double t, double g) { return g * (1.0 - t * t); });
}

Tensor leaky_relu(const Tensor& x, double slope) {
  return map(x, [slope](double v) { return v >= 0.0 ? v : slope * v; });
}

Tensor leaky_relu_backward(const Tensor& x, const Tensor& dy, double slope) {
  return zip(x, dy, "leaky_relu_backward",
             [slope](double v, double g) { return v >= 0.0 ? g : slope * g; });
}

Tensor mean_over_axis(const Tensor& x, std::size_t axis) {
  require_matrix(x, "mean_over_axis");
  const std::size_t n = x.rows(), m = x.cols();
  if (axis == 0) {
    Tensor y({1, m});
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < m; ++c) y[c] += x.at(r, c);
    }
    for (std::size_t c = 0; c < m; ++c) y[c] /= static_cast<double>(n);
    return y;
  }
  if (axis == 1) {
    Tensor y({n, 1});
    for (std::size_t r = 0; r < n; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < m; ++c) acc += x.at(r, c);
      y[r] = acc / static_cast<double>(m);
    }
    return y;
  }
  throw ShapeError("mean_over_axis: axis must be 0 or 1");
}

Tensor mean_over_axis_backward(const Shape& input_shape, std::size_t axis,
                               const Tensor& dy) {
  Tensor dx(input_shape);
  const std::size_t n = dx.rows(), m = dx.cols();
  if (axis == 0) {
    if (dy.size() != m) throw ShapeError("mean_over_axis_backward: bad dy");
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        dx.at(r, c) = dy[c] / static_cast<double>(n);
      }
    }
    return dx;
  }
  if (axis == 1) {
    if (dy.size() != n) throw ShapeError("mean_over_axis_backward: bad dy");
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        dx.at(r, c) = dy[r] / static_cast<double>(m);
      }
    }
    return dx;
  }
  throw ShapeError("mean_over_axis_backward: axis must be 0 or 1");
}

Tensor concat_rows(std::span<const Tensor> parts) {
  if (parts.empty()) throw ShapeError("concat_rows: nothing to concatenate");
  const std::size_t cols = parts.front().cols();
  std::size_t rows = 0;
  for (const Tensor& p : parts) {
    if (p.cols() != cols) {
      throw ShapeError("concat_rows: column mismatch " +
                       shape_to_string(parts.front().shape()) + " vs " +
                       shape_to_string(p.shape()));
    }
    rows += p.rows();
  }
  std::vector<double> data;
  data.reserve(rows * cols);
  for (const Tensor& p : parts) {
    data.insert(data.end(), p.values().begin(), p.values().end());
  }
  return Tensor({rows, cols}, std::move(data));
}

std::vector<Tensor> concat_rows_backward(const Tensor& dy,
                                         std::span<const std::size_t> row_counts) {
  std::size_t total = 0;
  for (std::size_t r : row_counts) total += r;
  if (total != dy.rows()) {
    throw ShapeError("concat_rows_backward: row counts sum to " +
                     std::to_string(total) + " but gradient has shape " +
                     shape_to_string(dy.shape()));
  }
  std::vector<Tensor> out;
  out.reserve(row_counts.size());
  const std::size_t cols = dy.cols();
  std::size_t start = 0;
  for (std::size_t r : row_counts) {
    auto first = dy.values().begin() + static_cast<std::ptrdiff_t>(start * cols);
    out.emplace_back(Shape{r, cols},
                     std::vector<double>(first, first + static_cast<std::ptrdiff_t>(r * cols)));
    start += r;
  }
  return out;
}

double sum(const Tensor& x) {
  double acc = 0.0;
  for (double v : x.values()) acc += v;
  return acc;
}

double dot(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace syntagraph
