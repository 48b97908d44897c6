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
#include <utility>
#include <vector>

#include "syntagraph/tensor.hpp"

namespace syntagraph {

// Dense primitives over row-major matrices, each paired with its
// vector-Jacobian product. Summation order is fixed: for matmul the inner
// index runs in increasing order, accumulating into a zero-initialised sum.

Tensor matmul(const Tensor& a, const Tensor& b);
// a^T * b and a * b^T without materialising the transpose.
Tensor matmul_tn(const Tensor& a, const Tensor& b);
Tensor matmul_nt(const Tensor& a, const Tensor& b);

struct MatmulGrad {
  Tensor da;
  Tensor db;
};
MatmulGrad matmul_backward(const Tensor& a, const Tensor& b, const Tensor& dc);

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double s);
void add_inplace(Tensor& acc, const Tensor& x);

struct MulGrad {
  Tensor da;
  Tensor db;
};
MulGrad mul_backward(const Tensor& a, const Tensor& b, const Tensor& dc);

// Broadcasts a length-`cols` bias over every row of `a`.
Tensor add_row_bias(const Tensor& a, const Tensor& bias);
// Gradient of add_row_bias with respect to the bias: column sums of `dc`.
Tensor column_sum(const Tensor& dc);

Tensor sigmoid(const Tensor& x);
// Takes the forward output y = sigmoid(x).
Tensor sigmoid_backward(const Tensor& y, const Tensor& dy);

Tensor tanh(const Tensor& x);
// Takes the forward output y = tanh(x).
Tensor tanh_backward(const Tensor& y, const Tensor& dy);

Tensor leaky_relu(const Tensor& x, double slope);
// Takes the forward input x. The derivative at exactly 0 is taken as 1.
Tensor leaky_relu_backward(const Tensor& x, const Tensor& dy, double slope);

// Mean of a matrix over axis 0 (result 1 x cols) or axis 1 (rows x 1).
Tensor mean_over_axis(const Tensor& x, std::size_t axis);
Tensor mean_over_axis_backward(const Shape& input_shape, std::size_t axis,
                               const Tensor& dy);

Tensor concat_rows(std::span<const Tensor> parts);
// Inverse of concat_rows: splits `dy` into consecutive row blocks.
std::vector<Tensor> concat_rows_backward(const Tensor& dy,
                                         std::span<const std::size_t> row_counts);

double sum(const Tensor& x);
double dot(const Tensor& a, const Tensor& b);

}  // namespace syntagraph
