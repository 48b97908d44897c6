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

#include "syntagraph/rng.hpp"
#include "syntagraph/tensor.hpp"

namespace syntagraph {

struct Conv2dGeometry {
  std::size_t stride = 1;
  std::size_t padding = 0;
};

// Output extent along one axis: floor((in + 2p - k) / stride) + 1.
// Throws ShapeError when the padded input is smaller than the kernel.
std::size_t conv_output_extent(std::size_t in, std::size_t kernel,
                               const Conv2dGeometry& geo);

// Cross-correlation of a [C_in x H x W] image with a
// [C_out x C_in x kh x kw] kernel. Each output value is accumulated from 0.0
// over C_in, then kh, then kw (padding taps skipped), and the optional
// per-channel bias is added last.
Tensor conv2d(const Tensor& input, const Tensor& kernel,
              const Conv2dGeometry& geo);
Tensor conv2d(const Tensor& input, const Tensor& kernel, const Tensor& bias,
              const Conv2dGeometry& geo);

struct Conv2dGrad {
  Tensor dinput;
  Tensor dkernel;
  Tensor dbias;
};
Conv2dGrad conv2d_backward(const Tensor& input, const Tensor& kernel,
                           const Conv2dGeometry& geo, const Tensor& doutput);

// Per-channel (x - mean) / sqrt(var + eps) with the biased variance.
// No affine parameters.
Tensor instance_norm(const Tensor& input, double eps);
Tensor instance_norm_backward(const Tensor& input, double eps,
                              const Tensor& doutput);

// Inverted-dropout multipliers: 0 with probability `rate`, otherwise
// 1 / (1 - rate). One uniform draw per element in row-major order.
Tensor dropout_mask(const Shape& shape, double rate, Rng& rng);
// Identity when `training` is false (and no random numbers are drawn).
Tensor dropout(const Tensor& input, double rate, Rng& rng, bool training);

}  // namespace syntagraph
