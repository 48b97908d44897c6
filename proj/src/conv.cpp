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

#include "syntagraph/conv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "syntagraph/error.hpp"
#include "syntagraph/ops.hpp"

namespace syntagraph {
namespace {

struct ConvDims {
  std::size_t c_in, h, w, c_out, kh, kw, oh, ow;
};

ConvDims check_conv(const Tensor& input, const Tensor& kernel,
                    const Conv2dGeometry& geo) {
  if (input.rank() != 3) {
    throw ShapeError("conv2d: input must be [C x H x W], got " +
                     shape_to_string(input.shape()));
  }
  if (kernel.rank() != 4) {
    throw ShapeError("conv2d: kernel must be [C_out x C_in x kh x kw], got " +
                     shape_to_string(kernel.shape()));
  }
  if (kernel.dim(1) != input.dim(0)) {
    throw ShapeError("conv2d: kernel " + shape_to_string(kernel.shape()) +
                     " does not match input channels of " +
                     shape_to_string(input.shape()));
  }
  if (geo.stride == 0) throw ShapeError("conv2d: stride must be >= 1");
  ConvDims d{input.dim(0), input.dim(1), input.dim(2), kernel.dim(0),
             kernel.dim(2), kernel.dim(3), 0, 0};
  d.oh = conv_output_extent(d.h, d.kh, geo);
  d.ow = conv_output_extent(d.w, d.kw, geo);
  return d;
}

// Visits every (output, input, kernel) tap triple in the canonical order.
template <typename F>
void for_each_tap(const ConvDims& d, const Conv2dGeometry& geo, F&& f) {
  const auto pad = static_cast<std::ptrdiff_t>(geo.padding);
  for (std::size_t co = 0; co < d.c_out; ++co) {
    for (std::size_t oy = 0; oy < d.oh; ++oy) {
      for (std::size_t ox = 0; ox < d.ow; ++ox) {
        const std::size_t out_idx = (co * d.oh + oy) * d.ow + ox;
        const std::ptrdiff_t y0 = static_cast<std::ptrdiff_t>(oy * geo.stride) - pad;
        const std::ptrdiff_t x0 = static_cast<std::ptrdiff_t>(ox * geo.stride) - pad;
        // Clip the kernel window to the unpadded image once per output.
        const std::size_t ky_lo = y0 < 0 ? static_cast<std::size_t>(-y0) : 0;
        const std::size_t kx_lo = x0 < 0 ? static_cast<std::size_t>(-x0) : 0;
        const std::ptrdiff_t y_room = static_cast<std::ptrdiff_t>(d.h) - y0;
        const std::ptrdiff_t x_room = static_cast<std::ptrdiff_t>(d.w) - x0;
        const std::size_t ky_hi =
            y_room <= 0 ? 0 : std::min<std::size_t>(d.kh, static_cast<std::size_t>(y_room));
        const std::size_t kx_hi =
            x_room <= 0 ? 0 : std::min<std::size_t>(d.kw, static_cast<std::size_t>(x_room));
        for (std::size_t ci = 0; ci < d.c_in; ++ci) {
          const std::size_t k_base = (co * d.c_in + ci) * d.kh;
          for (std::size_t ky = ky_lo; ky < ky_hi; ++ky) {
            const std::size_t iy = static_cast<std::size_t>(y0 + static_cast<std::ptrdiff_t>(ky));
            const std::size_t in_row = (ci * d.h + iy) * d.w;
            const std::size_t k_row = (k_base + ky) * d.kw;
            for (std::size_t kx = kx_lo; kx < kx_hi; ++kx) {
              const std::size_t ix = static_cast<std::size_t>(x0 + static_cast<std::ptrdiff_t>(kx));
              f(out_idx, in_row + ix, k_row + kx);
            }
          }
        }
      }
    }
  }
}

}  // namespace

std::size_t conv_output_extent(std::size_t in, std::size_t kernel,
                               const Conv2dGeometry& geo) {
  if (geo.stride == 0) throw ShapeError("conv2d: stride must be >= 1");
  const std::size_t padded = in + 2 * geo.padding;
  if (kernel == 0 || kernel > padded) {
    throw ShapeError("conv2d: kernel extent " + std::to_string(kernel) +
                     " exceeds padded input extent " + std::to_string(padded));
  }
  return (padded - kernel) / geo.stride + 1;
}

Tensor conv2d(const Tensor& input, const Tensor& kernel,
              const Conv2dGeometry& geo) {
  const ConvDims d = check_conv(input, kernel, geo);
  Tensor out({d.c_out, d.oh, d.ow});
  const auto in = input.data();
  const auto k = kernel.data();
  auto o = out.data();
  for_each_tap(d, geo, [&](std::size_t oi, std::size_t ii, std::size_t ki) {
    o[oi] += in[ii] * k[ki];
  });
  return out;
}

Tensor conv2d(const Tensor& input, const Tensor& kernel, const Tensor& bias,
              const Conv2dGeometry& geo) {
  Tensor out = conv2d(input, kernel, geo);
  const std::size_t c_out = out.dim(0);
  if (bias.size() != c_out) {
    throw ShapeError("conv2d: bias " + shape_to_string(bias.shape()) +
                     " does not match " + std::to_string(c_out) +
                     " output channels");
  }
  const std::size_t plane = out.dim(1) * out.dim(2);
  for (std::size_t c = 0; c < c_out; ++c) {
    for (std::size_t i = 0; i < plane; ++i) out[c * plane + i] += bias[c];
  }
  return out;
}

Conv2dGrad conv2d_backward(const Tensor& input, const Tensor& kernel,
                           const Conv2dGeometry& geo, const Tensor& doutput) {
  const ConvDims d = check_conv(input, kernel, geo);
  if (doutput.shape() != Shape{d.c_out, d.oh, d.ow}) {
    throw ShapeError("conv2d_backward: gradient " +
                     shape_to_string(doutput.shape()) + " does not match output " +
                     shape_to_string(Shape{d.c_out, d.oh, d.ow}));
  }
  Conv2dGrad g{Tensor(input.shape()), Tensor(kernel.shape()), Tensor({d.c_out})};
  const auto in = input.data();
  const auto k = kernel.data();
  const auto dy = doutput.data();
  auto dx = g.dinput.data();
  auto dk = g.dkernel.data();
  for_each_tap(d, geo, [&](std::size_t oi, std::size_t ii, std::size_t ki) {
    dx[ii] += dy[oi] * k[ki];
    dk[ki] += dy[oi] * in[ii];
  });
  const std::size_t plane = d.oh * d.ow;
  for (std::size_t c = 0; c < d.c_out; ++c) {
    for (std::size_t i = 0; i < plane; ++i) g.dbias[c] += dy[c * plane + i];
  }
  return g;
}

Tensor instance_norm(const Tensor& input, double eps) {
  if (input.rank() != 3) {
    throw ShapeError("instance_norm: input must be [C x H x W], got " +
                     shape_to_string(input.shape()));
  }
  const std::size_t channels = input.dim(0);
  const std::size_t plane = input.dim(1) * input.dim(2);
  const double n = static_cast<double>(plane);
  Tensor out(input.shape());
  for (std::size_t c = 0; c < channels; ++c) {
    const double* x = input.data().data() + c * plane;
    double* y = out.data().data() + c * plane;
    double mean = 0.0;
    for (std::size_t i = 0; i < plane; ++i) mean += x[i];
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < plane; ++i) var += (x[i] - mean) * (x[i] - mean);
    var /= n;
    const double inv_std = 1.0 / std::sqrt(var + eps);
    for (std::size_t i = 0; i < plane; ++i) y[i] = (x[i] - mean) * inv_std;
  }
  return out;
}

Tensor instance_norm_backward(const Tensor& input, double eps,
                              const Tensor& doutput) {
  if (doutput.shape() != input.shape()) {
    throw ShapeError("instance_norm_backward: gradient " +
                     shape_to_string(doutput.shape()) + " vs input " +
                     shape_to_string(input.shape()));
  }
  const Tensor y = instance_norm(input, eps);
  const std::size_t channels = input.dim(0);
  const std::size_t plane = input.dim(1) * input.dim(2);
  const double n = static_cast<double>(plane);
  Tensor dx(input.shape());
  for (std::size_t c = 0; c < channels; ++c) {
    const std::size_t base = c * plane;
    double mean = 0.0;
    for (std::size_t i = 0; i < plane; ++i) mean += input[base + i];
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < plane; ++i) {
      var += (input[base + i] - mean) * (input[base + i] - mean);
    }
    var /= n;
    const double inv_std = 1.0 / std::sqrt(var + eps);
    double mean_dy = 0.0, mean_dy_y = 0.0;
    for (std::size_t i = 0; i < plane; ++i) {
      mean_dy += doutput[base + i];
      mean_dy_y += doutput[base + i] * y[base + i];
    }
    mean_dy /= n;
    mean_dy_y /= n;
    for (std::size_t i = 0; i < plane; ++i) {
      dx[base + i] =
          inv_std * (doutput[base + i] - mean_dy - y[base + i] * mean_dy_y);
    }
  }
  return dx;
}

Tensor dropout_mask(const Shape& shape, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw ConfigError("dropout rate must lie in [0, 1), got " +
                      std::to_string(rate));
  }
  Tensor mask(shape);
  const double keep_scale = 1.0 / (1.0 - rate);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = rng.uniform() < rate ? 0.0 : keep_scale;
  }
  return mask;
}

Tensor dropout(const Tensor& input, double rate, Rng& rng, bool training) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw ConfigError("dropout rate must lie in [0, 1), got " +
                      std::to_string(rate));
  }
  if (!training || rate == 0.0) return input;
  return mul(input, dropout_mask(input.shape(), rate, rng));
}

}  // namespace syntagraph
