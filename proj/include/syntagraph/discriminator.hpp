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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "syntagraph/conv.hpp"
#include "syntagraph/rng.hpp"
#include "syntagraph/tensor.hpp"

namespace syntagraph {

enum class LossFamily { LeastSquares, Hinge };

std::string_view loss_family_code(LossFamily f);  // "lsgan" / "hinge"
LossFamily loss_family_from_code(std::string_view code);

// Frames x mel bins.
struct MelSpectrogram {
  Tensor frames;

  std::size_t num_frames() const { return frames.rows(); }
  std::size_t n_mels() const { return frames.cols(); }
};

// Rank-2, finite. Throws ShapeError / NumericError.
MelSpectrogram make_mel(Tensor frames);

struct DiscriminatorConfig {
  std::vector<std::size_t> windows{32, 64, 128};
  std::size_t n_mels = 80;
  // Convolutions after the first; the first is not followed by instance norm.
  std::size_t normed_layers = 2;
  std::size_t channels = 32;
  std::size_t kernel = 3;
  // One stride per conv layer (normed_layers + 1 entries).
  std::vector<std::size_t> strides{2, 2, 2};
  std::size_t padding = 1;
  double leaky_slope = 0.2;
  double dropout = 0.1;
  double norm_eps = 1e-5;
  LossFamily loss = LossFamily::LeastSquares;

  std::size_t conv_layers() const { return normed_layers + 1; }
  friend bool operator==(const DiscriminatorConfig&, const DiscriminatorConfig&) = default;
};

void validate_config(const DiscriminatorConfig& config);

// Parameters of the CNN that scores clips of one window length.
struct WindowDiscriminator {
  std::size_t window = 0;
  std::vector<Tensor> kernels;  // [C_out x C_in x k x k]
  std::vector<Tensor> biases;   // [C_out]
  Tensor linear_weight;         // [flattened features]
  Tensor linear_bias;           // [1]

  friend bool operator==(const WindowDiscriminator&, const WindowDiscriminator&) = default;
};

struct DiscriminatorParams {
  DiscriminatorConfig config;
  std::vector<WindowDiscriminator> discriminators;  // one per config.windows entry

  friend bool operator==(const DiscriminatorParams&, const DiscriminatorParams&) = default;
};

// Flattened feature count feeding the linear head for a given window.
std::size_t feature_size(const DiscriminatorConfig& config, std::size_t window);

DiscriminatorParams zero_discriminator_params(const DiscriminatorConfig& config);
// Kernels and linear weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)); biases zero.
DiscriminatorParams init_discriminator_params(const DiscriminatorConfig& config, Rng& rng);

// Visits every tensor as ("w32.conv0.kernel", tensor) etc. in a fixed order.
template <typename Params, typename F>
void for_each_discriminator_param(Params& params, F&& f);

std::size_t parameter_count(const DiscriminatorParams& params);
std::vector<double> flatten(const DiscriminatorParams& params);
void unflatten(DiscriminatorParams& params, std::span<const double> values);

// {"w32.conv0.kernel": tensor, ...}; the loader requires the exact key set.
nlohmann::ordered_json discriminator_params_to_json(const DiscriminatorParams& params);
DiscriminatorParams discriminator_params_from_json(const nlohmann::ordered_json& j,
                                                   const DiscriminatorConfig& config);

struct WindowSample {
  std::size_t start = 0;
  Tensor clip;  // [window x n_mels]
};

// Uniform start in [0, T - window]; std::nullopt (and no draw) when the
// spectrogram is shorter than the window.
std::optional<WindowSample> sample_window(const MelSpectrogram& mel, std::size_t window,
                                          Rng& rng);

struct ConvLayerTrace {
  Tensor input;
  Tensor preactivation;  // conv output
  Tensor activated;      // after leaky ReLU
  Tensor mask;           // dropout multipliers; empty when dropout is inactive
  Tensor dropped;        // after dropout
  Tensor output;         // after instance norm (== dropped for layer 0)
};

struct DiscriminatorTrace {
  std::vector<ConvLayerTrace> layers;
  Tensor features;  // flattened output of the last conv block
};

// Clip viewed as a 1 x window x n_mels image; conv -> leaky ReLU -> dropout,
// plus instance norm on every layer after the first; flatten -> linear.
double disc_forward(const Tensor& clip, const WindowDiscriminator& params,
                    const DiscriminatorConfig& config, Rng& rng, bool training,
                    DiscriminatorTrace* trace = nullptr);

struct DiscriminatorGrad {
  WindowDiscriminator dparams;
  Tensor dclip;
};

DiscriminatorGrad disc_backward(const WindowDiscriminator& params,
                                const DiscriminatorConfig& config,
                                const DiscriminatorTrace& trace, double dscore);

// Smallest |pre-activation| seen by any leaky ReLU in the trace.
double min_abs_preactivation(const DiscriminatorTrace& trace);

struct ScoreLosses {
  double d_loss = 0.0;
  double g_loss = 0.0;
  // Partial derivatives of d_loss / g_loss with respect to the two scores.
  double dd_dreal = 0.0;
  double dd_dfake = 0.0;
  double dg_dfake = 0.0;
};

// LSGAN: d = ((r - 1)^2 + f^2) / 2, g = (f - 1)^2 / 2.
// Hinge: d = max(0, 1 - r) + max(0, 1 + f), g = -f.
ScoreLosses score_losses(LossFamily family, double real_score, double fake_score);

struct WindowResult {
  std::size_t window = 0;
  std::size_t real_start = 0;
  std::size_t fake_start = 0;
  double real_score = 0.0;
  double fake_score = 0.0;
  double d_loss = 0.0;
  double g_loss = 0.0;
  // Distance of the nearest leaky ReLU input to its kink, over both clips.
  double min_abs_preactivation = 0.0;
};

struct AdversarialResult {
  double d_loss = 0.0;  // mean over active windows
  double g_loss = 0.0;
  std::vector<WindowResult> per_window;
};

struct AdversarialGradients {
  DiscriminatorParams dparams_d_loss;  // d(d_loss)/d(params)
  Tensor dfake_g_loss;                 // d(g_loss)/d(fake frames)
};

// Windows longer than either spectrogram are skipped; InputTooShortError when
// none remains. Per active window: draw the real start, the fake start, then
// score real and fake (dropout draws, if training, in that order).
AdversarialResult adversarial_losses(const MelSpectrogram& real, const MelSpectrogram& fake,
                                     const DiscriminatorParams& params, Rng& rng,
                                     bool training = true,
                                     AdversarialGradients* gradients = nullptr);

// Windows of `config` that fit a spectrogram of `frames` frames.
std::vector<std::size_t> active_windows(const DiscriminatorConfig& config,
                                        std::size_t frames);

template <typename Params, typename F>
void for_each_discriminator_param(Params& params, F&& f) {
  for (auto& disc : params.discriminators) {
    const std::string prefix = "w" + std::to_string(disc.window) + ".";
    for (std::size_t l = 0; l < disc.kernels.size(); ++l) {
      f(prefix + "conv" + std::to_string(l) + ".kernel", disc.kernels[l]);
      f(prefix + "conv" + std::to_string(l) + ".bias", disc.biases[l]);
    }
    f(prefix + "linear.weight", disc.linear_weight);
    f(prefix + "linear.bias", disc.linear_bias);
  }
}

}  // namespace syntagraph
