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

#include "syntagraph/discriminator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "syntagraph/error.hpp"
#include "syntagraph/ops.hpp"

namespace syntagraph {
namespace {

Conv2dGeometry layer_geometry(const DiscriminatorConfig& config, std::size_t l) {
  return Conv2dGeometry{config.strides[l], config.padding};
}

std::size_t in_channels(const DiscriminatorConfig& config, std::size_t l) {
  return l == 0 ? 1 : config.channels;
}

WindowDiscriminator shaped_window(const DiscriminatorConfig& config, std::size_t window) {
  WindowDiscriminator w;
  w.window = window;
  const std::size_t k = config.kernel;
  for (std::size_t l = 0; l < config.conv_layers(); ++l) {
    w.kernels.emplace_back(Shape{config.channels, in_channels(config, l), k, k});
    w.biases.emplace_back(Shape{config.channels});
  }
  w.linear_weight = Tensor({feature_size(config, window)});
  w.linear_bias = Tensor({1});
  return w;
}

void check_clip(const Tensor& clip, const WindowDiscriminator& params,
                const DiscriminatorConfig& config) {
  if (clip.shape() != Shape{params.window, config.n_mels}) {
    throw ShapeError("discriminator for window " + std::to_string(params.window) +
                     " expects a clip of shape " +
                     shape_to_string(Shape{params.window, config.n_mels}) + ", got " +
                     shape_to_string(clip.shape()));
  }
}

template <typename Params>
auto& find_window(Params& params, std::size_t window) {
  for (auto& d : params.discriminators) {
    if (d.window == window) return d;
  }
  throw LookupError("no discriminator for window " + std::to_string(window));
}

void accumulate(WindowDiscriminator& acc, const WindowDiscriminator& g, double s) {
  for (std::size_t l = 0; l < acc.kernels.size(); ++l) {
    add_inplace(acc.kernels[l], scale(g.kernels[l], s));
    add_inplace(acc.biases[l], scale(g.biases[l], s));
  }
  add_inplace(acc.linear_weight, scale(g.linear_weight, s));
  add_inplace(acc.linear_bias, scale(g.linear_bias, s));
}

}  // namespace

std::string_view loss_family_code(LossFamily f) {
  return f == LossFamily::LeastSquares ? "lsgan" : "hinge";
}

LossFamily loss_family_from_code(std::string_view code) {
  if (code == "lsgan") return LossFamily::LeastSquares;
  if (code == "hinge") return LossFamily::Hinge;
  throw ConfigError("unknown loss family \"" + std::string(code) + "\" (expected lsgan|hinge)");
}

MelSpectrogram make_mel(Tensor frames) {
  if (frames.rank() != 2 || frames.rows() == 0 || frames.cols() == 0) {
    throw ShapeError("mel-spectrogram must have shape [T_frames, n_mels] with both >= 1, got " +
                     shape_to_string(frames.shape()));
  }
  if (!frames.all_finite()) throw NumericError("mel-spectrogram contains NaN or Inf");
  return MelSpectrogram{std::move(frames)};
}

void validate_config(const DiscriminatorConfig& config) {
  if (config.windows.empty()) throw ConfigError("discriminator needs at least one window");
  std::set<std::size_t> seen;
  for (std::size_t w : config.windows) {
    if (w == 0) throw ConfigError("window length must be positive");
    if (!seen.insert(w).second) {
      throw ConfigError("duplicate window length " + std::to_string(w));
    }
  }
  if (config.n_mels == 0) throw ConfigError("n_mels must be positive");
  if (config.channels == 0) throw ConfigError("channel count must be positive");
  if (config.kernel == 0) throw ConfigError("kernel size must be positive");
  if (config.strides.size() != config.conv_layers()) {
    throw ConfigError("expected " + std::to_string(config.conv_layers()) +
                      " conv strides, got " + std::to_string(config.strides.size()));
  }
  for (std::size_t s : config.strides) {
    if (s == 0) throw ConfigError("conv stride must be positive");
  }
  if (!(config.dropout >= 0.0 && config.dropout < 1.0)) {
    throw ConfigError("dropout rate must lie in [0, 1)");
  }
  if (!(config.norm_eps > 0.0)) throw ConfigError("instance-norm eps must be positive");
  if (!std::isfinite(config.leaky_slope)) throw ConfigError("leaky slope must be finite");
}

std::size_t feature_size(const DiscriminatorConfig& config, std::size_t window) {
  std::size_t h = window, w = config.n_mels;
  for (std::size_t l = 0; l < config.conv_layers(); ++l) {
    const Conv2dGeometry geo = layer_geometry(config, l);
    h = conv_output_extent(h, config.kernel, geo);
    w = conv_output_extent(w, config.kernel, geo);
  }
  return config.channels * h * w;
}

DiscriminatorParams zero_discriminator_params(const DiscriminatorConfig& config) {
  validate_config(config);
  DiscriminatorParams p{config, {}};
  for (std::size_t w : config.windows) p.discriminators.push_back(shaped_window(config, w));
  return p;
}

DiscriminatorParams init_discriminator_params(const DiscriminatorConfig& config, Rng& rng) {
  DiscriminatorParams p = zero_discriminator_params(config);
  const double k2 = static_cast<double>(config.kernel * config.kernel);
  for (auto& d : p.discriminators) {
    for (std::size_t l = 0; l < d.kernels.size(); ++l) {
      const double bound = 1.0 / std::sqrt(static_cast<double>(in_channels(config, l)) * k2);
      for (double& v : d.kernels[l].data()) v = rng.uniform(-bound, bound);
    }
    const double bound = 1.0 / std::sqrt(static_cast<double>(d.linear_weight.size()));
    for (double& v : d.linear_weight.data()) v = rng.uniform(-bound, bound);
  }
  return p;
}

std::size_t parameter_count(const DiscriminatorParams& params) {
  std::size_t n = 0;
  for_each_discriminator_param(params, [&](const std::string&, const Tensor& t) { n += t.size(); });
  return n;
}

std::vector<double> flatten(const DiscriminatorParams& params) {
  std::vector<double> out;
  out.reserve(parameter_count(params));
  for_each_discriminator_param(params, [&](const std::string&, const Tensor& t) {
    out.insert(out.end(), t.values().begin(), t.values().end());
  });
  return out;
}

void unflatten(DiscriminatorParams& params, std::span<const double> values) {
  if (values.size() != parameter_count(params)) {
    throw ShapeError("unflatten: expected " + std::to_string(parameter_count(params)) +
                     " values, got " + std::to_string(values.size()));
  }
  std::size_t cursor = 0;
  for_each_discriminator_param(params, [&](const std::string&, Tensor& t) {
    for (double& v : t.data()) v = values[cursor++];
  });
}

nlohmann::ordered_json discriminator_params_to_json(const DiscriminatorParams& params) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for_each_discriminator_param(params, [&](const std::string& name, const Tensor& t) {
    j[name] = tensor_to_json(t);
  });
  return j;
}

DiscriminatorParams discriminator_params_from_json(const nlohmann::ordered_json& j,
                                                   const DiscriminatorConfig& config) {
  if (!j.is_object()) {
    throw ParseError(0, "discriminator parameter file must be a JSON object");
  }
  DiscriminatorParams p = zero_discriminator_params(config);
  std::set<std::string> expected;
  for_each_discriminator_param(p, [&](const std::string& name, Tensor& t) {
    expected.insert(name);
    if (!j.contains(name)) throw ConfigError("missing parameter key \"" + name + "\"");
    Tensor loaded = tensor_from_json(j.at(name));
    if (loaded.shape() != t.shape()) {
      throw ConfigError("parameter " + name + " has shape " + shape_to_string(loaded.shape()) +
                        ", expected " + shape_to_string(t.shape()));
    }
    t = std::move(loaded);
  });
  for (const auto& [key, value] : j.items()) {
    if (key == "schema_version" || key == "config") continue;
    if (!expected.count(key)) throw ConfigError("unexpected parameter key \"" + key + "\"");
  }
  return p;
}

std::optional<WindowSample> sample_window(const MelSpectrogram& mel, std::size_t window,
                                          Rng& rng) {
  if (window == 0) throw ConfigError("window length must be positive");
  const std::size_t t = mel.num_frames();
  if (t < window) return std::nullopt;
  const auto start =
      static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(t - window)));
  const std::size_t m = mel.n_mels();
  const auto src = mel.frames.values();
  std::vector<double> clip(src.begin() + static_cast<std::ptrdiff_t>(start * m),
                           src.begin() + static_cast<std::ptrdiff_t>((start + window) * m));
  return WindowSample{start, Tensor({window, m}, std::move(clip))};
}

double disc_forward(const Tensor& clip, const WindowDiscriminator& params,
                    const DiscriminatorConfig& config, Rng& rng, bool training,
                    DiscriminatorTrace* trace) {
  check_clip(clip, params, config);
  if (trace) trace->layers.clear();
  const bool drop = training && config.dropout > 0.0;
  Tensor x = clip.reshaped({1, params.window, config.n_mels});
  for (std::size_t l = 0; l < config.conv_layers(); ++l) {
    ConvLayerTrace t;
    t.input = x;
    t.preactivation =
        conv2d(x, params.kernels[l], params.biases[l], layer_geometry(config, l));
    t.activated = leaky_relu(t.preactivation, config.leaky_slope);
    if (drop) {
      t.mask = dropout_mask(t.activated.shape(), config.dropout, rng);
      t.dropped = mul(t.activated, t.mask);
    } else {
      t.dropped = t.activated;
    }
    t.output = l == 0 ? t.dropped : instance_norm(t.dropped, config.norm_eps);
    x = t.output;
    if (trace) trace->layers.push_back(std::move(t));
  }
  const Tensor features = x.reshaped({x.size()});
  if (features.size() != params.linear_weight.size()) {
    throw ShapeError("linear head expects " + std::to_string(params.linear_weight.size()) +
                     " features, got " + std::to_string(features.size()));
  }
  if (trace) trace->features = features;
  return dot(params.linear_weight, features) + params.linear_bias[0];
}

DiscriminatorGrad disc_backward(const WindowDiscriminator& params,
                                const DiscriminatorConfig& config,
                                const DiscriminatorTrace& trace, double dscore) {
  if (trace.layers.size() != config.conv_layers()) {
    throw ShapeError("disc_backward: trace has " + std::to_string(trace.layers.size()) +
                     " layers, expected " + std::to_string(config.conv_layers()));
  }
  DiscriminatorGrad g;
  g.dparams = shaped_window(config, params.window);
  g.dparams.linear_weight = scale(trace.features, dscore);
  g.dparams.linear_bias[0] = dscore;
  Tensor dx = scale(params.linear_weight, dscore).reshaped(trace.layers.back().output.shape());
  for (std::size_t l = config.conv_layers(); l-- > 0;) {
    const ConvLayerTrace& t = trace.layers[l];
    Tensor ddropped = l == 0 ? dx : instance_norm_backward(t.dropped, config.norm_eps, dx);
    Tensor dact = t.mask.shape().empty() ? ddropped : mul(ddropped, t.mask);
    Tensor dpre = leaky_relu_backward(t.preactivation, dact, config.leaky_slope);
    Conv2dGrad cg = conv2d_backward(t.input, params.kernels[l], layer_geometry(config, l), dpre);
    g.dparams.kernels[l] = std::move(cg.dkernel);
    g.dparams.biases[l] = std::move(cg.dbias);
    dx = std::move(cg.dinput);
  }
  g.dclip = dx.reshaped({params.window, config.n_mels});
  return g;
}

double min_abs_preactivation(const DiscriminatorTrace& trace) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : trace.layers) {
    for (double v : t.preactivation.values()) m = std::min(m, std::abs(v));
  }
  return m;
}

ScoreLosses score_losses(LossFamily family, double real_score, double fake_score) {
  ScoreLosses s;
  if (family == LossFamily::LeastSquares) {
    const double r = real_score - 1.0;
    const double gf = fake_score - 1.0;
    s.d_loss = 0.5 * (r * r + fake_score * fake_score);
    s.g_loss = 0.5 * gf * gf;
    s.dd_dreal = r;
    s.dd_dfake = fake_score;
    s.dg_dfake = gf;
  } else {
    const double real_margin = 1.0 - real_score;
    const double fake_margin = 1.0 + fake_score;
    s.d_loss = std::max(0.0, real_margin) + std::max(0.0, fake_margin);
    s.g_loss = -fake_score;
    s.dd_dreal = real_margin > 0.0 ? -1.0 : 0.0;
    s.dd_dfake = fake_margin > 0.0 ? 1.0 : 0.0;
    s.dg_dfake = -1.0;
  }
  return s;
}

std::vector<std::size_t> active_windows(const DiscriminatorConfig& config,
                                        std::size_t frames) {
  std::vector<std::size_t> out;
  for (std::size_t w : config.windows) {
    if (w <= frames) out.push_back(w);
  }
  return out;
}

AdversarialResult adversarial_losses(const MelSpectrogram& real, const MelSpectrogram& fake,
                                     const DiscriminatorParams& params, Rng& rng,
                                     bool training, AdversarialGradients* gradients) {
  const DiscriminatorConfig& config = params.config;
  if (real.n_mels() != fake.n_mels()) {
    throw ShapeError("real and fake spectrograms differ in mel bins: " +
                     std::to_string(real.n_mels()) + " vs " + std::to_string(fake.n_mels()));
  }
  if (real.n_mels() != config.n_mels) {
    throw ShapeError("spectrograms have " + std::to_string(real.n_mels()) +
                     " mel bins, discriminator expects " + std::to_string(config.n_mels));
  }
  const auto windows =
      active_windows(config, std::min(real.num_frames(), fake.num_frames()));
  if (windows.empty()) {
    throw InputTooShortError(
        "no discriminator window fits: real has " + std::to_string(real.num_frames()) +
        " frames, fake has " + std::to_string(fake.num_frames()) + ", shortest window is " +
        std::to_string(*std::min_element(config.windows.begin(), config.windows.end())));
  }

  const double inv = 1.0 / static_cast<double>(windows.size());
  if (gradients) {
    gradients->dparams_d_loss = zero_discriminator_params(config);
    gradients->dfake_g_loss = Tensor(fake.frames.shape());
  }
  AdversarialResult result;
  for (std::size_t w : windows) {
    const WindowDiscriminator& disc = find_window(params, w);
    const WindowSample real_clip = *sample_window(real, w, rng);
    const WindowSample fake_clip = *sample_window(fake, w, rng);
    DiscriminatorTrace real_trace, fake_trace;
    const double real_score =
        disc_forward(real_clip.clip, disc, config, rng, training, &real_trace);
    const double fake_score =
        disc_forward(fake_clip.clip, disc, config, rng, training, &fake_trace);
    const ScoreLosses s = score_losses(config.loss, real_score, fake_score);
    result.per_window.push_back(
        {w, real_clip.start, fake_clip.start, real_score, fake_score, s.d_loss, s.g_loss,
         std::min(min_abs_preactivation(real_trace), min_abs_preactivation(fake_trace))});

    if (gradients) {
      WindowDiscriminator& acc = find_window(gradients->dparams_d_loss, w);
      accumulate(acc, disc_backward(disc, config, real_trace, s.dd_dreal).dparams, inv);
      accumulate(acc, disc_backward(disc, config, fake_trace, s.dd_dfake).dparams, inv);
      const Tensor dclip = disc_backward(disc, config, fake_trace, s.dg_dfake).dclip;
      const std::size_t m = config.n_mels;
      auto dst = gradients->dfake_g_loss.data();
      const auto src = dclip.values();
      for (std::size_t i = 0; i < src.size(); ++i) dst[fake_clip.start * m + i] += inv * src[i];
    }
  }
  // Summed in window order, then divided once.
  for (const auto& r : result.per_window) {
    result.d_loss += r.d_loss;
    result.g_loss += r.g_loss;
  }
  result.d_loss /= static_cast<double>(windows.size());
  result.g_loss /= static_cast<double>(windows.size());
  return result;
}

}  // namespace syntagraph
