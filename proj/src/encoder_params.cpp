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

#include "syntagraph/encoder_params.hpp"

#include <cmath>
#include <set>

#include "syntagraph/error.hpp"

namespace syntagraph {
namespace {

GraphEncoderParams shaped_params(const EncoderConfig& config) {
  if (config.hidden == 0) throw ConfigError("hidden size must be >= 1");
  if (config.layers == 0) throw ConfigError("encoder needs at least one layer");
  if (config.iterations == 0) throw ConfigError("iterations must be >= 1");
  const std::size_t d = config.hidden;
  const Shape mat{d, d}, vec{d};
  GraphEncoderParams p;
  p.config = config;
  p.e_bos = Tensor(vec);
  p.e_eos = Tensor(vec);
  p.layers.resize(config.layers);
  for (GgnnLayerParams& layer : p.layers) {
    for (EdgeType t : edge_types_for(config.language)) {
      layer.message_weight.emplace(t, Tensor(mat));
      layer.message_bias.emplace(t, Tensor(vec));
    }
    layer.w_z = layer.u_z = layer.w_r = layer.u_r = layer.w_h = layer.u_h = Tensor(mat);
    layer.b_z = layer.b_r = layer.b_h = Tensor(vec);
  }
  return p;
}

bool is_bias_name(const std::string& name) {
  const auto dot = name.rfind('.');
  const std::string leaf = dot == std::string::npos ? name : name.substr(dot + 1);
  return leaf.rfind("b_", 0) == 0;
}

}  // namespace

GraphEncoderParams zero_encoder_params(const EncoderConfig& config) {
  return shaped_params(config);
}

GraphEncoderParams init_encoder_params(const EncoderConfig& config, Rng& rng) {
  GraphEncoderParams p = shaped_params(config);
  const double bound = 1.0 / std::sqrt(static_cast<double>(config.hidden));
  for_each_param(p, [&](const std::string& name, Tensor& t) {
    if (is_bias_name(name)) return;
    for (double& v : t.data()) v = rng.uniform(-bound, bound);
  });
  return p;
}

std::vector<std::string> encoder_param_names(const EncoderConfig& config) {
  EncoderConfig tiny = config;
  tiny.hidden = 1;
  const GraphEncoderParams p = shaped_params(tiny);
  std::vector<std::string> names;
  for_each_param(p, [&](const std::string& name, const Tensor&) { names.push_back(name); });
  return names;
}

std::size_t parameter_count(const GraphEncoderParams& params) {
  std::size_t n = 0;
  for_each_param(params, [&](const std::string&, const Tensor& t) { n += t.size(); });
  return n;
}

void validate_encoder_params(const GraphEncoderParams& params) {
  const GraphEncoderParams expected = shaped_params(params.config);
  if (params.layers.size() != expected.layers.size()) {
    throw ConfigError("encoder has " + std::to_string(params.layers.size()) +
                      " layers, config says " + std::to_string(expected.layers.size()));
  }
  std::vector<std::pair<std::string, Shape>> want;
  for_each_param(expected, [&](const std::string& name, const Tensor& t) {
    want.emplace_back(name, t.shape());
  });
  std::size_t i = 0;
  bool mismatch = false;
  for_each_param(params, [&](const std::string& name, const Tensor& t) {
    if (i >= want.size() || want[i].first != name) {
      mismatch = true;
    } else if (t.shape() != want[i].second) {
      throw ConfigError("parameter " + name + " has shape " +
                        shape_to_string(t.shape()) + ", expected " +
                        shape_to_string(want[i].second));
    }
    ++i;
  });
  if (mismatch || i != want.size()) {
    throw ConfigError("encoder edge-type set does not match language " +
                      std::string(language_code(params.config.language)));
  }
}

nlohmann::ordered_json encoder_params_to_json(const GraphEncoderParams& params) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for_each_param(params, [&](const std::string& name, const Tensor& t) {
    j[name] = tensor_to_json(t);
  });
  return j;
}

GraphEncoderParams encoder_params_from_json(const nlohmann::ordered_json& j,
                                            const EncoderConfig& config) {
  if (!j.is_object()) throw ParseError(0, "encoder parameter file must be a JSON object");
  GraphEncoderParams p = shaped_params(config);
  std::set<std::string> expected;
  for_each_param(p, [&](const std::string& name, Tensor& t) {
    expected.insert(name);
    if (!j.contains(name)) throw ConfigError("missing parameter key \"" + name + "\"");
    Tensor loaded = tensor_from_json(j.at(name));
    if (loaded.shape() != t.shape()) {
      throw ConfigError("parameter " + name + " has shape " +
                        shape_to_string(loaded.shape()) + ", expected " +
                        shape_to_string(t.shape()));
    }
    t = std::move(loaded);
  });
  for (const auto& [key, value] : j.items()) {
    if (key == "schema_version" || key == "config") continue;
    if (!expected.count(key)) {
      throw ConfigError("unexpected parameter key \"" + key + "\" for language " +
                        std::string(language_code(config.language)));
    }
  }
  return p;
}

std::vector<double> flatten(const GraphEncoderParams& params) {
  std::vector<double> out;
  out.reserve(parameter_count(params));
  for_each_param(params, [&](const std::string&, const Tensor& t) {
    out.insert(out.end(), t.values().begin(), t.values().end());
  });
  return out;
}

void unflatten(GraphEncoderParams& params, std::span<const double> values) {
  if (values.size() != parameter_count(params)) {
    throw ShapeError("unflatten: expected " + std::to_string(parameter_count(params)) +
                     " values, got " + std::to_string(values.size()));
  }
  std::size_t cursor = 0;
  for_each_param(params, [&](const std::string&, Tensor& t) {
    for (double& v : t.data()) v = values[cursor++];
  });
}

}  // namespace syntagraph
