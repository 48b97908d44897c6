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

#include "syntagraph/config.hpp"

#include <string>

#include "syntagraph/error.hpp"

namespace syntagraph {

nlohmann::ordered_json config_to_json(const Config& config) {
  const EncoderConfig& e = config.encoder;
  const DiscriminatorConfig& d = config.discriminator;
  nlohmann::ordered_json j;
  j["language"] = std::string(language_code(e.language));
  j["hidden"] = e.hidden;
  j["layers"] = e.layers;
  j["iterations"] = e.iterations;
  j["sum_includes_input"] = e.sum_includes_input;
  j["encoders"] = config.encoders;
  j["speakers"] = config.speakers;
  j["windows"] = d.windows;
  j["n_mels"] = d.n_mels;
  j["conv_layers"] = d.conv_layers();
  j["channels"] = d.channels;
  j["kernel"] = d.kernel;
  j["strides"] = d.strides;
  j["padding"] = d.padding;
  j["leaky_slope"] = d.leaky_slope;
  j["dropout"] = d.dropout;
  j["norm_eps"] = d.norm_eps;
  j["loss"] = std::string(loss_family_code(d.loss));
  j["seed"] = config.seed;
  return j;
}

Config config_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  Config c;
  try {
    EncoderConfig& e = c.encoder;
    DiscriminatorConfig& d = c.discriminator;
    if (j.contains("language")) e.language = language_from_code(j.at("language").get<std::string>());
    e.hidden = j.value("hidden", e.hidden);
    e.layers = j.value("layers", e.layers);
    e.iterations = j.value("iterations", e.iterations);
    e.sum_includes_input = j.value("sum_includes_input", e.sum_includes_input);
    c.encoders = j.value("encoders", c.encoders);
    c.speakers = j.value("speakers", c.speakers);
    d.windows = j.value("windows", d.windows);
    d.n_mels = j.value("n_mels", d.n_mels);
    if (j.contains("conv_layers")) {
      const auto n = j.at("conv_layers").get<std::size_t>();
      if (n == 0) throw ConfigError("conv_layers must be at least 1");
      d.normed_layers = n - 1;
    }
    d.channels = j.value("channels", d.channels);
    d.kernel = j.value("kernel", d.kernel);
    d.strides = j.value("strides", std::vector<std::size_t>(d.conv_layers(), 2));
    d.padding = j.value("padding", d.padding);
    d.leaky_slope = j.value("leaky_slope", d.leaky_slope);
    d.dropout = j.value("dropout", d.dropout);
    d.norm_eps = j.value("norm_eps", d.norm_eps);
    if (j.contains("loss")) d.loss = loss_family_from_code(j.at("loss").get<std::string>());
    c.seed = j.value("seed", c.seed);
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("malformed config: ") + ex.what());
  }
  return c;
}

}  // namespace syntagraph
