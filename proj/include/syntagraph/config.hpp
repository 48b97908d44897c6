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
#include <cstdint>

#include "json.hpp"
#include "syntagraph/discriminator.hpp"
#include "syntagraph/encoder_params.hpp"
#include "syntagraph/speaker.hpp"

namespace syntagraph {

inline constexpr int kSchemaVersion = 1;

// Resolved settings of one command run. Embedded in every output file.
struct Config {
  EncoderConfig encoder;
  DiscriminatorConfig discriminator;
  std::size_t encoders = 2;
  std::size_t speakers = kDefaultSpeakers;
  std::uint64_t seed = 0;
};

nlohmann::ordered_json config_to_json(const Config& config);
// Inverse of config_to_json; absent fields keep their defaults.
Config config_from_json(const nlohmann::ordered_json& j);

}  // namespace syntagraph
