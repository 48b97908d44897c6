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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

// Property suites shared by `syntagraph selftest`, `syntagraph gradcheck`
// and the acceptance binary.
namespace syntagraph::verify {

inline constexpr std::uint64_t kDefaultSeed = 20220603;
inline constexpr double kGradientTolerance = 1e-5;

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
};

// Runs `body`, timing it. A failed check or any exception marks the suite
// failed with the message as detail.
SuiteResult run_suite(std::string name,
                      const std::function<void(nlohmann::ordered_json& metrics)>& body);

struct GroupError {
  std::string group;
  double max_relative_error = 0.0;
  std::size_t coordinates = 0;
};

struct GradientReport {
  std::vector<GroupError> groups;
  double worst() const;
};

// Full encoder loss sum(R (.) encode(...)) for English, Chinese and English
// with sum_includes_input, at hidden size 5 on graphs of at most 8 nodes.
GradientReport encoder_gradient_report(std::uint64_t seed);
// Score of a reduced discriminator (3 channels, 8x8 clip) w.r.t. every
// parameter and the clip; d_loss w.r.t. parameters and g_loss w.r.t. the
// fake spectrogram with dropout active.
GradientReport discriminator_gradient_report(std::uint64_t seed);

SuiteResult graph_count_laws(std::uint64_t seed, std::size_t trials = 500);
SuiteResult printed_types_graph(std::string_view conllu);
SuiteResult batching_equivalence(std::uint64_t seed, std::size_t batches = 100,
                                 std::size_t hidden = 8);
SuiteResult zero_parameter_law(std::uint64_t seed);
SuiteResult gradient_suite(std::uint64_t seed);
SuiteResult stop_gradient(std::uint64_t seed);
SuiteResult conv2d_and_instance_norm(std::uint64_t seed, std::size_t instances = 200);
SuiteResult round_trips(std::uint64_t seed);
SuiteResult discriminator_losses(std::uint64_t seed);
SuiteResult default_configuration();
SuiteResult encoder_oracle_agreement(std::uint64_t seed);
SuiteResult discriminator_invariants(std::uint64_t seed);

std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

nlohmann::ordered_json suite_to_json(const SuiteResult& r);

}  // namespace syntagraph::verify
