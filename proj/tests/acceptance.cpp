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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "syntagraph/verify/suites.hpp"

#ifndef SYNTAGRAPH_PRINTED_TYPES_CONLLU
#error "SYNTAGRAPH_PRINTED_TYPES_CONLLU must name the printed-types CoNLL-U file"
#endif
#ifndef SYNTAGRAPH_CLI_PATH
#error "SYNTAGRAPH_CLI_PATH must name the syntagraph executable"
#endif

namespace {

using syntagraph::verify::SuiteResult;

struct Criterion {
  std::string name;
  SuiteResult result;
  double time_limit = 0.0;  // seconds; 0 means unbounded
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs `command` and returns its stdout and exit status.
std::pair<std::string, int> run(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {"", -1};
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  return {out, pclose(pipe)};
}

SuiteResult selftest_echo() {
  return syntagraph::verify::run_suite("selftest_echo", [](nlohmann::ordered_json& metrics) {
    const auto [out, status] = run(std::string("\"") + SYNTAGRAPH_CLI_PATH + "\" selftest");
    metrics["exit_status"] = status;
    if (status != 0) throw std::runtime_error("selftest exited with status " + std::to_string(status));
    const std::string defaults =
        "defaults: hidden=192 layers=2 encoders=2 windows=32/64/128 conv2d_layers=3 speakers=2320";
    if (out.find(defaults) == std::string::npos) {
      throw std::runtime_error("selftest output lacks the defaults line");
    }
    if (out.find("parameter census: ") == std::string::npos) {
      throw std::runtime_error("selftest output lacks the parameter census");
    }
  });
}

}  // namespace

int main() {
  namespace v = syntagraph::verify;
  const std::uint64_t seed = v::kDefaultSeed;
  const std::string conllu = read_file(SYNTAGRAPH_PRINTED_TYPES_CONLLU);

  std::vector<Criterion> criteria;
  criteria.push_back({"graph count laws (500 en + 500 zh, < 5 s)", v::graph_count_laws(seed, 500), 5.0});
  criteria.push_back({"seven-word sentence: 9 nodes, 16 edges", v::printed_types_graph(conllu), 0.0});
  criteria.push_back({"batching equivalence (100 batches, d=8, 1e-12, < 10 s)",
                      v::batching_equivalence(seed, 100, 8), 10.0});
  criteria.push_back({"zero-parameter law (33/1024, 1e-12)", v::zero_parameter_law(seed), 0.0});
  criteria.push_back({"gradient suite (max rel err < 1e-5, < 60 s)", v::gradient_suite(seed), 60.0});
  criteria.push_back({"stop-gradient (bitwise zero)", v::stop_gradient(seed), 0.0});
  criteria.push_back({"conv2d reference (200 exact) and instance-norm stats (1e-6)",
                      v::conv2d_and_instance_norm(seed, 200), 0.0});
  criteria.push_back({"round trips (pool/expand, split/merge, CoNLL-U, graph JSON)",
                      v::round_trips(seed), 0.0});
  criteria.push_back({"discriminator analytic losses and window availability",
                      v::discriminator_losses(seed), 0.0});
  SuiteResult defaults = v::default_configuration();
  if (defaults.passed) {
    const SuiteResult echo = selftest_echo();
    if (!echo.passed) {
      defaults.passed = false;
      defaults.detail = echo.detail;
    }
    defaults.seconds += echo.seconds;
  }
  criteria.push_back({"default configuration echoed by selftest", defaults, 0.0});

  int failures = 0;
  for (const Criterion& c : criteria) {
    bool ok = c.result.passed;
    std::string detail = c.result.detail;
    if (ok && c.time_limit > 0.0 && c.result.seconds >= c.time_limit) {
      ok = false;
      detail = "took " + std::to_string(c.result.seconds) + " s";
    }
    if (!ok) ++failures;
    std::cout << (ok ? "PASS " : "FAIL ") << c.name << " [" << c.result.seconds << " s]";
    if (!ok && !detail.empty()) std::cout << ": " << detail;
    if (!c.result.metrics.empty()) std::cout << " " << c.result.metrics.dump();
    std::cout << "\n";
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failures) << "/" << criteria.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
