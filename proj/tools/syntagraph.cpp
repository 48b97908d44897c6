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

// Command-line front end: build-graph, encode, gradcheck, discriminate,
// selftest.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "syntagraph/batching.hpp"
#include "syntagraph/boundary.hpp"
#include "syntagraph/config.hpp"
#include "syntagraph/dependency_tree.hpp"
#include "syntagraph/discriminator.hpp"
#include "syntagraph/dot.hpp"
#include "syntagraph/encoder.hpp"
#include "syntagraph/error.hpp"
#include "syntagraph/length_regulator.hpp"
#include "syntagraph/ops.hpp"
#include "syntagraph/syntactic_graph.hpp"
#include "syntagraph/verify/suites.hpp"

namespace sg = syntagraph;
using Json = nlohmann::ordered_json;

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sg::IoError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw sg::IoError("cannot write " + path);
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw sg::ParseError(0, path + ": malformed JSON: " + e.what());
  }
}

// Re-raises library errors with `context` in front; internal invariant
// violations pass through unchanged so they keep exit code 2.
template <typename F>
auto with_context(const std::string& context, F&& f) {
  try {
    return f();
  } catch (const sg::InvariantViolation&) {
    throw;
  } catch (const sg::Error& e) {
    throw sg::Error(context + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw sg::Error(context + ": " + e.what());
  }
}

// A file holding either one object or an array of them.
std::vector<Json> objects_of(const Json& j) {
  if (j.is_array()) return std::vector<Json>(j.begin(), j.end());
  return {j};
}

Json with_header(Json body, const sg::Config& config) {
  body["schema_version"] = sg::kSchemaVersion;
  body["config"] = sg::config_to_json(config);
  return body;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

// Splits a UTF-8 string into code points.
std::vector<std::string> utf8_chars(const std::string& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    const std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : 4;
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

std::vector<std::string> unit_labels(const sg::DependencyTree& tree,
                                     const sg::BoundaryMap& boundary) {
  std::vector<std::string> labels;
  if (tree.language == sg::Language::English) {
    for (const auto& w : tree.words) labels.push_back(w.form);
    return labels;
  }
  const auto chars_per_word = sg::group_sizes(boundary.word_of_char);
  for (std::size_t w = 0; w < tree.size(); ++w) {
    auto chars = utf8_chars(tree.words[w].form);
    if (chars.size() != chars_per_word[w]) {
      chars.clear();
      for (std::size_t c = 0; c < chars_per_word[w]; ++c) {
        chars.push_back(tree.words[w].form + "." + std::to_string(c + 1));
      }
    }
    labels.insert(labels.end(), chars.begin(), chars.end());
  }
  return labels;
}

struct EncoderFlags {
  std::optional<std::size_t> hidden;
  std::size_t layers = 2;
  std::size_t iterations = 5;
  bool sum_includes_input = false;
};

void add_encoder_flags(CLI::App* cmd, EncoderFlags& f) {
  cmd->add_option("--hidden", f.hidden, "hidden size d (default: taken from inputs, else 192)");
  cmd->add_option("--layers", f.layers, "stacked gated graph layers")->capture_default_str();
  cmd->add_option("--iterations", f.iterations, "propagation steps per layer")
      ->capture_default_str();
  cmd->add_flag("--sum-includes-input", f.sum_includes_input,
                "add the pooled input to the layer-output sum");
}

struct DiscFlags {
  std::string loss = "lsgan";
  double leaky_slope = 0.2;
  double dropout = 0.1;
  double eps = 1e-5;
  bool train = false;
};

void add_disc_flags(CLI::App* cmd, DiscFlags& f) {
  cmd->add_option("--loss", f.loss, "adversarial loss family")
      ->check(CLI::IsMember({"lsgan", "hinge"}))
      ->capture_default_str();
  cmd->add_option("--leaky-slope", f.leaky_slope, "LeakyReLU negative slope")
      ->capture_default_str();
  cmd->add_option("--dropout", f.dropout, "dropout rate")->capture_default_str();
  cmd->add_option("--eps", f.eps, "instance-norm eps")->capture_default_str();
  cmd->add_flag("--train", f.train, "apply dropout while scoring");
}

// ---------------------------------------------------------------- build-graph

struct BuildGraphArgs {
  std::string lang;
  std::string conllu;
  std::string boundary;
  std::string out;
  std::string dot;
};

int build_graph_cmd(const BuildGraphArgs& a) {
  const sg::Language lang = sg::language_from_code(a.lang);
  const auto trees = with_context(a.conllu, [&] { return sg::parse_conllu(read_text(a.conllu), lang); });
  if (trees.empty()) throw sg::Error(a.conllu + ": no sentences");
  const auto boundary_objs = objects_of(read_json(a.boundary));
  if (boundary_objs.size() != trees.size()) {
    throw sg::AlignmentError(a.boundary + ": " + std::to_string(boundary_objs.size()) +
                             " boundary maps for " + std::to_string(trees.size()) +
                             " sentences in " + a.conllu);
  }
  sg::Config config;
  config.encoder.language = lang;

  Json out = Json::array();
  std::string dot;
  for (std::size_t k = 0; k < trees.size(); ++k) {
    const std::string where = a.conllu + ": sentence " + std::to_string(k + 1);
    with_context(where, [&] {
      const sg::BoundaryMap b = sg::boundary_from_json(boundary_objs[k]);
      if (b.language != lang) {
        throw sg::AlignmentError("boundary map is for language " +
                                 std::string(sg::language_code(b.language)) + ", expected " +
                                 a.lang);
      }
      const sg::SyntacticGraph g = sg::build_graph(trees[k], b);
      sg::validate_graph(g);
      out.push_back(with_header(sg::graph_to_json(g), config));
      if (!a.dot.empty()) dot += sg::graph_to_dot(g, unit_labels(trees[k], b));
      return 0;
    });
  }
  write_text(a.out, dump(out.size() == 1 ? out[0] : out));
  if (!a.dot.empty()) write_text(a.dot, dot);
  return 0;
}

// --------------------------------------------------------------------- encode

struct EncodeArgs {
  std::string graph;
  std::string boundary;
  std::string phoneme_enc;
  std::optional<std::size_t> random_phonemes;
  std::string params;
  std::optional<std::uint64_t> init_seed;
  std::string out;
  std::string expand;
  std::string durations;
  std::uint64_t seed = 0;
  EncoderFlags enc;
};

int encode_cmd(const EncodeArgs& a) {
  const auto graph_objs = objects_of(read_json(a.graph));
  std::vector<sg::SyntacticGraph> graphs;
  for (std::size_t k = 0; k < graph_objs.size(); ++k) {
    graphs.push_back(with_context(a.graph + ": graph " + std::to_string(k + 1),
                                  [&] { return sg::graph_from_json(graph_objs[k]); }));
  }
  const auto boundary_objs = objects_of(read_json(a.boundary));
  if (boundary_objs.size() != graphs.size()) {
    throw sg::AlignmentError(a.boundary + ": " + std::to_string(boundary_objs.size()) +
                             " boundary maps for " + std::to_string(graphs.size()) + " graphs");
  }
  std::vector<sg::BoundaryMap> boundaries;
  std::size_t total_phonemes = 0;
  for (std::size_t k = 0; k < boundary_objs.size(); ++k) {
    boundaries.push_back(with_context(a.boundary + ": map " + std::to_string(k + 1),
                                      [&] { return sg::boundary_from_json(boundary_objs[k]); }));
    if (boundaries[k].language != boundaries[0].language) {
      throw sg::AlignmentError(a.boundary + ": boundary maps mix languages");
    }
    total_phonemes += boundaries[k].num_phonemes();
  }

  sg::Config config;
  config.seed = a.seed;
  config.encoder.language = boundaries[0].language;
  config.encoder.layers = a.enc.layers;
  config.encoder.iterations = a.enc.iterations;
  config.encoder.sum_includes_input = a.enc.sum_includes_input;
  sg::Rng rng(a.seed);

  std::optional<sg::Tensor> phonemes;
  if (!a.phoneme_enc.empty()) {
    phonemes = with_context(a.phoneme_enc,
                            [&] { return sg::tensor_from_json(read_json(a.phoneme_enc)); });
    if (phonemes->rank() != 2) {
      throw sg::ShapeError(a.phoneme_enc + ": phoneme encoding must be [P, d], got " +
                           sg::shape_to_string(phonemes->shape()));
    }
  }
  config.encoder.hidden = a.enc.hidden ? *a.enc.hidden : phonemes ? phonemes->cols() : 192;
  if (!phonemes) {
    if (*a.random_phonemes != total_phonemes) {
      throw sg::AlignmentError("--random " + std::to_string(*a.random_phonemes) +
                               " phonemes but the boundary maps cover " +
                               std::to_string(total_phonemes));
    }
    sg::Tensor t({total_phonemes, config.encoder.hidden});
    for (double& v : t.data()) v = rng.uniform(-1.0, 1.0);
    phonemes = std::move(t);
  }
  if (phonemes->rows() != total_phonemes || phonemes->cols() != config.encoder.hidden) {
    throw sg::AlignmentError("phoneme encoding has shape " +
                             sg::shape_to_string(phonemes->shape()) + " but expected [" +
                             std::to_string(total_phonemes) + ", " +
                             std::to_string(config.encoder.hidden) + "]");
  }

  sg::GraphEncoderParams params;
  if (!a.params.empty()) {
    params = with_context(a.params, [&] {
      return sg::encoder_params_from_json(read_json(a.params), config.encoder);
    });
  } else {
    sg::Rng init(*a.init_seed);
    params = sg::init_encoder_params(config.encoder, init);
  }

  std::vector<std::size_t> rows;
  for (const auto& b : boundaries) rows.push_back(b.num_phonemes());
  const auto inputs = sg::concat_rows_backward(*phonemes, rows);
  std::vector<sg::Tensor> encoded =
      graphs.size() == 1
          ? std::vector<sg::Tensor>{sg::encode(inputs[0], boundaries[0], graphs[0], params)}
          : sg::encode_batch(inputs, boundaries, graphs, params);

  std::string level = config.encoder.language == sg::Language::Chinese ? "character" : "word";
  if (!a.expand.empty()) {
    const auto duration_objs = objects_of(read_json(a.durations));
    if (duration_objs.size() != graphs.size()) {
      throw sg::AlignmentError(a.durations + ": " + std::to_string(duration_objs.size()) +
                               " duration tables for " + std::to_string(graphs.size()) +
                               " graphs");
    }
    for (std::size_t k = 0; k < encoded.size(); ++k) {
      encoded[k] = with_context(a.durations + ": table " + std::to_string(k + 1), [&] {
        const sg::DurationTable d = sg::durations_from_json(duration_objs[k]);
        if (d.phonemes_per_word != sg::group_sizes(boundaries[k].word_of_phoneme)) {
          throw sg::AlignmentError("phoneme counts disagree with the boundary map");
        }
        const sg::Tensor words = sg::word_level(encoded[k], boundaries[k]);
        return a.expand == "phoneme" ? sg::expand_to_phoneme(words, d)
                                     : sg::expand_to_frame(words, d);
      });
    }
    level = a.expand;
  }

  Json out = sg::tensor_to_json(sg::concat_rows(encoded));
  out["level"] = level;
  Json per_graph = Json::array();
  for (const auto& e : encoded) per_graph.push_back(e.rows());
  out["rows_per_graph"] = per_graph;
  write_text(a.out, dump(with_header(out, config)));
  return 0;
}

// ------------------------------------------------------------------ gradcheck

int gradcheck_cmd(const std::string& component, std::uint64_t seed) {
  const sg::verify::GradientReport report =
      component == "encoder" ? sg::verify::encoder_gradient_report(seed)
                             : sg::verify::discriminator_gradient_report(seed);
  std::size_t width = 0;
  for (const auto& g : report.groups) width = std::max(width, g.group.size());
  for (const auto& g : report.groups) {
    std::cout << g.group << std::string(width + 2 - g.group.size(), ' ') << g.max_relative_error
              << "  (" << g.coordinates << " values)\n";
  }
  const bool ok = report.worst() < sg::verify::kGradientTolerance;
  std::cout << component << ": max relative error " << report.worst() << " (tolerance "
            << sg::verify::kGradientTolerance << "): " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 2;
}

// --------------------------------------------------------------- discriminate

struct DiscriminateArgs {
  std::string real;
  std::string fake;
  std::string params;
  std::optional<std::uint64_t> init_seed;
  std::uint64_t seed = 0;
  DiscFlags disc;
};

int discriminate_cmd(const DiscriminateArgs& a) {
  const auto load_mel = [](const std::string& path) {
    return with_context(path, [&] {
      return sg::make_mel(sg::tensor_from_json(read_json(path)));
    });
  };
  const sg::MelSpectrogram real = load_mel(a.real);
  const sg::MelSpectrogram fake = load_mel(a.fake);

  sg::Config config;
  config.seed = a.seed;
  sg::DiscriminatorConfig& d = config.discriminator;
  d.n_mels = real.n_mels();
  d.loss = sg::loss_family_from_code(a.disc.loss);
  d.leaky_slope = a.disc.leaky_slope;
  d.dropout = a.disc.dropout;
  d.norm_eps = a.disc.eps;
  sg::validate_config(d);

  sg::DiscriminatorParams params;
  if (!a.params.empty()) {
    params = with_context(a.params, [&] {
      return sg::discriminator_params_from_json(read_json(a.params), d);
    });
  } else {
    sg::Rng init(*a.init_seed);
    params = sg::init_discriminator_params(d, init);
  }
  sg::Rng rng(a.seed);
  const sg::AdversarialResult r = sg::adversarial_losses(real, fake, params, rng, a.disc.train);

  Json out;
  Json windows = Json::array();
  for (const auto& w : r.per_window) {
    Json e;
    e["window"] = w.window;
    e["real_start"] = w.real_start;
    e["fake_start"] = w.fake_start;
    e["real_score"] = w.real_score;
    e["fake_score"] = w.fake_score;
    e["d_loss"] = w.d_loss;
    e["g_loss"] = w.g_loss;
    windows.push_back(e);
  }
  out["windows"] = windows;
  out["d_loss"] = r.d_loss;
  out["g_loss"] = r.g_loss;
  std::cout << pretty(with_header(out, config));
  return 0;
}

// ------------------------------------------------------------------- selftest

int selftest_cmd(std::uint64_t seed, bool json) {
  const auto results = sg::verify::run_all_suites(seed);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  const sg::Config defaults;
  const Json defaults_json = sg::config_to_json(defaults);

  Json census;
  for (const auto& r : results) {
    if (r.name == "default_configuration" && r.metrics.contains("parameter_census")) {
      census = r.metrics["parameter_census"];
    }
  }
  if (json) {
    Json report;
    report["schema_version"] = sg::kSchemaVersion;
    report["seed"] = seed;
    report["passed"] = ok;
    report["defaults"] = defaults_json;
    report["parameter_census"] = census;
    Json suites = Json::array();
    for (const auto& r : results) suites.push_back(sg::verify::suite_to_json(r));
    report["suites"] = suites;
    std::cout << pretty(report);
  } else {
    for (const auto& r : results) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.seconds << " s)";
      if (!r.passed) std::cout << ": " << r.detail;
      std::cout << "\n";
    }
    std::string windows;
    for (std::size_t w : defaults.discriminator.windows) {
      windows += (windows.empty() ? "" : "/") + std::to_string(w);
    }
    std::cout << "defaults: hidden=" << defaults.encoder.hidden
              << " layers=" << defaults.encoder.layers
              << " encoders=" << defaults.encoders << " windows=" << windows
              << " conv2d_layers=" << defaults.discriminator.conv_layers()
              << " speakers=" << defaults.speakers << "\n";
    std::cout << "parameter census: " << census.dump() << "\n";
    std::cout << results.size() << " suites, " << (ok ? "all passed" : "FAILURES") << "\n";
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Syntactic graph encoder and multi-length discriminator toolkit"};
  app.require_subcommand(1);

  BuildGraphArgs bg;
  auto* build = app.add_subcommand("build-graph", "build syntactic graphs from CoNLL-U");
  build->add_option("--lang", bg.lang, "en or zh")->required()->check(CLI::IsMember({"en", "zh"}));
  build->add_option("--conllu", bg.conllu, "dependency parses")->required();
  build->add_option("--boundary", bg.boundary, "boundary map JSON (object or array)")->required();
  build->add_option("--out", bg.out, "graph JSON output")->required();
  build->add_option("--dot", bg.dot, "optional Graphviz output");

  EncodeArgs en;
  auto* encode = app.add_subcommand("encode", "run the syntactic graph encoder");
  encode->add_option("--graph", en.graph, "graph JSON (object or array)")->required();
  encode->add_option("--boundary", en.boundary, "boundary map JSON (object or array)")
      ->required();
  auto* input = encode->add_option_group("phoneme input");
  input->add_option("--phoneme-enc", en.phoneme_enc, "tensor JSON [P, d]");
  input->add_option("--random", en.random_phonemes, "draw P random phoneme rows");
  input->require_option(1);
  auto* weights = encode->add_option_group("parameters");
  weights->add_option("--params", en.params, "encoder parameter JSON");
  weights->add_option("--init-seed", en.init_seed, "random initialisation seed");
  weights->require_option(1);
  encode->add_option("--out", en.out, "tensor JSON output")->required();
  auto* expand = encode->add_option("--expand", en.expand, "expand to phoneme or frame level")
                     ->check(CLI::IsMember({"phoneme", "frame"}));
  encode->add_option("--durations", en.durations, "duration table JSON")->needs(expand);
  expand->needs("--durations");
  encode->add_option("--seed", en.seed, "seed for --random")->capture_default_str();
  add_encoder_flags(encode, en.enc);

  std::string component;
  std::uint64_t grad_seed = sg::verify::kDefaultSeed;
  auto* grad = app.add_subcommand("gradcheck", "finite-difference gradient suite");
  grad->add_option("--component", component, "encoder or discriminator")
      ->required()
      ->check(CLI::IsMember({"encoder", "discriminator"}));
  grad->add_option("--seed", grad_seed, "seed")->capture_default_str();

  DiscriminateArgs di;
  auto* disc = app.add_subcommand("discriminate", "score real and fake spectrograms");
  disc->add_option("--real", di.real, "real mel tensor JSON [T, n_mels]")->required();
  disc->add_option("--fake", di.fake, "fake mel tensor JSON [T, n_mels]")->required();
  auto* dweights = disc->add_option_group("parameters");
  dweights->add_option("--params", di.params, "discriminator parameter JSON");
  dweights->add_option("--init-seed", di.init_seed, "random initialisation seed");
  dweights->require_option(1);
  disc->add_option("--seed", di.seed, "window sampling and dropout seed")->capture_default_str();
  add_disc_flags(disc, di.disc);

  std::uint64_t self_seed = sg::verify::kDefaultSeed;
  bool self_json = false;
  auto* self = app.add_subcommand("selftest", "run every invariant suite");
  self->add_option("--seed", self_seed, "seed")->capture_default_str();
  self->add_flag("--json", self_json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*build) return build_graph_cmd(bg);
    if (*encode) return encode_cmd(en);
    if (*grad) return gradcheck_cmd(component, grad_seed);
    if (*disc) return discriminate_cmd(di);
    if (*self) return selftest_cmd(self_seed, self_json);
  } catch (const sg::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const sg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
