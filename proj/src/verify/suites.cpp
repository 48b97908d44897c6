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

#include "syntagraph/verify/suites.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "syntagraph/batching.hpp"
#include "syntagraph/config.hpp"
#include "syntagraph/conv.hpp"
#include "syntagraph/dependency_tree.hpp"
#include "syntagraph/discriminator.hpp"
#include "syntagraph/encoder.hpp"
#include "syntagraph/error.hpp"
#include "syntagraph/gradcheck.hpp"
#include "syntagraph/ops.hpp"
#include "syntagraph/speaker.hpp"
#include "syntagraph/verify/fixtures.hpp"
#include "syntagraph/verify/generators.hpp"
#include "syntagraph/verify/reference.hpp"

namespace syntagraph::verify {
namespace {

struct CheckFailure {
  std::string message;
};

void check(bool ok, const std::string& message) {
  if (!ok) throw CheckFailure{message};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

std::size_t draw(Rng& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

Tensor random_phonemes(const BoundaryMap& b, std::size_t d, Rng& rng) {
  return random_tensor({b.num_phonemes(), d}, rng);
}

// Parameters with every entry (biases included) ~ U(-scale, scale).
GraphEncoderParams random_encoder_params(const EncoderConfig& config, Rng& rng,
                                         double scale = 0.5) {
  GraphEncoderParams p = zero_encoder_params(config);
  std::vector<double> values(parameter_count(p));
  for (double& v : values) v = rng.uniform(-scale, scale);
  unflatten(p, values);
  return p;
}

struct GroupSpan {
  std::string name;
  std::size_t offset;
  std::size_t size;
};

template <typename Visit>
std::vector<GroupSpan> group_spans(const std::string& prefix, Visit&& visit) {
  std::vector<GroupSpan> spans;
  std::size_t offset = 0;
  visit([&](const std::string& name, const Tensor& t) {
    spans.push_back({prefix + name, offset, t.size()});
    offset += t.size();
  });
  return spans;
}

void append_groups(GradientReport& report, const std::vector<GroupSpan>& spans,
                   const std::vector<double>& errors) {
  for (const auto& s : spans) {
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size; ++i) worst = std::max(worst, errors[s.offset + i]);
    report.groups.push_back({s.name, worst, s.size});
  }
}

Sentence small_sentence(Rng& rng, Language lang) {
  if (lang == Language::English) {
    // 4..6 words: at most 8 nodes.
    const std::size_t n = draw(rng, 4, 6);
    std::vector<std::size_t> phonemes(n);
    for (auto& p : phonemes) p = draw(rng, 1, 4);
    return {random_tree(rng, n, lang), english_boundary(phonemes)};
  }
  // 2..3 words of 1..2 characters, the first of 2: at most 8 nodes and at
  // least one intra-word chain.
  const std::size_t n = draw(rng, 2, 3);
  std::vector<std::size_t> chars(n);
  std::vector<std::size_t> phonemes;
  for (std::size_t w = 0; w < n; ++w) {
    chars[w] = w == 0 ? 2 : draw(rng, 1, 2);
    for (std::size_t c = 0; c < chars[w]; ++c) phonemes.push_back(draw(rng, 1, 3));
  }
  return {random_tree(rng, n, lang), chinese_boundary(phonemes, chars)};
}

DiscriminatorConfig reduced_discriminator(std::vector<std::size_t> windows) {
  DiscriminatorConfig c;
  c.windows = std::move(windows);
  c.n_mels = 8;
  c.channels = 3;
  c.strides = {2, 1, 1};
  return c;
}

DiscriminatorParams random_discriminator(const DiscriminatorConfig& config, Rng& rng) {
  DiscriminatorParams p = init_discriminator_params(config, rng);
  for (auto& d : p.discriminators) {
    for (auto& b : d.biases) {
      for (double& v : b.data()) v = rng.uniform(-0.1, 0.1);
    }
    d.linear_bias[0] = rng.uniform(-0.1, 0.1);
  }
  return p;
}

// Leaky ReLU inputs closer than this to 0 are redrawn so the central
// differences never straddle the kink.
constexpr double kKinkMargin = 1e-3;
constexpr int kMaxRedraws = 100;

std::vector<std::size_t> windows_of(const AdversarialResult& r) {
  std::vector<std::size_t> w;
  for (const auto& e : r.per_window) w.push_back(e.window);
  return w;
}

}  // namespace

double GradientReport::worst() const {
  double w = 0.0;
  for (const auto& g : groups) w = std::max(w, g.max_relative_error);
  return w;
}

SuiteResult run_suite(std::string name,
                      const std::function<void(nlohmann::ordered_json& metrics)>& body) {
  SuiteResult r;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r.metrics);
    r.passed = true;
  } catch (const CheckFailure& f) {
    r.detail = f.message;
  } catch (const std::exception& e) {
    r.detail = std::string("unexpected exception: ") + e.what();
  }
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

GradientReport encoder_gradient_report(std::uint64_t seed) {
  GradientReport report;
  Rng rng(seed);
  struct Case {
    const char* tag;
    Language lang;
    bool sum_includes_input;
  };
  for (const Case& c : {Case{"en/", Language::English, false},
                        Case{"zh/", Language::Chinese, false},
                        Case{"en+input/", Language::English, true}}) {
    EncoderConfig config;
    config.language = c.lang;
    config.hidden = 5;
    config.sum_includes_input = c.sum_includes_input;
    const Sentence s = small_sentence(rng, c.lang);
    const SyntacticGraph graph = build_graph(s.tree, s.boundary);
    const Tensor x = random_phonemes(s.boundary, config.hidden, rng);
    const GraphEncoderParams params = random_encoder_params(config, rng);
    const Tensor weights = random_tensor({graph.num_units(), config.hidden}, rng);

    GraphEncoderParams scratch = params;
    const auto loss = [&](std::span<const double> theta) {
      unflatten(scratch, theta);
      return dot(weights, encode(x, s.boundary, graph, scratch));
    };
    const std::vector<double> point = flatten(params);
    const std::vector<double> analytic =
        flatten(encode_backward(x, s.boundary, graph, params, weights).dparams);
    const auto errors = relative_errors(loss, point, analytic);
    append_groups(report, group_spans(c.tag, [&](auto&& f) { for_each_param(params, f); }),
                  errors);
  }
  return report;
}

GradientReport discriminator_gradient_report(std::uint64_t seed) {
  GradientReport report;
  Rng rng(seed);

  // Score w.r.t. parameters and clip, inference mode.
  {
    const DiscriminatorConfig config = reduced_discriminator({8});
    DiscriminatorParams params;
    Tensor clip;
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRedraws) {
        throw InvariantViolation("could not draw a kink-free discriminator input");
      }
      params = random_discriminator(config, rng);
      clip = random_tensor({8, 8}, rng);
      DiscriminatorTrace trace;
      Rng unused(0);
      disc_forward(clip, params.discriminators[0], config, unused, false, &trace);
      if (min_abs_preactivation(trace) >= kKinkMargin) break;
    }
    const std::size_t num_params = parameter_count(params);
    DiscriminatorParams scratch = params;
    const auto score = [&](std::span<const double> theta) {
      unflatten(scratch, theta.first(num_params));
      const Tensor x(clip.shape(), std::vector<double>(theta.begin() + num_params, theta.end()));
      Rng unused(0);
      return disc_forward(x, scratch.discriminators[0], config, unused, false);
    };
    std::vector<double> point = flatten(params);
    point.insert(point.end(), clip.values().begin(), clip.values().end());

    DiscriminatorTrace trace;
    Rng unused(0);
    disc_forward(clip, params.discriminators[0], config, unused, false, &trace);
    const DiscriminatorGrad g = disc_backward(params.discriminators[0], config, trace, 1.0);
    DiscriminatorParams grad_params = zero_discriminator_params(config);
    grad_params.discriminators[0] = g.dparams;
    std::vector<double> analytic = flatten(grad_params);
    analytic.insert(analytic.end(), g.dclip.values().begin(), g.dclip.values().end());

    const auto errors = relative_errors(score, point, analytic);
    auto spans = group_spans(
        "score/", [&](auto&& f) { for_each_discriminator_param(params, f); });
    spans.push_back({"score/clip", num_params, clip.size()});
    append_groups(report, spans, errors);
  }

  // Adversarial losses with dropout active; every evaluation replays the
  // same random stream.
  {
    const DiscriminatorConfig config = reduced_discriminator({8, 12});
    DiscriminatorParams params;
    MelSpectrogram real, fake;
    std::uint64_t loss_seed = 0;
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRedraws) {
        throw InvariantViolation("could not draw a kink-free adversarial input");
      }
      params = random_discriminator(config, rng);
      real = make_mel(random_tensor({14, 8}, rng));
      fake = make_mel(random_tensor({13, 8}, rng));
      loss_seed = rng.next_u64();
      Rng replay(loss_seed);
      const AdversarialResult r = adversarial_losses(real, fake, params, replay, true);
      double margin = INFINITY;
      for (const auto& w : r.per_window) margin = std::min(margin, w.min_abs_preactivation);
      if (margin >= kKinkMargin) break;
    }
    AdversarialGradients grads;
    {
      Rng replay(loss_seed);
      adversarial_losses(real, fake, params, replay, true, &grads);
    }

    DiscriminatorParams scratch = params;
    const auto d_loss = [&](std::span<const double> theta) {
      unflatten(scratch, theta);
      Rng replay(loss_seed);
      return adversarial_losses(real, fake, scratch, replay, true).d_loss;
    };
    append_groups(report,
                  group_spans("d_loss/",
                              [&](auto&& f) { for_each_discriminator_param(params, f); }),
                  relative_errors(d_loss, flatten(params), flatten(grads.dparams_d_loss)));

    const auto g_loss = [&](std::span<const double> frames) {
      const MelSpectrogram moved{
          Tensor(fake.frames.shape(), std::vector<double>(frames.begin(), frames.end()))};
      Rng replay(loss_seed);
      return adversarial_losses(real, moved, params, replay, true).g_loss;
    };
    append_groups(report, {{"g_loss/fake", 0, fake.frames.size()}},
                  relative_errors(g_loss, fake.frames.values(), grads.dfake_g_loss.values()));
  }
  return report;
}

SuiteResult graph_count_laws(std::uint64_t seed, std::size_t trials) {
  return run_suite("graph_count_laws", [&](nlohmann::ordered_json& m) {
    Rng rng(seed);
    std::size_t largest = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const Sentence s = random_english_sentence(rng, 30);
      const SyntacticGraph g = build_graph(s.tree, s.boundary);
      validate_graph(g);
      const GraphCounts expected = english_counts(s.tree.size());
      check(GraphCounts{g.num_nodes(), g.edges.size()} == expected,
            "English tree of " + std::to_string(s.tree.size()) + " words: " +
                std::to_string(g.num_nodes()) + " nodes / " + std::to_string(g.edges.size()) +
                " edges");
      check(reverse_pairing_bijection(g), "English reverse pairing broken");
      check(is_connected(g), "English graph disconnected");
      largest = std::max(largest, g.num_nodes());
    }
    for (std::size_t t = 0; t < trials; ++t) {
      const Sentence s = random_chinese_sentence(rng, 20);
      const SyntacticGraph g = build_graph(s.tree, s.boundary);
      validate_graph(g);
      const GraphCounts expected = chinese_counts(group_sizes(s.boundary.word_of_char));
      check(GraphCounts{g.num_nodes(), g.edges.size()} == expected,
            "Chinese sentence of " + std::to_string(s.tree.size()) + " words: " +
                std::to_string(g.num_nodes()) + " nodes / " + std::to_string(g.edges.size()) +
                " edges");
      check(reverse_pairing_bijection(g), "Chinese reverse pairing broken");
      check(is_connected(g), "Chinese graph disconnected");
      largest = std::max(largest, g.num_nodes());
    }
    m["english_trials"] = trials;
    m["chinese_trials"] = trials;
    m["largest_graph_nodes"] = largest;
  });
}

SuiteResult printed_types_graph(std::string_view conllu) {
  return run_suite("printed_types_graph", [&](nlohmann::ordered_json& m) {
    const auto trees = parse_conllu(conllu, Language::English);
    check(trees.size() == 1, "expected one sentence, got " + std::to_string(trees.size()));
    check(trees[0].size() == 7, "expected 7 words, got " + std::to_string(trees[0].size()));
    const SyntacticGraph g = build_graph(trees[0], english_boundary(kPrintedTypesPhonemesPerWord));
    validate_graph(g);
    check(g.num_nodes() == 9, "expected 9 nodes, got " + std::to_string(g.num_nodes()));
    check(g.edges.size() == 16, "expected 16 edges, got " + std::to_string(g.edges.size()));
    check(GraphCounts{g.num_nodes(), g.edges.size()} == english_counts(7),
          "count formula disagrees");
    check(reverse_pairing_bijection(g), "reverse pairing broken");
    check(is_connected(g), "graph disconnected");
    m["nodes"] = g.num_nodes();
    m["edges"] = g.edges.size();
  });
}

SuiteResult batching_equivalence(std::uint64_t seed, std::size_t batches, std::size_t hidden) {
  return run_suite("batching_equivalence", [&](nlohmann::ordered_json& m) {
    Rng rng(seed);
    std::map<Language, GraphEncoderParams> params;
    for (Language lang : {Language::English, Language::Chinese}) {
      EncoderConfig config;
      config.language = lang;
      config.hidden = hidden;
      params[lang] = init_encoder_params(config, rng);
    }
    double worst = 0.0;
    std::size_t graphs_seen = 0;
    for (std::size_t b = 0; b < batches; ++b) {
      const Language lang = rng.bernoulli(0.5) ? Language::Chinese : Language::English;
      const std::size_t k = draw(rng, 1, 8);
      std::vector<SyntacticGraph> graphs;
      std::vector<BoundaryMap> boundaries;
      std::vector<Tensor> inputs;
      for (std::size_t i = 0; i < k; ++i) {
        const Sentence s = random_sentence(rng, lang, 10);
        graphs.push_back(build_graph(s.tree, s.boundary));
        boundaries.push_back(s.boundary);
        inputs.push_back(random_phonemes(s.boundary, hidden, rng));
      }
      const BatchedGraph batch = merge_graphs(graphs);
      validate_batch(batch);
      check(split_graphs(batch) == graphs, "split(merge(graphs)) differs");
      const auto merged = encode_batch(inputs, boundaries, graphs, params[lang]);
      check(merged.size() == k, "batched encode returned the wrong number of graphs");
      for (std::size_t i = 0; i < k; ++i) {
        const Tensor single = encode(inputs[i], boundaries[i], graphs[i], params[lang]);
        worst = std::max(worst, max_abs_diff(merged[i], single));
      }
      graphs_seen += k;
    }
    m["batches"] = batches;
    m["graphs"] = graphs_seen;
    m["hidden"] = hidden;
    m["max_abs_diff"] = worst;
    check(worst <= 1e-12, "merged and per-graph encodings differ by " + fmt(worst));
  });
}

SuiteResult zero_parameter_law(std::uint64_t seed) {
  return run_suite("zero_parameter_law", [&](nlohmann::ordered_json& m) {
    Rng rng(seed);
    double worst = 0.0;
    for (Language lang : {Language::English, Language::Chinese}) {
      for (std::size_t hidden : {std::size_t{8}, std::size_t{192}}) {
        EncoderConfig config;
        config.language = lang;
        config.hidden = hidden;
        const GraphEncoderParams zero = zero_encoder_params(config);
        for (int t = 0; t < 10; ++t) {
          const Sentence s = random_sentence(rng, lang, 12);
          const SyntacticGraph g = build_graph(s.tree, s.boundary);
          const Tensor x = random_phonemes(s.boundary, hidden, rng);
          const Tensor pooled =
              reference_pool(x, lang == Language::Chinese ? s.boundary.char_of_phoneme
                                                          : s.boundary.word_of_phoneme);
          const Tensor expected = scale(scale(pooled, 33.0), 1.0 / 1024.0);
          worst = std::max(worst, max_abs_diff(encode(x, s.boundary, g, zero), expected));
        }
      }
    }
    m["max_abs_diff"] = worst;
    check(worst <= 1e-12, "zero-parameter output deviates from pooled*33/1024 by " + fmt(worst));
  });
}

SuiteResult gradient_suite(std::uint64_t seed) {
  return run_suite("gradient_suite", [&](nlohmann::ordered_json& m) {
    const GradientReport enc = encoder_gradient_report(seed);
    const GradientReport disc = discriminator_gradient_report(seed);
    nlohmann::ordered_json groups = nlohmann::ordered_json::object();
    std::string worst_group;
    double worst = 0.0;
    for (const GradientReport* r : {&enc, &disc}) {
      for (const auto& g : r->groups) {
        groups[g.group] = g.max_relative_error;
        if (g.max_relative_error >= worst) {
          worst = g.max_relative_error;
          worst_group = g.group;
        }
      }
    }
    m["encoder_max_rel_error"] = enc.worst();
    m["discriminator_max_rel_error"] = disc.worst();
    m["groups"] = groups;
    check(worst < kGradientTolerance,
          "max relative error " + fmt(worst) + " in " + worst_group);
  });
}

SuiteResult stop_gradient(std::uint64_t seed) {
  return run_suite("stop_gradient", [&](nlohmann::ordered_json& m) {
    Rng rng(seed);
    std::size_t checked_values = 0;
    for (Language lang : {Language::English, Language::Chinese}) {
      for (int t = 0; t < 10; ++t) {
        EncoderConfig config;
        config.language = lang;
        config.hidden = 6;
        const Sentence s = random_sentence(rng, lang, 8);
        const SyntacticGraph g = build_graph(s.tree, s.boundary);
        const Tensor x = random_phonemes(s.boundary, config.hidden, rng);
        const GraphEncoderParams params = random_encoder_params(config, rng);
        const Tensor weights = random_tensor({g.num_units(), config.hidden}, rng);
        const EncoderGradients grads = encode_backward(x, s.boundary, g, params, weights);
        check(grads.dphoneme_enc.shape() == x.shape(), "phoneme gradient has the wrong shape");
        for (double v : grads.dphoneme_enc.values()) {
          check(std::bit_cast<std::uint64_t>(v) == 0,
                "phoneme gradient is not bitwise zero: " + fmt(v));
        }
        double param_mass = 0.0;
        for (double v : flatten(grads.dparams)) param_mass += std::abs(v);
        check(param_mass > 0.0, "parameter gradient vanished as well");
        checked_values += x.size();
      }
    }
    m["values_checked"] = checked_values;
  });
}

SuiteResult conv2d_and_instance_norm(std::uint64_t seed, std::size_t instances) {
  return run_suite("conv2d_and_instance_norm", [&](nlohmann::ordered_json& m) {
    Rng rng(seed);
    for (std::size_t t = 0; t < instances; ++t) {
      const std::size_t cin = draw(rng, 1, 4), cout = draw(rng, 1, 4);
      const std::size_t k = draw(rng, 1, 4), stride = draw(rng, 1, 3), pad = draw(rng, 0, 2);
      const std::size_t h = draw(rng, k, k + 9), w = draw(rng, k, k + 9);
      const Tensor input = random_tensor({cin, h, w}, rng);
      const Tensor kernel = random_tensor({cout, cin, k, k}, rng);
      const Conv2dGeometry geo{stride, pad};
      if (rng.bernoulli(0.5)) {
        const Tensor bias = random_tensor({cout}, rng);
        check(conv2d(input, kernel, bias, geo) ==
                  reference_conv2d(input, kernel, bias, stride, pad),
              "conv2d with bias differs from the nested-loop reference at instance " +
                  std::to_string(t));
      } else {
        check(conv2d(input, kernel, geo) == reference_conv2d(input, kernel, Tensor(), stride, pad),
              "conv2d differs from the nested-loop reference at instance " + std::to_string(t));
      }
    }
    double worst_mean = 0.0, worst_var = 0.0;
    for (int t = 0; t < 50; ++t) {
      const std::size_t c = draw(rng, 1, 4), h = draw(rng, 4, 8), w = draw(rng, 4, 8);
      const Tensor y = instance_norm(random_tensor({c, h, w}, rng, -50.0, 50.0), 1e-5);
      const double n = static_cast<double>(h * w);
      for (std::size_t ch = 0; ch < c; ++ch) {
        double mean = 0.0;
        for (std::size_t i = 0; i < h; ++i) {
          for (std::size_t j = 0; j < w; ++j) mean += y.at(ch, i, j);
        }
        mean /= n;
        double var = 0.0;
        for (std::size_t i = 0; i < h; ++i) {
          for (std::size_t j = 0; j < w; ++j) var += (y.at(ch, i, j) - mean) * (y.at(ch, i, j) - mean);
        }
        var /= n;
        worst_mean = std::max(worst_mean, std::abs(mean));
        worst_var = std::max(worst_var, std::abs(var - 1.0));
      }
    }
    m["conv_instances"] = instances;
    m["instance_norm_max_abs_mean"] = worst_mean;
    m["instance_norm_max_abs_var_minus_1"] = worst_var;
    check(worst_mean <= 1e-6, "instance-norm mean off by " + fmt(worst_mean));
    check(worst_var <= 1e-6, "instance-norm variance off by " + fmt(worst_var));
  });
}

SuiteResult round_trips(std::uint64_t seed) {
  return run_suite("round_trips", [&](nlohmann::ordered_json& m) {
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
      const std::size_t k = draw(rng, 1, 10), d = draw(rng, 1, 6);
      std::vector<std::size_t> counts(k);
      for (auto& c : counts) c = draw(rng, 1, 6);
      const Tensor x = random_tensor({k, d}, rng, -100.0, 100.0);
      check(pool_rows(expand_rows(x, counts), counts) == x, "pool(expand(x)) != x");
    }
    for (int t = 0; t < 50; ++t) {
      const Language lang = rng.bernoulli(0.5) ? Language::Chinese : Language::English;
      std::vector<SyntacticGraph> graphs;
      for (std::size_t i = draw(rng, 1, 8); i > 0; --i) {
        const Sentence s = random_sentence(rng, lang, 10);
        graphs.push_back(build_graph(s.tree, s.boundary));
      }
      check(split_graphs(merge_graphs(graphs)) == graphs, "split(merge(graphs)) != graphs");
    }
    for (int t = 0; t < 100; ++t) {
      const Language lang = rng.bernoulli(0.5) ? Language::Chinese : Language::English;
      std::vector<DependencyTree> trees;
      std::vector<SyntacticGraph> graphs;
      for (std::size_t i = draw(rng, 1, 3); i > 0; --i) {
        const Sentence s = random_sentence(rng, lang, 15);
        trees.push_back(s.tree);
        graphs.push_back(build_graph(s.tree, s.boundary));
      }
      const std::string text = to_conllu(trees);
      check(parse_conllu(text, lang) == trees, "parse(to_conllu(trees)) != trees");
      check(to_conllu(parse_conllu(text, lang)) == text, "CoNLL-U text changed on re-write");
      for (const auto& g : graphs) {
        const std::string dumped = graph_to_json(g).dump();
        const SyntacticGraph back = graph_from_json(nlohmann::ordered_json::parse(dumped));
        check(back == g, "graph JSON round trip changed the graph");
        check(graph_to_json(back).dump() == dumped, "graph JSON text changed on re-write");
      }
    }
    for (int t = 0; t < 50; ++t) {
      const Tensor x = random_tensor({draw(rng, 1, 5), draw(rng, 1, 5)}, rng, -1e3, 1e3);
      const std::string dumped = tensor_to_json(x).dump();
      const Tensor back = tensor_from_json(nlohmann::ordered_json::parse(dumped));
      for (std::size_t i = 0; i < x.size(); ++i) {
        check(std::bit_cast<std::uint64_t>(back[i]) == std::bit_cast<std::uint64_t>(x[i]),
              "tensor JSON round trip is not bit-identical");
      }
    }
    m["cases"] = 300;
  });
}

SuiteResult discriminator_losses(std::uint64_t seed) {
  return run_suite("discriminator_losses", [&](nlohmann::ordered_json& m) {
    const ScoreLosses perfect = score_losses(LossFamily::LeastSquares, 1.0, 0.0);
    check(perfect.d_loss == 0.0 && perfect.g_loss == 0.5,
          "perfect prediction gives d=" + fmt(perfect.d_loss) + " g=" + fmt(perfect.g_loss));
    const ScoreLosses zero = score_losses(LossFamily::LeastSquares, 0.0, 0.0);
    check(zero.d_loss == 0.5 && zero.g_loss == 0.5,
          "zero output gives d=" + fmt(zero.d_loss) + " g=" + fmt(zero.g_loss));

    const DiscriminatorParams params = zero_discriminator_params(DiscriminatorConfig{});
    Rng rng(seed);
    nlohmann::ordered_json active = nlohmann::ordered_json::object();
    const std::map<std::size_t, std::vector<std::size_t>> expected = {
        {16, {}}, {100, {32, 64}}, {200, {32, 64, 128}}};
    for (const auto& [frames, want] : expected) {
      const MelSpectrogram real = make_mel(random_tensor({frames, 80}, rng, -4.0, 0.0));
      const MelSpectrogram fake = make_mel(random_tensor({frames, 80}, rng, -4.0, 0.0));
      std::vector<std::size_t> got;
      try {
        const AdversarialResult r = adversarial_losses(real, fake, params, rng);
        got = windows_of(r);
        check(r.d_loss == 0.5 && r.g_loss == 0.5,
              "zero-parameter pipeline gives d=" + fmt(r.d_loss) + " g=" + fmt(r.g_loss));
      } catch (const InputTooShortError&) {
        got.clear();
      }
      check(got == want, "T=" + std::to_string(frames) + " activates the wrong windows");
      active[std::to_string(frames)] = got;
    }
    m["active_windows"] = active;
  });
}

SuiteResult default_configuration() {
  return run_suite("default_configuration", [&](nlohmann::ordered_json& m) {
    const Config c;
    check(c.encoder.hidden == 192, "hidden size");
    check(c.encoder.layers == 2, "encoder layers");
    check(c.encoder.iterations == 5, "propagation iterations");
    check(c.encoders == 2, "encoder count");
    check(c.discriminator.windows == std::vector<std::size_t>{32, 64, 128}, "windows");
    check(c.discriminator.conv_layers() == 3, "conv layers");
    check(c.speakers == 2320, "speakers");
    m["defaults"] = config_to_json(c);

    EncoderConfig en = c.encoder, zh = c.encoder;
    zh.language = Language::Chinese;
    const std::size_t en_params = parameter_count(zero_encoder_params(en));
    const std::size_t zh_params = parameter_count(zero_encoder_params(zh));
    const std::size_t disc_params = parameter_count(zero_discriminator_params(c.discriminator));
    nlohmann::ordered_json census;
    census["encoder_en"] = en_params;
    census["encoder_zh"] = zh_params;
    census["syntactic_encoders_en"] = c.encoders * en_params;
    census["syntactic_encoders_zh"] = c.encoders * zh_params;
    census["speaker_table"] = c.speakers * c.encoder.hidden;
    census["discriminator"] = disc_params;
    m["parameter_census"] = census;

    Rng rng(0);
    const SpeakerTable table = init_speaker_table(c.speakers, c.encoder.hidden, rng);
    check(speaker_embed(c.speakers - 1, table).size() == c.encoder.hidden, "speaker lookup");
    bool rejected = false;
    try {
      speaker_embed(c.speakers, table);
    } catch (const LookupError&) {
      rejected = true;
    }
    check(rejected, "out-of-range speaker id accepted");
  });
}

SuiteResult encoder_oracle_agreement(std::uint64_t seed) {
  return run_suite("encoder_oracle_agreement", [&](nlohmann::ordered_json& m) {
    Rng rng(seed);
    double worst = 0.0;
    for (Language lang : {Language::English, Language::Chinese}) {
      for (bool with_input : {false, true}) {
        EncoderConfig config;
        config.language = lang;
        config.hidden = 6;
        config.sum_includes_input = with_input;
        for (int t = 0; t < 15; ++t) {
          const Sentence s = random_sentence(rng, lang, 10);
          const SyntacticGraph g = build_graph(s.tree, s.boundary);
          const Tensor x = random_phonemes(s.boundary, config.hidden, rng);
          const GraphEncoderParams params = random_encoder_params(config, rng);
          worst = std::max(worst, max_abs_diff(encode(x, s.boundary, g, params),
                                               reference_encode(x, s.boundary, g, params)));
        }
      }
    }
    m["max_abs_diff"] = worst;
    check(worst <= 1e-12, "encoder deviates from the node-by-node oracle by " + fmt(worst));
  });
}

SuiteResult discriminator_invariants(std::uint64_t seed) {
  return run_suite("discriminator_invariants", [&](nlohmann::ordered_json& m) {
    Rng rng(seed);
    DiscriminatorConfig config = reduced_discriminator({8, 12, 16});
    config.channels = 2;
    const DiscriminatorParams params = random_discriminator(config, rng);
    const MelSpectrogram real = make_mel(random_tensor({30, 8}, rng));
    const MelSpectrogram fake = make_mel(random_tensor({24, 8}, rng));

    // Determinism.
    Rng a(7), b(7);
    const AdversarialResult ra = adversarial_losses(real, fake, params, a, true);
    const AdversarialResult rb = adversarial_losses(real, fake, params, b, true);
    check(ra.d_loss == rb.d_loss && ra.g_loss == rb.g_loss,
          "training-mode run not reproducible from a seed");
    const Tensor clip = random_tensor({8, 8}, rng);
    Rng c1(1), c2(2);
    check(disc_forward(clip, params.discriminators[0], config, c1, false) ==
              disc_forward(clip, params.discriminators[0], config, c2, false),
          "inference-mode score depends on the random stream");

    // Ensemble independence: perturb the middle window only.
    DiscriminatorParams perturbed = params;
    for (double& v : perturbed.discriminators[1].kernels[0].data()) v += 0.25;
    Rng p1(11), p2(11);
    const AdversarialResult base = adversarial_losses(real, fake, params, p1, false);
    const AdversarialResult moved = adversarial_losses(real, fake, perturbed, p2, false);
    for (std::size_t i = 0; i < base.per_window.size(); ++i) {
      const bool same = base.per_window[i].real_score == moved.per_window[i].real_score &&
                        base.per_window[i].fake_score == moved.per_window[i].fake_score;
      check(same == (base.per_window[i].window != 12),
            "window " + std::to_string(base.per_window[i].window) +
                " reacted incorrectly to a perturbation of window 12");
    }

    // Loss non-negativity.
    for (int t = 0; t < 1000; ++t) {
      const ScoreLosses s =
          score_losses(LossFamily::LeastSquares, rng.uniform(-5, 5), rng.uniform(-5, 5));
      check(s.d_loss >= 0.0 && s.g_loss >= 0.0, "negative least-squares loss");
    }

    // Window-skip monotonicity.
    for (std::size_t t = 1; t < 40; ++t) {
      const auto shorter = active_windows(config, t);
      const auto longer = active_windows(config, t + 1);
      check(std::includes(longer.begin(), longer.end(), shorter.begin(), shorter.end()),
            "shortening to " + std::to_string(t) + " frames activated a window");
    }

    // Window sampling.
    const MelSpectrogram exact = make_mel(random_tensor({8, 8}, rng));
    check(sample_window(exact, 8, rng)->start == 0, "T = window must start at 0");
    check(!sample_window(exact, 9, rng).has_value(), "T < window must be unavailable");
    const MelSpectrogram plus_one = make_mel(random_tensor({9, 8}, rng));
    std::size_t ones = 0;
    const std::size_t draws = 10000;
    for (std::size_t i = 0; i < draws; ++i) {
      const auto s = sample_window(plus_one, 8, rng);
      check(s->start <= 1, "start outside [0, T - window]");
      ones += s->start;
    }
    const double freq = static_cast<double>(ones) / draws;
    m["start_one_frequency"] = freq;
    // Ten standard deviations of a fair coin over 10^4 draws.
    check(std::abs(freq - 0.5) < 0.05, "start frequencies not uniform: " + fmt(freq));
  });
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
  return {graph_count_laws(seed),
          printed_types_graph(kPrintedTypesConllu),
          batching_equivalence(seed),
          zero_parameter_law(seed),
          gradient_suite(seed),
          stop_gradient(seed),
          conv2d_and_instance_norm(seed),
          round_trips(seed),
          discriminator_losses(seed),
          default_configuration(),
          encoder_oracle_agreement(seed),
          discriminator_invariants(seed)};
}

nlohmann::ordered_json suite_to_json(const SuiteResult& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["seconds"] = r.seconds;
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["metrics"] = r.metrics;
  return j;
}

}  // namespace syntagraph::verify
