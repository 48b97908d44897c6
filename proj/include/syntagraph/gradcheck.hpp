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

#include <functional>
#include <span>
#include <vector>

namespace syntagraph {

struct ValueAndGradient {
  double value = 0.0;
  std::vector<double> gradient;
};

using ScalarFunction = std::function<double(std::span<const double>)>;
using DifferentiableFunction =
    std::function<ValueAndGradient(std::span<const double>)>;

// |a - n| / max(|a|, |n|, 1e-8)
double relative_error(double analytic, double numeric);

// Per-coordinate relative error of `analytic` against central differences.
std::vector<double> relative_errors(const ScalarFunction& f, std::span<const double> point,
                                    std::span<const double> analytic, double eps = 1e-5);

// Central differences (f(x + eps) - f(x - eps)) / (2 eps) per coordinate,
// compared against `analytic`. Returns the largest relative error.
// Throws NumericError if any evaluation is non-finite.
double max_relative_error(const ScalarFunction& f, std::span<const double> point,
                          std::span<const double> analytic, double eps = 1e-5);

// Evaluates `f` at `point` for the analytic gradient, then checks it.
double gradcheck(const DifferentiableFunction& f, std::span<const double> point,
                 double eps = 1e-5);

}  // namespace syntagraph
