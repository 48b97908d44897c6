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

#include "syntagraph/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "syntagraph/error.hpp"

namespace syntagraph {
namespace {

double checked(double v, const char* where) {
  if (!std::isfinite(v)) {
    throw NumericError(std::string("gradcheck: non-finite value at ") + where);
  }
  return v;
}

}  // namespace

double relative_error(double analytic, double numeric) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / denom;
}

std::vector<double> relative_errors(const ScalarFunction& f, std::span<const double> point,
                                    std::span<const double> analytic, double eps) {
  if (analytic.size() != point.size()) {
    throw ShapeError("gradcheck: gradient has " + std::to_string(analytic.size()) +
                     " entries for a point of dimension " +
                     std::to_string(point.size()));
  }
  if (!(eps > 0.0)) throw ConfigError("gradcheck: eps must be positive");
  std::vector<double> x(point.begin(), point.end());
  std::vector<double> errors(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + eps;
    const double up = checked(f(x), "x + eps");
    x[i] = saved - eps;
    const double down = checked(f(x), "x - eps");
    x[i] = saved;
    const double numeric = (up - down) / (2.0 * eps);
    errors[i] = relative_error(checked(analytic[i], "analytic"), numeric);
  }
  return errors;
}

double max_relative_error(const ScalarFunction& f, std::span<const double> point,
                          std::span<const double> analytic, double eps) {
  const auto errors = relative_errors(f, point, analytic, eps);
  return errors.empty() ? 0.0 : *std::max_element(errors.begin(), errors.end());
}

double gradcheck(const DifferentiableFunction& f, std::span<const double> point,
                 double eps) {
  const ValueAndGradient at = f(point);
  checked(at.value, "x");
  return max_relative_error(
      [&f](std::span<const double> x) { return f(x).value; }, point,
      at.gradient, eps);
}

}  // namespace syntagraph
