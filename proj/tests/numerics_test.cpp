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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "syntagraph/conv.hpp"
#include "syntagraph/error.hpp"
#include "syntagraph/gradcheck.hpp"
#include "syntagraph/ops.hpp"
#include "syntagraph/rng.hpp"
#include "syntagraph/tensor.hpp"
#include "syntagraph/verify/generators.hpp"
#include "syntagraph/verify/reference.hpp"

namespace syntagraph {
namespace {

using verify::random_tensor;

// Central-difference check of a vector-Jacobian product: compares
// sum(dy (.) f(x)) numerically against dot(dx, direction) per coordinate.
template <typename F>
double vjp_error(F f, const Tensor& x, const Tensor& dy, const Tensor& dx) {
  Tensor scratch = x;
  const auto loss = [&](std::span<const double> v) {
    std::copy(v.begin(), v.end(), scratch.data().begin());
    return dot(dy, f(scratch));
  };
  return max_relative_error(loss, x.values(), dx.values());
}

TEST(TensorTest, RejectsNonFiniteExternalData) {
  EXPECT_THROW(Tensor::from_external({2}, {1.0, NAN}), NumericError);
  EXPECT_THROW(Tensor::from_external({1}, {INFINITY}), NumericError);
  EXPECT_NO_THROW(Tensor::from_external({2}, {1.0, -2.0}));
}

TEST(TensorTest, ShapeAndDataMustAgree) {
  EXPECT_THROW(Tensor({2, 2}, std::vector<double>{1, 2, 3}), ShapeError);
  EXPECT_THROW(Tensor(Shape{2, 0}), ShapeError);
}

TEST(TensorTest, JsonRoundTrip) {
  Rng rng(1);
  const Tensor t = random_tensor({3, 4}, rng);
  EXPECT_EQ(tensor_from_json(nlohmann::ordered_json::parse(tensor_to_json(t).dump())), t);
  EXPECT_THROW(tensor_from_json(nlohmann::ordered_json::parse(R"({"shape":[2],"data":[1]})")),
               Error);
}

TEST(OpsTest, SigmoidOfZeroIsHalf) {
  EXPECT_EQ(sigmoid(Tensor({1}, 0.0))[0], 0.5);
}

TEST(OpsTest, LeakyReluNegativeSide) {
  EXPECT_DOUBLE_EQ(leaky_relu(Tensor({1}, -1.0), 0.2)[0], -0.2);
  EXPECT_EQ(leaky_relu(Tensor({1}, 3.0), 0.2)[0], 3.0);
}

TEST(OpsTest, MatmulByIdentity) {
  Rng rng(2);
  for (std::size_t t = 0; t < 20; ++t) {
    const Tensor a = random_tensor({1 + t % 5, 1 + t % 7}, rng);
    EXPECT_EQ(matmul(a, Tensor::identity(a.cols())), a);
  }
}

TEST(OpsTest, ShapeMismatchNamesBothShapes) {
  try {
    matmul(Tensor({2, 3}), Tensor({2, 3}));
    FAIL() << "expected ShapeError";
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("[2, 3]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(add(Tensor({2}), Tensor({3})), ShapeError);
}

TEST(OpsTest, TransposedProductsMatchExplicitOnes) {
  Rng rng(3);
  const Tensor a = random_tensor({4, 3}, rng), b = random_tensor({4, 5}, rng);
  const Tensor c = random_tensor({5, 3}, rng);
  Tensor at({3, 4});
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 3; ++j) at.at(j, i) = a.at(i, j);
  }
  EXPECT_LT(max_abs_diff(matmul_tn(a, b), matmul(at, b)), 1e-15);
  Tensor ct({3, 5});
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 3; ++j) ct.at(j, i) = c.at(i, j);
  }
  EXPECT_LT(max_abs_diff(matmul_nt(a, c), matmul(a, ct)), 1e-15);
}

TEST(OpsTest, BackwardPassesMatchFiniteDifferences) {
  Rng rng(4);
  const Tensor x = random_tensor({3, 4}, rng), w = random_tensor({4, 2}, rng);
  const Tensor dy2 = random_tensor({3, 2}, rng), dy = random_tensor({3, 4}, rng);

  const MatmulGrad mg = matmul_backward(x, w, dy2);
  EXPECT_LT(vjp_error([&](const Tensor& v) { return matmul(v, w); }, x, dy2, mg.da), 1e-8);
  EXPECT_LT(vjp_error([&](const Tensor& v) { return matmul(x, v); }, w, dy2, mg.db), 1e-8);

  const Tensor s = sigmoid(x);
  EXPECT_LT(vjp_error([](const Tensor& v) { return sigmoid(v); }, x, dy, sigmoid_backward(s, dy)),
            1e-8);
  const Tensor th = tanh(x);
  EXPECT_LT(vjp_error([](const Tensor& v) { return tanh(v); }, x, dy, tanh_backward(th, dy)),
            1e-8);

  const Tensor other = random_tensor({3, 4}, rng);
  const MulGrad mu = mul_backward(x, other, dy);
  EXPECT_LT(vjp_error([&](const Tensor& v) { return mul(v, other); }, x, dy, mu.da), 1e-8);

  const Tensor bias = random_tensor({4}, rng);
  EXPECT_LT(vjp_error([&](const Tensor& v) { return add_row_bias(x, v); }, bias, dy,
                      column_sum(dy)),
            1e-8);

  for (std::size_t axis : {0, 1}) {
    const Tensor dm = random_tensor(mean_over_axis(x, axis).shape(), rng);
    EXPECT_LT(vjp_error([&](const Tensor& v) { return mean_over_axis(v, axis); }, x, dm,
                        mean_over_axis_backward(x.shape(), axis, dm)),
              1e-8);
  }
}

TEST(OpsTest, ConcatRowsRoundTrip) {
  Rng rng(5);
  const std::vector<Tensor> parts = {random_tensor({2, 3}, rng), random_tensor({1, 3}, rng),
                                     random_tensor({4, 3}, rng)};
  const Tensor all = concat_rows(parts);
  EXPECT_EQ(all.rows(), 7u);
  const std::vector<std::size_t> rows = {2, 1, 4};
  EXPECT_EQ(concat_rows_backward(all, rows), parts);
  EXPECT_THROW(concat_rows(std::vector<Tensor>{Tensor({1, 2}), Tensor({1, 3})}), ShapeError);
}

TEST(Conv2dTest, OneByOneUnitKernelIsIdentity) {
  Rng rng(6);
  const Tensor x = random_tensor({1, 5, 6}, rng);
  EXPECT_EQ(conv2d(x, Tensor({1, 1, 1, 1}, 1.0), {1, 0}), x);
}

TEST(Conv2dTest, OnesKernelCountsNeighbours) {
  const Tensor y = conv2d(Tensor({1, 4, 4}, 1.0), Tensor({1, 1, 3, 3}, 1.0), {1, 1});
  ASSERT_EQ(y.shape(), (Shape{1, 4, 4}));
  EXPECT_EQ(y.at(0, 0, 0), 4.0);
  EXPECT_EQ(y.at(0, 0, 3), 4.0);
  EXPECT_EQ(y.at(0, 3, 0), 4.0);
  EXPECT_EQ(y.at(0, 3, 3), 4.0);
  EXPECT_EQ(y.at(0, 1, 1), 9.0);
  EXPECT_EQ(y.at(0, 2, 2), 9.0);
  EXPECT_EQ(y.at(0, 0, 1), 6.0);
}

TEST(Conv2dTest, MatchesNestedLoopReferenceExactly) {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 1 + t % 3, stride = 1 + t % 2, pad = t % 3;
    const Tensor x = random_tensor({2, k + 3, k + 5}, rng);
    const Tensor w = random_tensor({3, 2, k, k}, rng);
    const Tensor b = random_tensor({3}, rng);
    EXPECT_EQ(conv2d(x, w, b, {stride, pad}), verify::reference_conv2d(x, w, b, stride, pad));
  }
}

TEST(Conv2dTest, DegenerateOutputIsShapeError) {
  EXPECT_THROW(conv2d(Tensor({1, 2, 2}), Tensor({1, 1, 3, 3}), {1, 0}), ShapeError);
  EXPECT_THROW(conv2d(Tensor({2, 4, 4}), Tensor({1, 1, 3, 3}), {1, 0}), ShapeError);
}

TEST(Conv2dTest, BackwardMatchesFiniteDifferences) {
  Rng rng(8);
  const Conv2dGeometry geo{2, 1};
  const Tensor x = random_tensor({2, 5, 6}, rng), w = random_tensor({3, 2, 3, 3}, rng);
  const Tensor b = random_tensor({3}, rng);
  const Tensor y = conv2d(x, w, b, geo);
  const Tensor dy = random_tensor(y.shape(), rng);
  const Conv2dGrad g = conv2d_backward(x, w, geo, dy);
  EXPECT_LT(vjp_error([&](const Tensor& v) { return conv2d(v, w, b, geo); }, x, dy, g.dinput),
            1e-8);
  EXPECT_LT(vjp_error([&](const Tensor& v) { return conv2d(x, v, b, geo); }, w, dy, g.dkernel),
            1e-8);
  EXPECT_LT(vjp_error([&](const Tensor& v) { return conv2d(x, w, v, geo); }, b, dy, g.dbias),
            1e-8);
}

TEST(InstanceNormTest, ConstantChannelGivesZeros) {
  const Tensor y = instance_norm(Tensor({2, 3, 3}, 7.5), 1e-5);
  for (double v : y.values()) EXPECT_EQ(v, 0.0);
}

TEST(InstanceNormTest, TwoValueChannel) {
  const Tensor y = instance_norm(Tensor({1, 1, 2}, std::vector<double>{0.0, 2.0}), 1e-5);
  const double expected = 1.0 / std::sqrt(1.0 + 1e-5);
  EXPECT_DOUBLE_EQ(y[0], -expected);
  EXPECT_DOUBLE_EQ(y[1], expected);
}

TEST(InstanceNormTest, OutputStatistics) {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const Tensor y = instance_norm(random_tensor({3, 5, 7}, rng, -50.0, 50.0), 1e-5);
    for (std::size_t c = 0; c < 3; ++c) {
      double mean = 0.0, var = 0.0;
      for (std::size_t i = 0; i < 35; ++i) mean += y[c * 35 + i];
      mean /= 35.0;
      for (std::size_t i = 0; i < 35; ++i) var += (y[c * 35 + i] - mean) * (y[c * 35 + i] - mean);
      var /= 35.0;
      EXPECT_LT(std::abs(mean), 1e-12);
      EXPECT_NEAR(var, 1.0, 1e-6);
    }
  }
}

TEST(InstanceNormTest, BackwardMatchesFiniteDifferences) {
  Rng rng(10);
  const Tensor x = random_tensor({2, 3, 4}, rng);
  const Tensor dy = random_tensor(x.shape(), rng);
  EXPECT_LT(vjp_error([](const Tensor& v) { return instance_norm(v, 1e-5); }, x, dy,
                      instance_norm_backward(x, 1e-5, dy)),
            1e-7);
}

TEST(DropoutTest, RateZeroAndInferenceAreIdentity) {
  Rng rng(11);
  const Tensor x = random_tensor({4, 4}, rng);
  Rng a(1), b(1);
  EXPECT_EQ(dropout(x, 0.0, a, true), x);
  EXPECT_EQ(dropout(x, 0.7, a, false), x);
  // Neither call consumed randomness.
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(DropoutTest, ZeroFractionTracksRate) {
  Rng rng(12);
  const Tensor mask = dropout_mask({1000, 1000}, 0.1, rng);
  std::size_t zeros = 0;
  for (double v : mask.values()) {
    if (v == 0.0) {
      ++zeros;
    } else {
      EXPECT_EQ(v, 1.0 / 0.9);
    }
  }
  EXPECT_NEAR(static_cast<double>(zeros) / 1e6, 0.1, 0.01);
}

TEST(DropoutTest, RateOutsideRangeIsConfigError) {
  Rng rng(13);
  EXPECT_THROW(dropout(Tensor({2}), 1.0, rng, true), ConfigError);
  EXPECT_THROW(dropout(Tensor({2}), -0.1, rng, true), ConfigError);
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_NE(a.next_u64(), c.next_u64());
}

TEST(RngTest, UniformIntStaysInRange) {
  Rng rng(14);
  std::vector<int> hits(5);
  for (int i = 0; i < 5000; ++i) {
    const auto v = rng.uniform_int(-2, 2);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 2);
    ++hits[static_cast<std::size_t>(v + 2)];
  }
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(GradcheckTest, SquareAtThree) {
  const auto f = [](std::span<const double> x) {
    return ValueAndGradient{x[0] * x[0], {2.0 * x[0]}};
  };
  const std::vector<double> point = {3.0};
  EXPECT_LT(gradcheck(f, point), 1e-9);
}

TEST(GradcheckTest, QuadraticFormsAreExactUpToRoundoff) {
  Rng rng(15);
  for (int t = 0; t < 10; ++t) {
    const Tensor a = random_tensor({4, 4}, rng);
    const Tensor x = random_tensor({4, 1}, rng);
    // f = x^T A x, grad = (A + A^T) x. Truncation error vanishes; roundoff is
    // about 1e-16 |f| / eps.
    const auto f = [&](std::span<const double> v) {
      const Tensor xv({4, 1}, std::vector<double>(v.begin(), v.end()));
      return dot(xv, matmul(a, xv));
    };
    const Tensor grad = add(matmul(a, x), matmul_tn(a, x));
    EXPECT_LT(max_relative_error(f, x.values(), grad.values()), 1e-8);
  }
}

TEST(GradcheckTest, DetectsWrongGradient) {
  const auto f = [](std::span<const double> x) { return x[0] * x[0]; };
  const std::vector<double> point = {3.0}, wrong = {-6.0};
  EXPECT_GT(max_relative_error(f, point, wrong), 1.0);
}

TEST(GradcheckTest, NonFiniteIsNumericError) {
  const auto f = [](std::span<const double> x) { return std::log(x[0]); };
  const std::vector<double> point = {0.0}, grad = {1.0};
  EXPECT_THROW(max_relative_error(f, point, grad), NumericError);
}

}  // namespace
}  // namespace syntagraph
