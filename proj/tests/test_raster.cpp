// Copyright 2026 The auwcd Authors.
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

#include <algorithm>
#include <cmath>
#include <random>

#include "auwcd/error.hpp"
#include "auwcd/raster.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace auwcd;

using testing::code_of;

namespace {

std::vector<double> norm(std::vector<double> v) { return minmax_normalize(v); }

}  // namespace

TEST_CASE("minmax_normalize maps endpoints onto [0,1]") {
  CHECK(norm({1, 3, 5}) == std::vector<double>{0, 0.5, 1});
  CHECK(norm({-2, 0, 2}) == std::vector<double>{0, 0.5, 1});
}

TEST_CASE("minmax_normalize of a constant sequence is all zeros") {
  CHECK(norm({4, 4, 4}) == std::vector<double>{0, 0, 0});
  CHECK(norm({-7.5}) == std::vector<double>{0});
}

TEST_CASE("minmax_normalize rejects empty input") {
  CHECK(code_of([] { norm({}); }) == ErrorCode::kInvalidInput);
}

TEST_CASE("minmax_normalize is idempotent on normalized data") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(2 + trial % 40);
    for (auto& x : v) x = u(rng);
    const auto once = minmax_normalize(v);
    CHECK(minmax_normalize(once) == once);
  }
}

TEST_CASE("minmax_normalize is invariant under positive affine maps") {
  std::mt19937_64 rng(12);
  // Dyadic slopes and small integer data keep every step exact.
  std::uniform_int_distribution<int> ints(-1000, 1000);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(3 + trial % 30);
    for (auto& x : v) x = ints(rng);
    v[0] = -1001;  // non-degenerate
    const double a = std::ldexp(1.0, trial % 9 - 4);
    const double b = ints(rng);
    std::vector<double> w(v.size());
    std::transform(v.begin(), v.end(), w.begin(), [&](double x) { return a * x + b; });
    CHECK(minmax_normalize(w) == minmax_normalize(v));
  }
  // General real slopes and offsets agree to rounding.
  std::uniform_real_distribution<double> u(-10, 10);
  std::uniform_real_distribution<double> slope(0.01, 100);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(2 + trial % 30);
    for (auto& x : v) x = u(rng);
    const double a = slope(rng), b = u(rng);
    std::vector<double> w(v.size());
    std::transform(v.begin(), v.end(), w.begin(), [&](double x) { return a * x + b; });
    const auto nv = minmax_normalize(v);
    const auto nw = minmax_normalize(w);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(nw[i] == doctest::Approx(nv[i]).epsilon(1e-12));
  }
}

TEST_CASE("bilinear_upsample keeps constant maps constant") {
  const ScalarMap one(1, 1, std::vector<double>{0.7});
  const ScalarMap up = bilinear_upsample(one, 4, 4);
  CHECK(up.width() == 4);
  CHECK(up.height() == 4);
  for (double v : up.data()) CHECK(v == 0.7);
}

TEST_CASE("bilinear_upsample interpolates linearly between columns") {
  const ScalarMap m(2, 2, std::vector<double>{0, 1, 0, 1});
  const ScalarMap up = bilinear_upsample(m, 3, 2);
  for (std::size_t r = 0; r < 2; ++r) {
    CHECK(up.at(r, 0) == 0.0);
    CHECK(up.at(r, 1) == 0.5);
    CHECK(up.at(r, 2) == 1.0);
  }
}

TEST_CASE("bilinear_upsample preserves corners and bounds") {
  const ScalarMap m(2, 2, std::vector<double>{0, 1, 2, 3});
  const ScalarMap up = bilinear_upsample(m, 4, 4);
  CHECK(up.at(0, 0) == 0.0);
  CHECK(up.at(0, 3) == 1.0);
  CHECK(up.at(3, 0) == 2.0);
  CHECK(up.at(3, 3) == 3.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t w = 1 + trial % 7, h = 1 + trial % 5;
    std::vector<double> v(w * h);
    for (auto& x : v) x = u(rng);
    const ScalarMap src(w, h, v);
    const ScalarMap dst = bilinear_upsample(src, w + trial % 13, h + trial % 11);
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    for (double x : dst.data()) {
      CHECK(x >= *lo);
      CHECK(x <= *hi);
    }
    CHECK(dst.at(0, 0) == src.at(0, 0));
    CHECK(dst.at(dst.height() - 1, dst.width() - 1) == src.at(h - 1, w - 1));
  }
}

TEST_CASE("bilinear_upsample matches hand-computed interior values") {
  // 2x2 -> 3x3: the centre is the mean of the four corners.
  const ScalarMap m(2, 2, std::vector<double>{0, 1, 2, 3});
  const ScalarMap up = bilinear_upsample(m, 3, 3);
  CHECK(up.at(1, 1) == 1.5);
  CHECK(up.at(0, 1) == 0.5);
  CHECK(up.at(1, 0) == 1.0);
}

TEST_CASE("bilinear_upsample refuses to shrink") {
  const ScalarMap m(4, 4);
  CHECK(code_of([&] { bilinear_upsample(m, 3, 4); }) == ErrorCode::kUnsupportedResample);
  CHECK(code_of([&] { bilinear_upsample(m, 4, 2); }) == ErrorCode::kUnsupportedResample);
}

TEST_CASE("reshape_to_map is row-major") {
  const std::vector<double> abcd{1, 2, 3, 4};
  const ScalarMap m = reshape_to_map(abcd, 2);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 2);
  CHECK(m.at(1, 0) == 3);
  CHECK(m.at(1, 1) == 4);

  std::vector<double> seq(49);
  for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = static_cast<double>(i);
  CHECK(reshape_to_map(seq, 7).at(2, 3) == 17);
}

TEST_CASE("reshape_to_map rejects a length mismatch") {
  const std::vector<double> nine(9, 0.0);
  CHECK(code_of([&] { reshape_to_map(nine, 2); }) == ErrorCode::kShapeMismatch);
}

TEST_CASE("raster containers check their data length") {
  CHECK(code_of([] { ImageRaster(2, 2, 3, std::vector<std::uint8_t>(11)); }) ==
        ErrorCode::kShapeMismatch);
  CHECK(code_of([] { BinaryMask(2, 2, std::vector<std::uint8_t>(5)); }) ==
        ErrorCode::kShapeMismatch);
  const BinaryMask m(2, 1, std::vector<std::uint8_t>{0, 7});
  CHECK(m.bits()[1] == 1);
  CHECK(m.count() == 1);
}
