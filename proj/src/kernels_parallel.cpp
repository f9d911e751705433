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

#include <omp.h>

#include <algorithm>
#include <cstdint>

#include "auwcd/kernels.hpp"
#include "kernel_detail.hpp"

namespace auwcd::kernels::parallel {

namespace {
// Below this many elements the fork/join costs more than the loop.
constexpr std::int64_t kMinParallel = 1 << 14;
}  // namespace

Tally confusion_tally(std::span<const std::uint8_t> pred,
                      std::span<const std::uint8_t> truth) {
  const auto n = static_cast<std::int64_t>(pred.size());
  std::uint64_t tp = 0, fp = 0, fn = 0;
  const std::uint8_t* p = pred.data();
  const std::uint8_t* g = truth.data();
#pragma omp parallel for simd reduction(+ : tp, fp, fn) if (n >= kMinParallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint64_t pi = p[i] != 0;
    const std::uint64_t gi = g[i] != 0;
    tp += pi & gi;
    fp += pi & (gi ^ 1U);
    fn += (pi ^ 1U) & gi;
  }
  return Tally{tp, fp, static_cast<std::uint64_t>(n) - tp - fp - fn, fn};
}

void xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
              std::span<std::uint8_t> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for simd if (n >= kMinParallel)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::uint8_t>((a[i] != 0) != (b[i] != 0));
  }
}

void project_tokens(std::span<const float> tokens,
                    std::span<const double> direction, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(out.size());
  const auto work = n * static_cast<std::int64_t>(direction.size());
#pragma omp parallel for if (work >= kMinParallel)
  for (std::int64_t k = 0; k < n; ++k) {
    out[k] = detail::dot_row(tokens, static_cast<std::size_t>(k), direction);
  }
}

void bilinear_resample(std::span<const double> src, std::span<double> dst,
                       const ResampleShape& shape) {
  const auto rows = static_cast<std::int64_t>(shape.dst_h);
  const auto work = rows * static_cast<std::int64_t>(shape.dst_w);
#pragma omp parallel for if (work >= kMinParallel)
  for (std::int64_t r = 0; r < rows; ++r) {
    const auto row = static_cast<std::size_t>(r);
    for (std::size_t c = 0; c < shape.dst_w; ++c) {
      dst[row * shape.dst_w + c] = detail::bilinear_at(src, shape, row, c);
    }
  }
}

std::size_t count_above(std::span<const double> values, double threshold) {
  // Blocks of the serial loop keep its vectorized body.
  constexpr std::size_t kBlock = 1 << 12;
  const auto blocks = static_cast<std::int64_t>((values.size() + kBlock - 1) / kBlock);
  std::size_t count = 0;
#pragma omp parallel for reduction(+ : count) if (values.size() >= kMinParallel)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
    count += serial::count_above(
        values.subspan(begin, std::min(kBlock, values.size() - begin)), threshold);
  }
  return count;
}

}  // namespace auwcd::kernels::parallel
