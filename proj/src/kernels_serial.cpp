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

#include "auwcd/kernels.hpp"

#include "kernel_detail.hpp"

namespace auwcd::kernels::serial {

Tally confusion_tally(std::span<const std::uint8_t> pred,
                      std::span<const std::uint8_t> truth) {
  Tally t;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] != 0;
    const bool g = truth[i] != 0;
    if (p && g) {
      ++t.tp;
    } else if (p) {
      ++t.fp;
    } else if (g) {
      ++t.fn;
    } else {
      ++t.tn;
    }
  }
  return t;
}

void xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
              std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((a[i] != 0) != (b[i] != 0));
  }
}

void project_tokens(std::span<const float> tokens,
                    std::span<const double> direction, std::span<double> out) {
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = detail::dot_row(tokens, k, direction);
  }
}

void bilinear_resample(std::span<const double> src, std::span<double> dst,
                       const ResampleShape& shape) {
  for (std::size_t r = 0; r < shape.dst_h; ++r) {
    for (std::size_t c = 0; c < shape.dst_w; ++c) {
      dst[r * shape.dst_w + c] = detail::bilinear_at(src, shape, r, c);
    }
  }
}

std::size_t count_above(std::span<const double> values, double threshold) {
  std::size_t n = 0;
  for (const double v : values) {
    if (v > threshold) ++n;
  }
  return n;
}

}  // namespace auwcd::kernels::serial
