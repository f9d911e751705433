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

#ifndef AUWCD_SRC_KERNEL_DETAIL_HPP_
#define AUWCD_SRC_KERNEL_DETAIL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

#include "auwcd/kernels.hpp"

namespace auwcd::kernels::detail {

// Source coordinate of destination index `i` with corner alignment.
inline double source_coord(std::size_t i, std::size_t src, std::size_t dst) {
  if (dst <= 1 || src <= 1) return 0.0;
  return static_cast<double>(i * (src - 1)) / static_cast<double>(dst - 1);
}

inline double bilinear_at(std::span<const double> src,
                          const ResampleShape& s, std::size_t row,
                          std::size_t col) {
  const double sy = source_coord(row, s.src_h, s.dst_h);
  const double sx = source_coord(col, s.src_w, s.dst_w);
  const auto y0 = std::min(static_cast<std::size_t>(sy), s.src_h - 1);
  const auto x0 = std::min(static_cast<std::size_t>(sx), s.src_w - 1);
  const auto y1 = std::min(y0 + 1, s.src_h - 1);
  const auto x1 = std::min(x0 + 1, s.src_w - 1);
  const double fy = sy - static_cast<double>(y0);
  const double fx = sx - static_cast<double>(x0);
  const double top = std::lerp(src[y0 * s.src_w + x0], src[y0 * s.src_w + x1], fx);
  const double bottom =
      std::lerp(src[y1 * s.src_w + x0], src[y1 * s.src_w + x1], fx);
  return std::lerp(top, bottom, fy);
}

inline double dot_row(std::span<const float> tokens, std::size_t row,
                      std::span<const double> direction) {
  const std::size_t dim = direction.size();
  const float* p = tokens.data() + row * dim;
  double acc = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    acc += static_cast<double>(p[d]) * direction[d];
  }
  return acc;
}

}  // namespace auwcd::kernels::detail

#endif  // AUWCD_SRC_KERNEL_DETAIL_HPP_
