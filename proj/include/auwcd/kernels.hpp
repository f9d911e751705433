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

#ifndef AUWCD_KERNELS_HPP_
#define AUWCD_KERNELS_HPP_

// Pixel- and token-level inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel` with the same
// signature; the two must agree bit-exactly. Library code calls the parallel
// versions, tests and the benchmark compare them against the reference.

#include <cstddef>
#include <cstdint>
#include <span>

namespace auwcd::kernels {

struct Tally {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  friend bool operator==(const Tally&, const Tally&) = default;
};

/// Shape of a resampling job: source is src_w x src_h, destination dst_w x
/// dst_h, both row-major.
struct ResampleShape {
  std::size_t src_w = 0;
  std::size_t src_h = 0;
  std::size_t dst_w = 0;
  std::size_t dst_h = 0;
};

namespace serial {

Tally confusion_tally(std::span<const std::uint8_t> pred,
                      std::span<const std::uint8_t> truth);

void xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
              std::span<std::uint8_t> out);

/// out[k] = dot(tokens[k, :], direction) for `out.size()` consecutive rows of
/// width direction.size().
void project_tokens(std::span<const float> tokens,
                    std::span<const double> direction, std::span<double> out);

/// Corner-aligned bilinear interpolation.
void bilinear_resample(std::span<const double> src, std::span<double> dst,
                       const ResampleShape& shape);

std::size_t count_above(std::span<const double> values, double threshold);

}  // namespace serial

namespace parallel {

Tally confusion_tally(std::span<const std::uint8_t> pred,
                      std::span<const std::uint8_t> truth);

void xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
              std::span<std::uint8_t> out);

void project_tokens(std::span<const float> tokens,
                    std::span<const double> direction, std::span<double> out);

void bilinear_resample(std::span<const double> src, std::span<double> dst,
                       const ResampleShape& shape);

std::size_t count_above(std::span<const double> values, double threshold);

}  // namespace parallel

}  // namespace auwcd::kernels

#endif  // AUWCD_KERNELS_HPP_
