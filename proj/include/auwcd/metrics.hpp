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

#ifndef AUWCD_METRICS_HPP_
#define AUWCD_METRICS_HPP_

#include <cstdint>
#include <span>

#include "auwcd/raster.hpp"
#include "auwcd/semantic_align.hpp"

namespace auwcd::metrics {

/// Per-pixel tally. Additive across tiles, so shards can be merged in any
/// order.
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept;
  friend ConfusionCounts operator+(ConfusionCounts a, const ConfusionCounts& b) noexcept {
    return a += b;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth);

// Zero denominators give 0.
double precision(const ConfusionCounts& c) noexcept;
double recall(const ConfusionCounts& c) noexcept;
/// Harmonic mean of precision and recall.
double f1(const ConfusionCounts& c) noexcept;
double overall_accuracy(const ConfusionCounts& c) noexcept;

struct PointAudit {
  std::uint64_t p_total = 0;
  std::uint64_t n_total = 0;
  std::uint64_t p_correct = 0;
  std::uint64_t n_correct = 0;

  PointAudit& operator+=(const PointAudit& o) noexcept;
  friend bool operator==(const PointAudit&, const PointAudit&) = default;
};

/// A positive point is correct when its snapped pixel is set in `truth`, a
/// negative one when it is clear.
PointAudit audit_points(const align::PromptSet& prompts, const BinaryMask& truth);

/// (P_c + N_c) / (P + N). Throws NoPoints when no points were audited.
double point_accuracy(const PointAudit& audit);

/// (1 - f1_cd) / (1 - f1_seg). Throws DegenerateRatio when f1_seg == 1.
double error_ratio(double f1_cd, double f1_seg);

/// Root-sum-square of independent error magnitudes.
double combined_error(std::span<const double> independent_errors);

}  // namespace auwcd::metrics

#endif  // AUWCD_METRICS_HPP_
