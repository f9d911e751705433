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

#include "auwcd/metrics.hpp"

#include <cmath>

#include "auwcd/error.hpp"
#include "auwcd/kernels.hpp"
#include "auwcd/segment.hpp"

namespace auwcd::metrics {

namespace {
double ratio(std::uint64_t num, std::uint64_t den) noexcept {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) noexcept {
  tp += o.tp;
  fp += o.fp;
  tn += o.tn;
  fn += o.fn;
  return *this;
}

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth) {
  if (!pred.same_shape(truth)) {
    throw Error(ErrorCode::kShapeMismatch, "prediction and label differ in size");
  }
  const auto t = kernels::parallel::confusion_tally(pred.bits(), truth.bits());
  return {t.tp, t.fp, t.tn, t.fn};
}

double precision(const ConfusionCounts& c) noexcept { return ratio(c.tp, c.tp + c.fp); }

double recall(const ConfusionCounts& c) noexcept { return ratio(c.tp, c.tp + c.fn); }

double f1(const ConfusionCounts& c) noexcept {
  const double p = precision(c);
  const double r = recall(c);
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

double overall_accuracy(const ConfusionCounts& c) noexcept {
  return ratio(c.tp + c.tn, c.total());
}

PointAudit& PointAudit::operator+=(const PointAudit& o) noexcept {
  p_total += o.p_total;
  n_total += o.n_total;
  p_correct += o.p_correct;
  n_correct += o.n_correct;
  return *this;
}

PointAudit audit_points(const align::PromptSet& prompts, const BinaryMask& truth) {
  PointAudit a;
  auto on_roi = [&](const align::PromptPoint& p) {
    const auto [x, y] = segment::snap_to_pixel(p.x, p.y, truth.width(), truth.height());
    return truth.get(x, y);
  };
  for (const auto& p : prompts.positives) {
    ++a.p_total;
    if (on_roi(p)) ++a.p_correct;
  }
  for (const auto& p : prompts.negatives) {
    ++a.n_total;
    if (!on_roi(p)) ++a.n_correct;
  }
  return a;
}

double point_accuracy(const PointAudit& audit) {
  const std::uint64_t total = audit.p_total + audit.n_total;
  if (total == 0) throw Error(ErrorCode::kNoPoints, "no prompt points to audit");
  return static_cast<double>(audit.p_correct + audit.n_correct) /
         static_cast<double>(total);
}

double error_ratio(double f1_cd, double f1_seg) {
  if (f1_seg == 1.0) {
    throw Error(ErrorCode::kDegenerateRatio, "segmentation F1 is 1, ratio undefined");
  }
  return (1.0 - f1_cd) / (1.0 - f1_seg);
}

double combined_error(std::span<const double> independent_errors) {
  double sum = 0.0;
  for (double e : independent_errors) {
    if (!(e >= 0.0)) throw Error(ErrorCode::kInvalidInput, "errors must be non-negative");
    sum += e * e;
  }
  return std::sqrt(sum);
}

}  // namespace auwcd::metrics
