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

#ifndef AUWCD_ERROR_PROPAGATION_HPP_
#define AUWCD_ERROR_PROPAGATION_HPP_

// Monte-Carlo study of how independent per-epoch segmentation errors
// propagate into the XOR change map.
//
// Each trial draws a pair of truth masks pixelwise: a pixel is CRoI in both
// epochs, in exactly one of them, or in neither, so that each epoch covers
// `croi_fraction` of the tile and the epochs disagree on `change_fraction`.
// Both epochs' perfect masks are then corrupted by independent pixel flips and
// the CD and extraction F1 scores are compared through error_ratio().

#include <cstddef>
#include <cstdint>
#include <vector>

namespace auwcd::metrics {

struct ErrorPropagationParams {
  std::size_t width = 64;
  std::size_t height = 64;
  double croi_fraction = 0.25;
  double change_fraction = 0.35;
  double flip_prob = 0.01;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
};

struct ErrorPropagationResult {
  std::vector<double> ratios;  // one per trial
  double mean_ratio = 0.0;
  double stddev_ratio = 0.0;
  double mean_f1_cd = 0.0;
  double mean_f1_seg = 0.0;
};

/// Throws InvalidInput when the fractions cannot be realized
/// (change_fraction / 2 > croi_fraction or croi_fraction + change_fraction / 2 > 1).
ErrorPropagationResult simulate_error_propagation(const ErrorPropagationParams& params);

/// Large-tile limit of the study: ratio of the expected F1 errors when every
/// pixel flips independently with probability `flip_prob`.
double expected_error_ratio(double croi_fraction, double change_fraction,
                            double flip_prob);

}  // namespace auwcd::metrics

#endif  // AUWCD_ERROR_PROPAGATION_HPP_
