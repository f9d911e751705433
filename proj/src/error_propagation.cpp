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

#include "auwcd/error_propagation.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "auwcd/change_detect.hpp"
#include "auwcd/error.hpp"
#include "auwcd/metrics.hpp"
#include "auwcd/raster.hpp"
#include "auwcd/segment.hpp"

namespace auwcd::metrics {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void check(const ErrorPropagationParams& p) {
  const double half = p.change_fraction / 2.0;
  if (p.width == 0 || p.height == 0 || p.trials == 0 || p.croi_fraction < 0.0 ||
      p.change_fraction < 0.0 || half > p.croi_fraction ||
      p.croi_fraction + half > 1.0) {
    throw Error(ErrorCode::kInvalidInput, "unrealizable error-propagation parameters");
  }
}

}  // namespace

ErrorPropagationResult simulate_error_propagation(const ErrorPropagationParams& params) {
  check(params);
  const double only = params.change_fraction / 2.0;
  const double both = params.croi_fraction - only;
  ErrorPropagationResult result;
  result.ratios.reserve(params.trials);
  for (std::size_t trial = 0; trial < params.trials; ++trial) {
    const std::uint64_t trial_seed = mix(params.seed ^ mix(trial));
    std::mt19937_64 rng(trial_seed);
    BinaryMask truth1(params.width, params.height);
    BinaryMask truth2(params.width, params.height);
    for (std::size_t i = 0; i < truth1.size(); ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < both) {
        truth1.bits()[i] = truth2.bits()[i] = 1;
      } else if (u < both + only) {
        truth1.bits()[i] = 1;
      } else if (u < both + 2.0 * only) {
        truth2.bits()[i] = 1;
      }
    }
    BinaryMask pred1 = truth1;
    BinaryMask pred2 = truth2;
    segment::flip_pixels(pred1, params.flip_prob, mix(trial_seed + 1));
    segment::flip_pixels(pred2, params.flip_prob, mix(trial_seed + 2));

    const double f1_seg = f1(confusion(pred1, truth1) + confusion(pred2, truth2));
    const double f1_cd = f1(confusion(cd::symmetric_difference(pred1, pred2),
                                      cd::symmetric_difference(truth1, truth2)));
    result.ratios.push_back(error_ratio(f1_cd, f1_seg));
    result.mean_f1_cd += f1_cd;
    result.mean_f1_seg += f1_seg;
  }
  const double n = static_cast<double>(params.trials);
  result.mean_f1_cd /= n;
  result.mean_f1_seg /= n;
  result.mean_ratio =
      std::accumulate(result.ratios.begin(), result.ratios.end(), 0.0) / n;
  double ss = 0.0;
  for (double r : result.ratios) ss += (r - result.mean_ratio) * (r - result.mean_ratio);
  result.stddev_ratio = params.trials > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return result;
}

double expected_error_ratio(double croi_fraction, double change_fraction,
                            double flip_prob) {
  // 1 - F1 = (FP + FN) / (2 TP + FP + FN). An epoch mask is wrong on a pixel
  // with probability e; the XOR of two is wrong with probability 2e(1 - e).
  const double e = flip_prob;
  const double seg_err = e / (2.0 * croi_fraction * (1.0 - e) + e);
  const double d = 2.0 * e * (1.0 - e);
  const double cd_err = d / (2.0 * change_fraction * (1.0 - d) + d);
  return cd_err / seg_err;
}

}  // namespace auwcd::metrics
