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

#include "auwcd/change_detect.hpp"

#include "auwcd/error.hpp"
#include "auwcd/kernels.hpp"

namespace auwcd::cd {

BinaryMask symmetric_difference(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::kShapeMismatch, "change masks differ in size");
  }
  BinaryMask out(a.width(), a.height());
  kernels::parallel::xor_bits(a.bits(), b.bits(), out.bits());
  return out;
}

std::map<EpochPair, BinaryMask> pairwise_change_maps(std::span<const BinaryMask> masks) {
  if (masks.size() < 2) {
    throw Error(ErrorCode::kInvalidInput, "need at least two epochs");
  }
  std::map<EpochPair, BinaryMask> out;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = i + 1; j < masks.size(); ++j) {
      out.emplace(EpochPair{i, j}, symmetric_difference(masks[i], masks[j]));
    }
  }
  return out;
}

}  // namespace auwcd::cd
