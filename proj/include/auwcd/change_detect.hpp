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

#ifndef AUWCD_CHANGE_DETECT_HPP_
#define AUWCD_CHANGE_DETECT_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <utility>

#include "auwcd/raster.hpp"

namespace auwcd::cd {

/// (A u B) \ (A n B), i.e. pixelwise XOR.
BinaryMask symmetric_difference(const BinaryMask& a, const BinaryMask& b);

using EpochPair = std::pair<std::size_t, std::size_t>;

/// Change map for every (i, j) with i < j.
std::map<EpochPair, BinaryMask> pairwise_change_maps(std::span<const BinaryMask> masks);

}  // namespace auwcd::cd

#endif  // AUWCD_CHANGE_DETECT_HPP_
