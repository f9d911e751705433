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

#include "auwcd/raster.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "auwcd/error.hpp"
#include "auwcd/kernels.hpp"

namespace auwcd {

ImageRaster::ImageRaster(std::size_t width, std::size_t height,
                         std::size_t channels)
    : ImageRaster(width, height, channels,
                  std::vector<std::uint8_t>(width * height * channels, 0)) {}

ImageRaster::ImageRaster(std::size_t width, std::size_t height,
                         std::size_t channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels),
      data_(std::move(data)) {
  if (width == 0 || height == 0 || channels == 0) {
    throw Error(ErrorCode::kInvalidInput, "image dimensions must be positive");
  }
  if (data_.size() != width * height * channels) {
    throw Error(ErrorCode::kShapeMismatch,
                "image data length " + std::to_string(data_.size()) +
                    " != width*height*channels");
  }
}

ScalarMap::ScalarMap(std::size_t width, std::size_t height, double fill)
    : ScalarMap(width, height, std::vector<double>(width * height, fill)) {}

ScalarMap::ScalarMap(std::size_t width, std::size_t height,
                     std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (data_.size() != width * height) {
    throw Error(ErrorCode::kShapeMismatch,
                "map data length " + std::to_string(data_.size()) +
                    " != width*height");
  }
}

BinaryMask::BinaryMask(std::size_t width, std::size_t height)
    : width_(width), height_(height), bits_(width * height, 0) {}

BinaryMask::BinaryMask(std::size_t width, std::size_t height,
                       std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (bits_.size() != width * height) {
    throw Error(ErrorCode::kShapeMismatch,
                "mask data length " + std::to_string(bits_.size()) +
                    " != width*height");
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(bits_.begin(), bits_.end(), [](auto b) { return b != 0; }));
}

std::vector<double> minmax_normalize(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidInput, "cannot normalize an empty sequence");
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  std::vector<double> out(values.size(), 0.0);
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = std::clamp((values[i] - lo) / range, 0.0, 1.0);
  }
  return out;
}

ScalarMap bilinear_upsample(const ScalarMap& map, std::size_t target_width,
                            std::size_t target_height) {
  if (map.empty()) {
    throw Error(ErrorCode::kInvalidInput, "cannot resample an empty map");
  }
  if (target_width < map.width() || target_height < map.height()) {
    throw Error(ErrorCode::kUnsupportedResample,
                "target " + std::to_string(target_width) + "x" +
                    std::to_string(target_height) + " is smaller than source " +
                    std::to_string(map.width()) + "x" +
                    std::to_string(map.height()));
  }
  ScalarMap out(target_width, target_height);
  kernels::parallel::bilinear_resample(
      map.data(), out.data(),
      {map.width(), map.height(), target_width, target_height});
  return out;
}

ScalarMap reshape_to_map(std::span<const double> values, std::size_t side) {
  if (side == 0 || values.size() != side * side) {
    throw Error(ErrorCode::kShapeMismatch,
                "vector of length " + std::to_string(values.size()) +
                    " cannot be reshaped to " + std::to_string(side) + "x" +
                    std::to_string(side));
  }
  return ScalarMap(side, side, std::vector<double>(values.begin(), values.end()));
}

}  // namespace auwcd
