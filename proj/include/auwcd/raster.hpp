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

#ifndef AUWCD_RASTER_HPP_
#define AUWCD_RASTER_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace auwcd {

/// 8-bit image, row-major with interleaved channels (1 = gray, 3 = RGB).
class ImageRaster {
 public:
  ImageRaster() = default;
  ImageRaster(std::size_t width, std::size_t height, std::size_t channels);
  ImageRaster(std::size_t width, std::size_t height, std::size_t channels,
              std::vector<std::uint8_t> data);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t channels() const noexcept { return channels_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  std::uint8_t at(std::size_t x, std::size_t y, std::size_t c = 0) const {
    return data_[(y * width_ + x) * channels_ + c];
  }
  void set(std::size_t x, std::size_t y, std::size_t c, std::uint8_t v) {
    data_[(y * width_ + x) * channels_ + c] = v;
  }

  friend bool operator==(const ImageRaster&, const ImageRaster&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::size_t channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Real-valued grid, row-major. Houses similarity maps.
class ScalarMap {
 public:
  ScalarMap() = default;
  ScalarMap(std::size_t width, std::size_t height, double fill = 0.0);
  ScalarMap(std::size_t width, std::size_t height, std::vector<double> data);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  double at(std::size_t row, std::size_t col) const {
    return data_[row * width_ + col];
  }
  double& at(std::size_t row, std::size_t col) {
    return data_[row * width_ + col];
  }

  friend bool operator==(const ScalarMap&, const ScalarMap&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> data_;
};

/// Per-pixel membership mask. One logical bit per pixel, stored one byte per
/// pixel holding 0 or 1 so the pixel kernels can vectorize.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(std::size_t width, std::size_t height);
  /// Any non-zero input byte becomes 1.
  BinaryMask(std::size_t width, std::size_t height,
             std::vector<std::uint8_t> bits);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::span<std::uint8_t> bits() noexcept { return bits_; }

  bool get(std::size_t x, std::size_t y) const {
    return bits_[y * width_ + x] != 0;
  }
  void set(std::size_t x, std::size_t y, bool value) {
    bits_[y * width_ + x] = value ? 1 : 0;
  }

  std::size_t count() const noexcept;
  bool same_shape(const BinaryMask& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Min-max normalization onto [0, 1]. A constant input maps to all zeros.
/// Throws InvalidInput on an empty sequence.
std::vector<double> minmax_normalize(std::span<const double> values);

/// Corner-aligned bilinear resampling to a target at least as large as the
/// source in both dimensions. Throws UnsupportedResample otherwise.
ScalarMap bilinear_upsample(const ScalarMap& map, std::size_t target_width,
                            std::size_t target_height);

/// Row-major side x side map from a flat vector of side^2 entries.
ScalarMap reshape_to_map(std::span<const double> values, std::size_t side);

}  // namespace auwcd

#endif  // AUWCD_RASTER_HPP_
