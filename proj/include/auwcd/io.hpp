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

#ifndef AUWCD_IO_HPP_
#define AUWCD_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "auwcd/raster.hpp"

namespace auwcd::io {

// Binary netpbm: P6 (RGB) and P5 (gray), maxval 255 only. The header is
// "magic ws [#comment\n] width ws height ws maxval" followed by exactly one
// whitespace byte and the raster.

std::vector<std::uint8_t> encode_pnm(const ImageRaster& image);
/// Decodes P5 to a 1-channel raster and P6 to a 3-channel raster.
ImageRaster decode_pnm(std::span<const std::uint8_t> bytes);

ImageRaster read_ppm(const std::filesystem::path& path);
ImageRaster read_pgm(const std::filesystem::path& path);
void write_pnm(const std::filesystem::path& path, const ImageRaster& image);

/// Masks persist as P5 with 0 / 255; on read any sample >= 128 is set.
BinaryMask mask_from_gray(const ImageRaster& gray);
ImageRaster mask_to_gray(const BinaryMask& mask);
BinaryMask read_mask(const std::filesystem::path& path);
void write_mask(const std::filesystem::path& path, const BinaryMask& mask);

/// Visualization: each value (expected in [0,1]) times 255, rounded half up
/// and clamped to [0,255].
ImageRaster scalar_map_to_gray(const ScalarMap& map);

// TensorFile ("AUWT"): magic, u8 version = 1, u8 dtype, u8 ndim, u8 pad = 0,
// ndim x u32 dims, row-major payload. Everything little-endian.

enum class DType : std::uint8_t { kFloat32 = 1, kUInt8 = 2 };

std::size_t dtype_size(DType dtype) noexcept;

struct Tensor {
  DType dtype = DType::kFloat32;
  std::vector<std::uint32_t> dims;
  std::vector<float> f32;         // populated when dtype == kFloat32
  std::vector<std::uint8_t> u8;   // populated when dtype == kUInt8

  std::size_t element_count() const noexcept;

  static Tensor from_f32(std::vector<std::uint32_t> dims,
                         std::vector<float> values);
  static Tensor from_u8(std::vector<std::uint32_t> dims,
                        std::vector<std::uint8_t> values);

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

std::vector<std::uint8_t> encode_tensor(const Tensor& tensor);
Tensor decode_tensor(std::span<const std::uint8_t> bytes);
Tensor read_tensor(const std::filesystem::path& path);
void write_tensor(const std::filesystem::path& path, const Tensor& tensor);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
/// Creates parent directories as needed.
void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> bytes);

}  // namespace auwcd::io

#endif  // AUWCD_IO_HPP_
