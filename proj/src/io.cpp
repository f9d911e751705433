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

#include "auwcd/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "auwcd/error.hpp"

namespace auwcd::io {

namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::kParseError, what);
}

class HeaderCursor {
 public:
  explicit HeaderCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space(bool required) {
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && is_space(bytes_[pos_])) ++pos_;
    if (required && pos_ == start) parse_fail("expected whitespace in header");
  }

  void skip_comment_line() {
    if (pos_ < bytes_.size() && bytes_[pos_] == '#') {
      while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      if (pos_ == bytes_.size()) parse_fail("unterminated header comment");
      ++pos_;
    }
  }

  std::size_t number() {
    std::size_t value = 0;
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (1U << 24)) parse_fail("header value out of range");
      ++pos_;
    }
    if (pos_ == start) parse_fail("expected a decimal number in header");
    return value;
  }

  void single_space() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
      parse_fail("expected one whitespace byte after maxval");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + i]) << (8 * i);
  return v;
}

constexpr std::size_t kTensorFixedHeader = 8;

}  // namespace

std::vector<std::uint8_t> encode_pnm(const ImageRaster& image) {
  char magic;
  if (image.channels() == 1) {
    magic = '5';
  } else if (image.channels() == 3) {
    magic = '6';
  } else {
    throw Error(ErrorCode::kInvalidInput,
                "netpbm supports 1 or 3 channels, got " +
                    std::to_string(image.channels()));
  }
  const std::string header = std::string("P") + magic + "\n" +
                             std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.data().begin(), image.data().end());
  return out;
}

ImageRaster decode_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    parse_fail("bad netpbm magic (expected P5 or P6)");
  }
  const std::size_t channels = bytes[1] == '5' ? 1 : 3;
  HeaderCursor cur(bytes);
  cur.skip_space(true);
  cur.skip_comment_line();
  cur.skip_space(false);
  const std::size_t width = cur.number();
  cur.skip_space(true);
  const std::size_t height = cur.number();
  cur.skip_space(true);
  const std::size_t maxval = cur.number();
  cur.single_space();
  if (maxval != 255) {
    parse_fail("unsupported maxval " + std::to_string(maxval) + " (need 255)");
  }
  if (width == 0 || height == 0) parse_fail("zero image dimension");
  const std::size_t need = width * height * channels;
  if (bytes.size() - cur.pos() < need) {
    parse_fail("truncated raster: need " + std::to_string(need) + " bytes, have " +
               std::to_string(bytes.size() - cur.pos()));
  }
  const auto* first = bytes.data() + cur.pos();
  return ImageRaster(width, height, channels,
                     std::vector<std::uint8_t>(first, first + need));
}

ImageRaster read_ppm(const std::filesystem::path& path) {
  ImageRaster img = decode_pnm(read_file(path));
  if (img.channels() != 3) parse_fail(path.string() + ": expected P6");
  return img;
}

ImageRaster read_pgm(const std::filesystem::path& path) {
  ImageRaster img = decode_pnm(read_file(path));
  if (img.channels() != 1) parse_fail(path.string() + ": expected P5");
  return img;
}

void write_pnm(const std::filesystem::path& path, const ImageRaster& image) {
  write_file(path, encode_pnm(image));
}

BinaryMask mask_from_gray(const ImageRaster& gray) {
  if (gray.channels() != 1) {
    throw Error(ErrorCode::kInvalidInput, "mask source must be single-channel");
  }
  std::vector<std::uint8_t> bits(gray.data().size());
  std::transform(gray.data().begin(), gray.data().end(), bits.begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v >= 128); });
  return BinaryMask(gray.width(), gray.height(), std::move(bits));
}

ImageRaster mask_to_gray(const BinaryMask& mask) {
  std::vector<std::uint8_t> px(mask.size());
  std::transform(mask.bits().begin(), mask.bits().end(), px.begin(),
                 [](std::uint8_t b) { return static_cast<std::uint8_t>(b ? 255 : 0); });
  return ImageRaster(mask.width(), mask.height(), 1, std::move(px));
}

BinaryMask read_mask(const std::filesystem::path& path) {
  return mask_from_gray(read_pgm(path));
}

void write_mask(const std::filesystem::path& path, const BinaryMask& mask) {
  write_pnm(path, mask_to_gray(mask));
}

ImageRaster scalar_map_to_gray(const ScalarMap& map) {
  std::vector<std::uint8_t> px(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const double scaled = std::floor(map.data()[i] * 255.0 + 0.5);
    px[i] = static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
  }
  return ImageRaster(map.width(), map.height(), 1, std::move(px));
}

std::size_t dtype_size(DType dtype) noexcept {
  return dtype == DType::kFloat32 ? 4 : 1;
}

std::size_t Tensor::element_count() const noexcept {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return dims.empty() ? 0 : n;
}

Tensor Tensor::from_f32(std::vector<std::uint32_t> dims,
                        std::vector<float> values) {
  Tensor t;
  t.dtype = DType::kFloat32;
  t.dims = std::move(dims);
  t.f32 = std::move(values);
  if (t.element_count() != t.f32.size()) {
    throw Error(ErrorCode::kShapeMismatch, "tensor payload does not match dims");
  }
  return t;
}

Tensor Tensor::from_u8(std::vector<std::uint32_t> dims,
                       std::vector<std::uint8_t> values) {
  Tensor t;
  t.dtype = DType::kUInt8;
  t.dims = std::move(dims);
  t.u8 = std::move(values);
  if (t.element_count() != t.u8.size()) {
    throw Error(ErrorCode::kShapeMismatch, "tensor payload does not match dims");
  }
  return t;
}

std::vector<std::uint8_t> encode_tensor(const Tensor& tensor) {
  if (tensor.dims.empty() || tensor.dims.size() > 255) {
    throw Error(ErrorCode::kInvalidInput, "tensor needs 1..255 dims");
  }
  if (std::find(tensor.dims.begin(), tensor.dims.end(), 0U) != tensor.dims.end()) {
    throw Error(ErrorCode::kInvalidInput, "tensor dims must be positive");
  }
  const std::size_t n = tensor.element_count();
  const std::size_t have =
      tensor.dtype == DType::kFloat32 ? tensor.f32.size() : tensor.u8.size();
  if (have != n) {
    throw Error(ErrorCode::kShapeMismatch, "tensor payload does not match dims");
  }
  std::vector<std::uint8_t> out{'A', 'U', 'W', 'T', 1,
                                static_cast<std::uint8_t>(tensor.dtype),
                                static_cast<std::uint8_t>(tensor.dims.size()), 0};
  out.reserve(kTensorFixedHeader + 4 * tensor.dims.size() + n * dtype_size(tensor.dtype));
  for (auto d : tensor.dims) put_u32(out, d);
  if (tensor.dtype == DType::kFloat32) {
    for (float v : tensor.f32) put_u32(out, std::bit_cast<std::uint32_t>(v));
  } else {
    out.insert(out.end(), tensor.u8.begin(), tensor.u8.end());
  }
  return out;
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kTensorFixedHeader || bytes[0] != 'A' || bytes[1] != 'U' ||
      bytes[2] != 'W' || bytes[3] != 'T') {
    parse_fail("bad tensor magic (expected AUWT)");
  }
  if (bytes[4] != 1) parse_fail("unsupported tensor version " + std::to_string(bytes[4]));
  const std::uint8_t code = bytes[5];
  if (code != 1 && code != 2) parse_fail("unknown tensor dtype " + std::to_string(code));
  const std::size_t ndim = bytes[6];
  if (ndim == 0) parse_fail("tensor has zero dims");
  if (bytes[7] != 0) parse_fail("tensor pad byte must be 0");
  const std::size_t dims_end = kTensorFixedHeader + 4 * ndim;
  if (bytes.size() < dims_end) parse_fail("truncated tensor dims");

  Tensor t;
  t.dtype = static_cast<DType>(code);
  std::size_t n = 1;
  for (std::size_t i = 0; i < ndim; ++i) {
    const std::uint32_t d = get_u32(bytes, kTensorFixedHeader + 4 * i);
    if (d == 0) parse_fail("tensor dim " + std::to_string(i) + " is zero");
    if (n > (std::size_t{1} << 40) / d) parse_fail("tensor too large");
    n *= d;
    t.dims.push_back(d);
  }
  const std::size_t payload = n * dtype_size(t.dtype);
  if (bytes.size() - dims_end != payload) {
    parse_fail("tensor payload is " + std::to_string(bytes.size() - dims_end) +
               " bytes, dims require " + std::to_string(payload));
  }
  if (t.dtype == DType::kFloat32) {
    t.f32.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      t.f32[i] = std::bit_cast<float>(get_u32(bytes, dims_end + 4 * i));
    }
  } else {
    t.u8.assign(bytes.begin() + static_cast<std::ptrdiff_t>(dims_end), bytes.end());
  }
  return t;
}

Tensor read_tensor(const std::filesystem::path& path) {
  return decode_tensor(read_file(path));
}

void write_tensor(const std::filesystem::path& path, const Tensor& tensor) {
  write_file(path, encode_tensor(tensor));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path.string());
}

}  // namespace auwcd::io
