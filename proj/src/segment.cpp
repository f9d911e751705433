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

#include "auwcd/segment.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string_view>
#include <system_error>

#include "auwcd/error.hpp"
#include "auwcd/io.hpp"

namespace auwcd::segment {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Component label per pixel; 0 marks background.
std::vector<std::uint32_t> label_components(const BinaryMask& truth,
                                            Connectivity connectivity) {
  const std::size_t w = truth.width();
  const std::size_t h = truth.height();
  std::vector<std::uint32_t> labels(truth.size(), 0);
  std::vector<std::size_t> stack;
  std::uint32_t next = 0;
  const bool eight = connectivity == Connectivity::kEight;
  for (std::size_t start = 0; start < truth.size(); ++start) {
    if (!truth.bits()[start] || labels[start]) continue;
    labels[start] = ++next;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      const auto x = static_cast<std::ptrdiff_t>(p % w);
      const auto y = static_cast<std::ptrdiff_t>(p / w);
      for (std::ptrdiff_t dy = -1; dy <= 1; ++dy) {
        for (std::ptrdiff_t dx = -1; dx <= 1; ++dx) {
          if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
          const auto nx = x + dx;
          const auto ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= static_cast<std::ptrdiff_t>(w) ||
              ny >= static_cast<std::ptrdiff_t>(h)) {
            continue;
          }
          const auto q = static_cast<std::size_t>(ny) * w + static_cast<std::size_t>(nx);
          if (truth.bits()[q] && !labels[q]) {
            labels[q] = next;
            stack.push_back(q);
          }
        }
      }
    }
  }
  return labels;
}

[[noreturn]] void backend_fail(const std::string& what) {
  throw Error(ErrorCode::kBackendError, what);
}

}  // namespace

std::pair<std::size_t, std::size_t> snap_to_pixel(double x, double y,
                                                  std::size_t width,
                                                  std::size_t height) {
  auto snap = [](double v, std::size_t extent) {
    const double r = std::floor(v + 0.5);
    return static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(extent - 1)));
  };
  return {snap(x, width), snap(y, height)};
}

BinaryMask oracle_segment(const SegmentationRequest& request,
                          const BinaryMask& truth, Connectivity connectivity) {
  const std::size_t w = request.width();
  const std::size_t h = request.height();
  if (truth.width() != w || truth.height() != h) {
    throw Error(ErrorCode::kShapeMismatch, "oracle truth mask does not match image");
  }
  BinaryMask out(w, h);
  if (request.prompts.positives.empty()) return out;

  const auto labels = label_components(truth, connectivity);
  const std::uint32_t n = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
  // 0 = untouched, 1 = selected, 2 = vetoed by a negative point.
  std::vector<std::uint8_t> state(n + 1, 0);
  auto label_at = [&](const align::PromptPoint& p) {
    const auto [px, py] = snap_to_pixel(p.x, p.y, w, h);
    return labels[py * w + px];
  };
  for (const auto& p : request.prompts.positives) {
    if (const auto id = label_at(p)) state[id] = std::max<std::uint8_t>(state[id], 1);
  }
  for (const auto& p : request.prompts.negatives) {
    if (const auto id = label_at(p)) state[id] = 2;
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (state[labels[i]] == 1 && labels[i]) out.bits()[i] = 1;
  }
  return out;
}

void flip_pixels(BinaryMask& mask, double flip_prob, std::uint64_t seed) {
  if (!(flip_prob >= 0.0 && flip_prob <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "flip probability must lie in [0,1]");
  }
  if (flip_prob == 0.0) return;
  std::mt19937_64 rng(splitmix64(seed));
  for (auto& b : mask.bits()) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < flip_prob) b ^= 1U;
  }
}

BinaryMask noisy_segment(const SegmentationRequest& request,
                         const SegmenterBackend& inner, double flip_prob,
                         std::uint64_t seed) {
  BinaryMask mask = inner.segment(request);
  const std::uint64_t mixed =
      seed ^ fnv1a(request.tile) ^ splitmix64(static_cast<std::uint64_t>(request.epoch) + 1);
  flip_pixels(mask, flip_prob, mixed);
  return mask;
}

BinaryMask file_segment(const SegmentationRequest& request,
                        const std::filesystem::path& mask_path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(mask_path, ec)) {
    backend_fail("mask file not found: " + mask_path.string());
  }
  BinaryMask mask;
  try {
    if (mask_path.extension() == ".auwt") {
      const io::Tensor t = io::read_tensor(mask_path);
      if (t.dtype != io::DType::kUInt8 || t.dims.size() != 2) {
        backend_fail(mask_path.string() + ": mask tensor must be u8 [H, W]");
      }
      mask = BinaryMask(t.dims[1], t.dims[0], t.u8);
    } else {
      mask = io::read_mask(mask_path);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBackendError) throw;
    backend_fail(std::string(e.what()));
  }
  if (mask.width() != request.width() || mask.height() != request.height()) {
    backend_fail(mask_path.string() + ": mask is " + std::to_string(mask.width()) +
                 "x" + std::to_string(mask.height()) + ", image is " +
                 std::to_string(request.width()) + "x" +
                 std::to_string(request.height()));
  }
  return mask;
}

ConnectedComponentOracle::ConnectedComponentOracle(TruthLookup truth,
                                                   Connectivity connectivity)
    : truth_(std::move(truth)), connectivity_(connectivity) {}

BinaryMask ConnectedComponentOracle::segment(const SegmentationRequest& request) const {
  return oracle_segment(request, truth_(request), connectivity_);
}

std::string ConnectedComponentOracle::identifier() const {
  return connectivity_ == Connectivity::kFour ? "oracle-cc4" : "oracle-cc8";
}

NoisySegmenter::NoisySegmenter(std::shared_ptr<const SegmenterBackend> inner,
                               double flip_prob, std::uint64_t seed)
    : inner_(std::move(inner)), flip_prob_(flip_prob), seed_(seed) {
  if (!(flip_prob >= 0.0 && flip_prob <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "flip probability must lie in [0,1]");
  }
}

BinaryMask NoisySegmenter::segment(const SegmentationRequest& request) const {
  return noisy_segment(request, *inner_, flip_prob_, seed_);
}

std::string NoisySegmenter::identifier() const {
  return "noisy(" + inner_->identifier() + ")";
}

FileBackend::FileBackend(std::vector<std::filesystem::path> epoch_dirs)
    : epoch_dirs_(std::move(epoch_dirs)) {}

std::filesystem::path FileBackend::mask_path(const SegmentationRequest& request) const {
  if (request.epoch >= epoch_dirs_.size()) {
    backend_fail("no mask directory for epoch " + std::to_string(request.epoch + 1));
  }
  const auto& dir = epoch_dirs_[request.epoch];
  auto pgm = dir / (request.tile + ".pgm");
  std::error_code ec;
  if (std::filesystem::exists(pgm, ec)) return pgm;
  auto tensor = dir / (request.tile + ".auwt");
  if (std::filesystem::exists(tensor, ec)) return tensor;
  return pgm;
}

BinaryMask FileBackend::segment(const SegmentationRequest& request) const {
  return file_segment(request, mask_path(request));
}

std::string FileBackend::identifier() const { return "file"; }

}  // namespace auwcd::segment
