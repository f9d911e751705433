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

#ifndef AUWCD_SEGMENT_HPP_
#define AUWCD_SEGMENT_HPP_

// Promptable segmentation contract: prompt points in, one mask out. Any
// multi-mask selection is the backend's business. The in-repo backends are
// oracles and a file reader; real foundation models run out of process and
// hand their masks over through FileBackend.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "auwcd/raster.hpp"
#include "auwcd/semantic_align.hpp"

namespace auwcd::segment {

struct SegmentationRequest {
  std::string tile;        // image stem, used to locate external masks
  std::size_t epoch = 0;   // 0-based temporal index
  std::shared_ptr<const ImageRaster> image;
  align::PromptSet prompts;
  std::optional<BinaryMask> coarse_mask;

  std::size_t width() const { return image->width(); }
  std::size_t height() const { return image->height(); }
};

/// Implementations must be safe for concurrent calls on a const instance and
/// return a mask with the request image's dimensions.
class SegmenterBackend {
 public:
  virtual ~SegmenterBackend() = default;
  virtual BinaryMask segment(const SegmentationRequest& request) const = 0;
  virtual std::string identifier() const = 0;
};

enum class Connectivity { kFour = 4, kEight = 8 };

/// Nearest pixel to a real prompt coordinate, clamped into the image.
std::pair<std::size_t, std::size_t> snap_to_pixel(double x, double y,
                                                  std::size_t width,
                                                  std::size_t height);

/// Union of ground-truth components holding at least one positive point and
/// no negative point. Empty prompt sets give an all-zero mask.
BinaryMask oracle_segment(const SegmentationRequest& request,
                          const BinaryMask& truth,
                          Connectivity connectivity = Connectivity::kFour);

/// Flips each pixel independently with probability `flip_prob` using a
/// deterministic generator seeded from `seed`.
void flip_pixels(BinaryMask& mask, double flip_prob, std::uint64_t seed);

/// Inner result with seeded independent pixel flips. The effective seed mixes
/// `seed` with the request's tile and epoch so results do not depend on call
/// order.
BinaryMask noisy_segment(const SegmentationRequest& request,
                         const SegmenterBackend& inner, double flip_prob,
                         std::uint64_t seed);

/// Reads a stored mask (P5 PGM, or AUWT u8 tensor with dims [H, W]) and checks
/// it matches the request dimensions. Failures are BackendError.
BinaryMask file_segment(const SegmentationRequest& request,
                        const std::filesystem::path& mask_path);

using TruthLookup = std::function<BinaryMask(const SegmentationRequest&)>;

class ConnectedComponentOracle final : public SegmenterBackend {
 public:
  explicit ConnectedComponentOracle(TruthLookup truth,
                                    Connectivity connectivity = Connectivity::kFour);
  BinaryMask segment(const SegmentationRequest& request) const override;
  std::string identifier() const override;

 private:
  TruthLookup truth_;
  Connectivity connectivity_;
};

class NoisySegmenter final : public SegmenterBackend {
 public:
  NoisySegmenter(std::shared_ptr<const SegmenterBackend> inner, double flip_prob,
                 std::uint64_t seed);
  BinaryMask segment(const SegmentationRequest& request) const override;
  std::string identifier() const override;

 private:
  std::shared_ptr<const SegmenterBackend> inner_;
  double flip_prob_;
  std::uint64_t seed_;
};

/// Looks masks up as `<epoch_dirs[epoch]>/<tile>.pgm`, falling back to
/// `<tile>.auwt`.
class FileBackend final : public SegmenterBackend {
 public:
  explicit FileBackend(std::vector<std::filesystem::path> epoch_dirs);
  BinaryMask segment(const SegmentationRequest& request) const override;
  std::string identifier() const override;

  std::filesystem::path mask_path(const SegmentationRequest& request) const;

 private:
  std::vector<std::filesystem::path> epoch_dirs_;
};

}  // namespace auwcd::segment

#endif  // AUWCD_SEGMENT_HPP_
