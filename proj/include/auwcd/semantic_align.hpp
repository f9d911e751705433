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

#ifndef AUWCD_SEMANTIC_ALIGN_HPP_
#define AUWCD_SEMANTIC_ALIGN_HPP_

// Token/text embeddings -> similarity map -> polarity-tagged prompt points.

#include <cstddef>
#include <utility>
#include <vector>

#include "auwcd/io.hpp"
#include "auwcd/raster.hpp"

namespace auwcd::align {

/// ViT patching of the vision encoder input. The token grid is square with
/// grid_side = encoder_input_size / patch_size cells per side.
class PatchGeometry {
 public:
  /// Throws InvalidInput unless patch_size > 0 divides encoder_input_size.
  PatchGeometry(std::size_t encoder_input_size, std::size_t patch_size);

  std::size_t encoder_input_size() const noexcept { return eis_; }
  std::size_t patch_size() const noexcept { return ps_; }
  std::size_t grid_side() const noexcept { return eis_ / ps_; }
  /// Number of similarity-map cells, grid_side^2.
  std::size_t simms() const noexcept { return grid_side() * grid_side(); }

  friend bool operator==(const PatchGeometry&, const PatchGeometry&) = default;

 private:
  std::size_t eis_;
  std::size_t ps_;
};

/// Patch tokens plus one class token.
std::size_t expected_token_count(const PatchGeometry& geom) noexcept;

struct TokenEmbeddings {
  std::size_t num_token = 0;
  std::size_t token_dim = 0;
  std::vector<float> data;  // num_token x token_dim, row-major
  bool includes_class_token = false;

  /// Accepts [1, num_token, token_dim] f32 tensors. The class token is
  /// inferred from num_token == grid_side^2 + 1; any other count that is not
  /// grid_side^2 is a ShapeMismatch.
  static TokenEmbeddings from_tensor(const io::Tensor& tensor,
                                     const PatchGeometry& geom);
  io::Tensor to_tensor() const;
};

struct TextEmbedding {
  std::vector<float> data;

  std::size_t token_dim() const noexcept { return data.size(); }
  /// Accepts [1, token_dim] f32 tensors.
  static TextEmbedding from_tensor(const io::Tensor& tensor);
  io::Tensor to_tensor() const;
};

enum class Polarity { kPositive, kNegative };

struct GridCell {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
};

struct PromptPoint {
  double x = 0.0;  // image column coordinate
  double y = 0.0;  // image row coordinate
  Polarity polarity = Polarity::kPositive;
  GridCell source_cell;
  double score = 0.0;

  friend bool operator==(const PromptPoint&, const PromptPoint&) = default;
};

struct PromptSet {
  std::vector<PromptPoint> positives;
  std::vector<PromptPoint> negatives;
  double threshold_used = 0.0;

  bool empty() const noexcept { return positives.empty() && negatives.empty(); }
  std::size_t size() const noexcept { return positives.size() + negatives.size(); }

  friend bool operator==(const PromptSet&, const PromptSet&) = default;
};

/// Drops the class token, projects each patch token onto (croi - croui),
/// min-max normalizes, and reshapes to grid_side x grid_side.
ScalarMap compute_similarity_map(const TokenEmbeddings& tokens,
                                 const TextEmbedding& croi,
                                 const TextEmbedding& croui,
                                 const PatchGeometry& geom);

struct PointCounts {
  std::size_t num_p = 0;
  std::size_t num_n = 0;

  friend bool operator==(const PointCounts&, const PointCounts&) = default;
};

/// num_p = min(#cells strictly above t, floor(cells / 2)); num_n = num_p.
PointCounts select_point_counts(const ScalarMap& sim_map, double threshold);

/// How grid cells map into image pixels. The default pairs the column index
/// with H and the row index with W, which only matters for non-square images;
/// `swap_axes` selects the column-with-W pairing. `center_offset` adds half a
/// cell to both indices.
struct CoordinateMapping {
  bool swap_axes = false;
  bool center_offset = false;
};

/// (x, y) image coordinates of a grid cell.
std::pair<double, double> cell_to_image(GridCell cell, std::size_t grid_side,
                                        std::size_t image_width,
                                        std::size_t image_height,
                                        CoordinateMapping mapping = {});

/// Positives are the num_p highest-scoring cells, negatives the num_n lowest
/// among the remaining cells. Equal scores are ordered by ascending row-major
/// index in both selections. Positives are listed best-first, negatives
/// worst-first.
PromptSet generate_prompt_points(const ScalarMap& sim_map, double threshold,
                                 std::size_t image_width,
                                 std::size_t image_height,
                                 CoordinateMapping mapping = {});

}  // namespace auwcd::align

#endif  // AUWCD_SEMANTIC_ALIGN_HPP_
