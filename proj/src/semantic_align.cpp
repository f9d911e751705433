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

#include "auwcd/semantic_align.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "auwcd/error.hpp"
#include "auwcd/kernels.hpp"

namespace auwcd::align {

namespace {

std::string dims_string(const std::vector<std::uint32_t>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims[i]);
  }
  return s + "]";
}

void check_square(const ScalarMap& map) {
  if (map.empty() || map.width() != map.height()) {
    throw Error(ErrorCode::kShapeMismatch, "similarity map must be square and non-empty");
  }
}

void check_threshold(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "threshold must lie in [0,1], got " + std::to_string(t));
  }
}

}  // namespace

PatchGeometry::PatchGeometry(std::size_t encoder_input_size,
                             std::size_t patch_size)
    : eis_(encoder_input_size), ps_(patch_size) {
  if (ps_ == 0 || eis_ == 0 || eis_ % ps_ != 0) {
    throw Error(ErrorCode::kInvalidInput,
                "patch size " + std::to_string(ps_) +
                    " must divide encoder input size " + std::to_string(eis_));
  }
}

std::size_t expected_token_count(const PatchGeometry& geom) noexcept {
  return geom.simms() + 1;
}

TokenEmbeddings TokenEmbeddings::from_tensor(const io::Tensor& tensor,
                                             const PatchGeometry& geom) {
  if (tensor.dtype != io::DType::kFloat32 || tensor.dims.size() != 3 ||
      tensor.dims[0] != 1) {
    throw Error(ErrorCode::kShapeMismatch,
                "token embeddings must be f32 [1, num_token, token_dim], got " +
                    dims_string(tensor.dims));
  }
  TokenEmbeddings out;
  out.num_token = tensor.dims[1];
  out.token_dim = tensor.dims[2];
  if (out.num_token == geom.simms() + 1) {
    out.includes_class_token = true;
  } else if (out.num_token != geom.simms()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(out.num_token) + " tokens do not fit a " +
                    std::to_string(geom.grid_side()) + "x" +
                    std::to_string(geom.grid_side()) + " patch grid");
  }
  out.data = tensor.f32;
  return out;
}

io::Tensor TokenEmbeddings::to_tensor() const {
  return io::Tensor::from_f32({1, static_cast<std::uint32_t>(num_token),
                               static_cast<std::uint32_t>(token_dim)},
                              data);
}

TextEmbedding TextEmbedding::from_tensor(const io::Tensor& tensor) {
  if (tensor.dtype != io::DType::kFloat32 || tensor.dims.size() != 2 ||
      tensor.dims[0] != 1) {
    throw Error(ErrorCode::kShapeMismatch,
                "text embedding must be f32 [1, token_dim], got " +
                    dims_string(tensor.dims));
  }
  return TextEmbedding{tensor.f32};
}

io::Tensor TextEmbedding::to_tensor() const {
  return io::Tensor::from_f32({1, static_cast<std::uint32_t>(data.size())}, data);
}

ScalarMap compute_similarity_map(const TokenEmbeddings& tokens,
                                 const TextEmbedding& croi,
                                 const TextEmbedding& croui,
                                 const PatchGeometry& geom) {
  if (croi.token_dim() != tokens.token_dim || croui.token_dim() != tokens.token_dim ||
      tokens.token_dim == 0) {
    throw Error(ErrorCode::kShapeMismatch,
                "text embedding dims " + std::to_string(croi.token_dim()) + "/" +
                    std::to_string(croui.token_dim()) + " vs token dim " +
                    std::to_string(tokens.token_dim));
  }
  if (tokens.data.size() != tokens.num_token * tokens.token_dim) {
    throw Error(ErrorCode::kShapeMismatch, "token data length inconsistent");
  }
  const std::size_t skip = tokens.includes_class_token ? 1 : 0;
  if (tokens.num_token != geom.simms() + skip) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(tokens.num_token) +
                    " tokens inconsistent with geometry (expected " +
                    std::to_string(geom.simms() + skip) + ")");
  }

  std::vector<double> direction(tokens.token_dim);
  for (std::size_t d = 0; d < direction.size(); ++d) {
    direction[d] = static_cast<double>(croi.data[d]) - static_cast<double>(croui.data[d]);
  }
  std::vector<double> raw(geom.simms());
  const std::span<const float> patches =
      std::span<const float>(tokens.data).subspan(skip * tokens.token_dim);
  kernels::parallel::project_tokens(patches, direction, raw);
  return reshape_to_map(minmax_normalize(raw), geom.grid_side());
}

PointCounts select_point_counts(const ScalarMap& sim_map, double threshold) {
  check_square(sim_map);
  check_threshold(threshold);
  const std::size_t above = kernels::parallel::count_above(sim_map.data(), threshold);
  const std::size_t n = std::min(above, sim_map.size() / 2);
  return {n, n};
}

std::pair<double, double> cell_to_image(GridCell cell, std::size_t grid_side,
                                        std::size_t image_width,
                                        std::size_t image_height,
                                        CoordinateMapping mapping) {
  const double offset = mapping.center_offset ? 0.5 : 0.0;
  const double side = static_cast<double>(grid_side);
  const double col = static_cast<double>(cell.col) + offset;
  const double row = static_cast<double>(cell.row) + offset;
  const double w = static_cast<double>(image_width);
  const double h = static_cast<double>(image_height);
  if (mapping.swap_axes) return {w / side * col, h / side * row};
  return {h / side * col, w / side * row};
}

PromptSet generate_prompt_points(const ScalarMap& sim_map, double threshold,
                                 std::size_t image_width,
                                 std::size_t image_height,
                                 CoordinateMapping mapping) {
  if (image_width == 0 || image_height == 0) {
    throw Error(ErrorCode::kInvalidInput, "image dimensions must be positive");
  }
  const PointCounts counts = select_point_counts(sim_map, threshold);
  PromptSet set;
  set.threshold_used = threshold;
  if (counts.num_p == 0) return set;

  const auto values = sim_map.data();
  const std::size_t side = sim_map.width();
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);

  auto emit = [&](std::size_t index, Polarity polarity) {
    const GridCell cell{index / side, index % side};
    const auto [x, y] = cell_to_image(cell, side, image_width, image_height, mapping);
    return PromptPoint{x, y, polarity, cell, values[index]};
  };

  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<std::uint8_t> taken(values.size(), 0);
  for (std::size_t i = 0; i < counts.num_p; ++i) {
    taken[order[i]] = 1;
    set.positives.push_back(emit(order[i], Polarity::kPositive));
  }

  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b] || (values[a] == values[b] && a < b);
  });
  for (std::size_t i = 0; i < order.size() && set.negatives.size() < counts.num_n; ++i) {
    if (!taken[order[i]]) set.negatives.push_back(emit(order[i], Polarity::kNegative));
  }
  return set;
}

}  // namespace auwcd::align
