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

#ifndef AUWCD_SYNTHETIC_HPP_
#define AUWCD_SYNTHETIC_HPP_

// Desk-scale stand-in for a real tile set and vision-language encoder.
//
// The synthetic encoder emits patch tokens whose projection onto
// (croi - croui) equals the CRoI pixel fraction of the patch plus optional
// Gaussian noise, so the rest of the pipeline runs unchanged on top of it.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "auwcd/dataset.hpp"
#include "auwcd/raster.hpp"
#include "auwcd/semantic_align.hpp"

namespace auwcd::pipeline {

/// Fraction of set pixels in each grid cell, row-major grid_side^2 entries.
/// Pixel column x belongs to cell column floor(x * grid_side / width), rows
/// likewise.
std::vector<double> patch_fractions(const BinaryMask& truth, std::size_t grid_side);

struct SyntheticText {
  align::TextEmbedding croi;
  align::TextEmbedding croui;
};

/// croi and croui differ only along the first axis, by exactly 1.
SyntheticText synthetic_text_embeddings(std::size_t token_dim);

/// Class token first, then one token per cell. `noise` is the standard
/// deviation of Gaussian noise added to each projection.
align::TokenEmbeddings synthetic_tokens(std::span<const double> fractions,
                                        std::size_t token_dim, double noise,
                                        std::uint64_t seed);

/// Seed for the tile/epoch embedding noise stream.
std::uint64_t synthetic_stream_seed(std::uint64_t seed, const std::string& stem,
                                    std::size_t epoch);

struct SyntheticSpec {
  std::size_t tiles = 50;
  std::size_t size = 128;
  std::size_t blobs = 3;
  std::size_t min_blob = 20;
  std::size_t max_blob = 40;
  /// Probability that a blob exists in only one epoch.
  double change_fraction = 0.5;
  double embedding_noise = 0.0;
  std::size_t token_dim = 8;
  std::size_t encoder_input_size = 224;
  std::size_t patch_size = 14;
  std::uint64_t seed = 0;
  std::string croi_text = "iron building house roofs";
  std::string croui_text = " ";
  /// Reject blobs that do not fully cover an anchor cell (see below). With
  /// this off, small blobs only reach partial cell fractions and are found
  /// or missed depending on the threshold.
  bool require_anchor = true;
};

/// Writes tiles, labels, change labels and token/text embeddings under `out`
/// and returns the discovered layout. Output is a pure function of `spec`.
///
/// Blobs are axis-aligned rectangles or ellipses kept clear of each other
/// and of the border. With `require_anchor`, each one fully covers at least
/// one grid cell whose prompt coordinate lands inside it.
DatasetLayout generate_synthetic_dataset(const SyntheticSpec& spec,
                                         const std::filesystem::path& out);

}  // namespace auwcd::pipeline

#endif  // AUWCD_SYNTHETIC_HPP_
