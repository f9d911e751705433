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

#ifndef AUWCD_DATASET_HPP_
#define AUWCD_DATASET_HPP_

// On-disk layout of a bi-temporal tile set:
//
//   <root>/t1/<stem>.ppm           <root>/t2/<stem>.ppm
//   <root>/label_t1/<stem>.pgm     <root>/label_t2/<stem>.pgm
//   <root>/label_change/<stem>.pgm
//   <root>/embeddings/manifest.txt
//   <root>/embeddings/t1/<stem>.auwt   [1, num_token, token_dim] f32
//   <root>/embeddings/t2/<stem>.auwt
//   <root>/embeddings/text/croi.auwt   [1, token_dim] f32
//   <root>/embeddings/text/croui.auwt
//
// Labels and embeddings are optional; every t1 tile needs a t2 partner.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "auwcd/raster.hpp"

namespace auwcd::pipeline {

inline constexpr std::size_t kEpochs = 2;

/// "t1", "t2", ...
std::string epoch_name(std::size_t epoch);

class DatasetLayout {
 public:
  /// Scans `root`. Throws InvalidDataset when t1/ is missing or empty, or a
  /// t1 tile has no t2 partner.
  static DatasetLayout discover(const std::filesystem::path& root);

  const std::filesystem::path& root() const noexcept { return root_; }
  /// Sorted tile stems.
  const std::vector<std::string>& stems() const noexcept { return stems_; }
  bool has_epoch_labels() const noexcept { return has_epoch_labels_; }
  bool has_change_labels() const noexcept { return has_change_labels_; }

  std::filesystem::path image(std::size_t epoch, const std::string& stem) const;
  std::filesystem::path label(std::size_t epoch, const std::string& stem) const;
  std::filesystem::path change_label(const std::string& stem) const;
  std::filesystem::path embeddings_dir() const;
  std::filesystem::path tokens(std::size_t epoch, const std::string& stem) const;
  std::filesystem::path text_embedding(const std::string& which) const;

 private:
  std::filesystem::path root_;
  std::vector<std::string> stems_;
  bool has_epoch_labels_ = false;
  bool has_change_labels_ = false;
};

/// Epoch label as a CRoI mask. With `croi_class`, the label file holds class
/// ids and is binarized as (id == croi_class); otherwise it is a 0/255 mask.
BinaryMask load_epoch_label(const DatasetLayout& layout, std::size_t epoch,
                            const std::string& stem, std::optional<int> croi_class);

/// Change label. Class-id datasets (and sets without label_change/) derive it
/// as the XOR of the binarized epoch labels.
BinaryMask load_change_label(const DatasetLayout& layout, const std::string& stem,
                             std::optional<int> croi_class);

/// Geometry and provenance of exported embeddings.
struct EmbeddingManifest {
  std::size_t encoder_input_size = 0;
  std::size_t patch_size = 0;
  std::size_t num_token = 0;
  std::size_t token_dim = 0;
  std::string model;
  std::string croi_text;
  std::string croui_text;

  std::string serialize() const;
  static EmbeddingManifest parse(std::string_view text);
  static std::optional<EmbeddingManifest> load(const std::filesystem::path& path);
};

}  // namespace auwcd::pipeline

#endif  // AUWCD_DATASET_HPP_
