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

#ifndef AUWCD_CONFIG_HPP_
#define AUWCD_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "auwcd/segment.hpp"
#include "auwcd/semantic_align.hpp"

namespace auwcd::pipeline {

enum class BackendKind { kOracle, kFile, kNoisy };
enum class EncoderKind { kFiles, kSynthetic };

std::string_view to_string(BackendKind kind);
std::string_view to_string(EncoderKind kind);

/// Flat `key = value` configuration. Values may be double-quoted to keep
/// surrounding whitespace (the default CRoUI text is a single space).
///
///   croi, croui, threshold, backend (oracle|file|noisy), eis, ps,
///   swap_axes, center_offset, seed, workers, flip_prob,
///   encoder (files|synthetic), embedding_noise, masks,
///   connectivity (4|8), croi_class, macro, dump_intermediates
struct PipelineConfig {
  std::string croi_text = "iron building house roofs";
  std::string croui_text = " ";
  double threshold = 0.55;
  BackendKind backend = BackendKind::kOracle;
  std::size_t encoder_input_size = 224;
  std::size_t patch_size = 14;
  bool swap_axes = false;
  bool center_offset = false;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  double flip_prob = 0.0;
  EncoderKind encoder = EncoderKind::kFiles;
  double embedding_noise = 0.0;
  std::filesystem::path masks;
  segment::Connectivity connectivity = segment::Connectivity::kFour;
  std::optional<int> croi_class;
  bool macro = false;
  bool dump_intermediates = false;

  align::PatchGeometry geometry() const {
    return {encoder_input_size, patch_size};
  }
  align::CoordinateMapping mapping() const { return {swap_axes, center_offset}; }

  /// Throws InvalidInput for unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
  /// Throws InvalidInput when a value is out of range.
  void validate() const;
  /// Result-affecting settings as `key = value` lines. Worker count and
  /// output switches are left out so reports compare equal across them.
  std::string echo() const;
};

/// Applies every `key = value` line of `text` on top of `base`. Blank lines
/// and lines starting with '#' are ignored.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path,
                           PipelineConfig base = {});

}  // namespace auwcd::pipeline

#endif  // AUWCD_CONFIG_HPP_
