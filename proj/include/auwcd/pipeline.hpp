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

#ifndef AUWCD_PIPELINE_HPP_
#define AUWCD_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "auwcd/change_detect.hpp"
#include "auwcd/config.hpp"
#include "auwcd/dataset.hpp"
#include "auwcd/metrics.hpp"
#include "auwcd/raster.hpp"
#include "auwcd/segment.hpp"
#include "auwcd/semantic_align.hpp"

namespace auwcd::pipeline {

/// Source of image-token and text embeddings for one run.
class EmbeddingSource {
 public:
  virtual ~EmbeddingSource() = default;
  virtual align::TokenEmbeddings tokens(const std::string& stem,
                                        std::size_t epoch) const = 0;
  virtual const align::TextEmbedding& croi() const = 0;
  virtual const align::TextEmbedding& croui() const = 0;
};

/// Reads the embeddings/ tree of a dataset. Missing files are BackendError.
class TensorFileEmbeddings final : public EmbeddingSource {
 public:
  TensorFileEmbeddings(const DatasetLayout& layout, const align::PatchGeometry& geom);
  align::TokenEmbeddings tokens(const std::string& stem, std::size_t epoch) const override;
  const align::TextEmbedding& croi() const override { return croi_; }
  const align::TextEmbedding& croui() const override { return croui_; }

 private:
  DatasetLayout layout_;
  align::PatchGeometry geom_;
  align::TextEmbedding croi_;
  align::TextEmbedding croui_;
};

/// Builds fraction embeddings on the fly from the dataset labels.
class SyntheticEncoder final : public EmbeddingSource {
 public:
  SyntheticEncoder(const DatasetLayout& layout, const PipelineConfig& config,
                   std::size_t token_dim = 8);
  align::TokenEmbeddings tokens(const std::string& stem, std::size_t epoch) const override;
  const align::TextEmbedding& croi() const override { return croi_; }
  const align::TextEmbedding& croui() const override { return croui_; }

 private:
  DatasetLayout layout_;
  PipelineConfig config_;
  std::size_t token_dim_;
  align::TextEmbedding croi_;
  align::TextEmbedding croui_;
};

struct TileInput {
  std::string stem;
  std::vector<std::shared_ptr<const ImageRaster>> images;  // one per epoch
};

struct DetectResult {
  /// Change map between the first and second epoch.
  BinaryMask change_map;
  std::map<cd::EpochPair, BinaryMask> change_maps;
  std::vector<ScalarMap> sim_maps;  // grid resolution
  std::vector<align::PromptSet> prompt_sets;
  std::vector<BinaryMask> epoch_masks;
  std::vector<std::string> warnings;
};

/// Similarity map, prompts and mask per epoch, then pairwise change maps.
DetectResult run_detect(const PipelineConfig& config, const TileInput& tile,
                        const EmbeddingSource& embeddings,
                        const segment::SegmenterBackend& backend);

/// Backend selected by `config.backend`. The oracle reads ground truth from
/// the dataset's epoch labels.
std::shared_ptr<const segment::SegmenterBackend> make_backend(const PipelineConfig& config,
                                                              const DatasetLayout& layout);
std::unique_ptr<EmbeddingSource> make_embeddings(const PipelineConfig& config,
                                                 const DatasetLayout& layout);

struct TileScores {
  metrics::ConfusionCounts cd;
  metrics::ConfusionCounts seg;  // summed over epochs
  metrics::PointAudit points;
};

struct MetricSet {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double oa = 0.0;
};

MetricSet metric_set(const metrics::ConfusionCounts& c);

struct EvaluationReport {
  std::string config_echo;
  bool macro = false;
  std::size_t tiles = 0;
  metrics::ConfusionCounts cd_counts;
  metrics::ConfusionCounts seg_counts;
  metrics::PointAudit points;
  MetricSet cd;
  std::optional<MetricSet> seg;
  std::optional<double> pacc;
  std::optional<double> error_ratio;
  double runtime_seconds = 0.0;
};

/// Micro averaging sums counts over tiles; macro averages per-tile metrics.
EvaluationReport summarize(const std::vector<TileScores>& tiles, bool macro,
                           bool have_seg, bool have_points);

struct DatasetRunOptions {
  std::optional<std::filesystem::path> out;  // write change maps (+ dumps)
  bool score = true;                         // needs labels
};

struct DatasetRun {
  std::vector<TileScores> tiles;
  std::vector<std::string> warnings;
  EvaluationReport report;
};

/// Runs detection on every tile, sharded over `config.workers` threads.
/// Results are merged in tile order, so output is independent of the worker
/// count.
DatasetRun run_dataset(const PipelineConfig& config, const DatasetLayout& layout,
                       const DatasetRunOptions& options);

/// Scores a directory of predictions laid out like run_dataset output:
/// change/<stem>.pgm, optionally mask_t*/<stem>.pgm and prompts_t*/<stem>.csv.
EvaluationReport run_evaluate(const PipelineConfig& config, const DatasetLayout& layout,
                              const std::filesystem::path& predictions);

struct SweepRange {
  double from = 0.50;
  double to = 0.95;
  double step = 0.05;

  /// from, from+step, ... up to `to` inclusive, each rounded to 1e-12.
  std::vector<double> thresholds() const;
};

struct SweepRow {
  double threshold = 0.0;
  EvaluationReport report;
};

struct SweepResult {
  std::string config_echo;
  std::vector<SweepRow> rows;
};

/// Requires epoch and change labels (InvalidDataset otherwise).
SweepResult run_sweep(const PipelineConfig& config, const DatasetLayout& layout,
                      const SweepRange& range);

// Prompt dumps: CSV with header `polarity,x,y,row,col,score`.
std::string format_prompts(const align::PromptSet& prompts);
align::PromptSet parse_prompts(std::string_view text);

}  // namespace auwcd::pipeline

#endif  // AUWCD_PIPELINE_HPP_
