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

#include "auwcd/pipeline.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <system_error>

#include "auwcd/error.hpp"
#include "auwcd/io.hpp"
#include "auwcd/synthetic.hpp"

namespace auwcd::pipeline {

namespace fs = std::filesystem;

namespace {

bool dir_exists(const fs::path& p) {
  std::error_code ec;
  return fs::is_directory(p, ec);
}

bool file_exists(const fs::path& p) {
  std::error_code ec;
  return fs::is_regular_file(p, ec);
}

align::TextEmbedding load_text(const DatasetLayout& layout, const std::string& which) {
  const fs::path path = layout.text_embedding(which);
  if (!file_exists(path)) {
    throw Error(ErrorCode::kBackendError, "missing text embedding " + path.string());
  }
  return align::TextEmbedding::from_tensor(io::read_tensor(path));
}

std::string bytes_to_string(const std::vector<std::uint8_t>& bytes) {
  return std::string(bytes.begin(), bytes.end());
}

void write_text(const fs::path& path, const std::string& text) {
  io::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                 text.size()));
}

// Runs `body(i)` for every tile on `workers` threads and rethrows the first
// failure in tile order.
template <typename Body>
void for_each_tile(std::size_t count, std::size_t workers, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic) num_threads(static_cast<int>(workers))
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

TileInput load_tile(const DatasetLayout& layout, const std::string& stem) {
  TileInput tile;
  tile.stem = stem;
  for (std::size_t e = 0; e < kEpochs; ++e) {
    tile.images.push_back(std::make_shared<const ImageRaster>(io::read_ppm(layout.image(e, stem))));
  }
  return tile;
}

}  // namespace

TensorFileEmbeddings::TensorFileEmbeddings(const DatasetLayout& layout,
                                           const align::PatchGeometry& geom)
    : layout_(layout), geom_(geom) {
  if (const auto manifest = EmbeddingManifest::load(layout.embeddings_dir() / "manifest.txt")) {
    if (manifest->encoder_input_size != geom.encoder_input_size() ||
        manifest->patch_size != geom.patch_size()) {
      throw Error(ErrorCode::kInvalidInput,
                  "embedding manifest geometry (eis " +
                      std::to_string(manifest->encoder_input_size) + ", ps " +
                      std::to_string(manifest->patch_size) +
                      ") differs from configuration");
    }
  }
  croi_ = load_text(layout, "croi");
  croui_ = load_text(layout, "croui");
}

align::TokenEmbeddings TensorFileEmbeddings::tokens(const std::string& stem,
                                                    std::size_t epoch) const {
  const fs::path path = layout_.tokens(epoch, stem);
  if (!file_exists(path)) {
    throw Error(ErrorCode::kBackendError, "missing token embeddings " + path.string());
  }
  return align::TokenEmbeddings::from_tensor(io::read_tensor(path), geom_);
}

SyntheticEncoder::SyntheticEncoder(const DatasetLayout& layout, const PipelineConfig& config,
                                   std::size_t token_dim)
    : layout_(layout), config_(config), token_dim_(token_dim) {
  auto text = synthetic_text_embeddings(token_dim);
  croi_ = std::move(text.croi);
  croui_ = std::move(text.croui);
}

align::TokenEmbeddings SyntheticEncoder::tokens(const std::string& stem,
                                                std::size_t epoch) const {
  const BinaryMask truth = load_epoch_label(layout_, epoch, stem, config_.croi_class);
  const auto fractions = patch_fractions(truth, config_.geometry().grid_side());
  return synthetic_tokens(fractions, token_dim_, config_.embedding_noise,
                          synthetic_stream_seed(config_.seed, stem, epoch));
}

DetectResult run_detect(const PipelineConfig& config, const TileInput& tile,
                        const EmbeddingSource& embeddings,
                        const segment::SegmenterBackend& backend) {
  if (tile.images.size() < 2) {
    throw Error(ErrorCode::kInvalidInput, "tile " + tile.stem + " needs two epochs");
  }
  const align::PatchGeometry geom = config.geometry();
  const std::size_t width = tile.images.front()->width();
  const std::size_t height = tile.images.front()->height();
  DetectResult result;
  for (std::size_t e = 0; e < tile.images.size(); ++e) {
    const auto& image = tile.images[e];
    if (image->width() != width || image->height() != height) {
      throw Error(ErrorCode::kShapeMismatch, "tile " + tile.stem + " epochs differ in size");
    }
    ScalarMap sim = align::compute_similarity_map(embeddings.tokens(tile.stem, e),
                                                  embeddings.croi(), embeddings.croui(),
                                                  geom);
    align::PromptSet prompts =
        align::generate_prompt_points(sim, config.threshold, width, height, config.mapping());
    BinaryMask mask(width, height);
    if (!prompts.positives.empty()) {
      segment::SegmentationRequest request{tile.stem, e, image, prompts, std::nullopt};
      mask = backend.segment(request);
      if (mask.width() != width || mask.height() != height) {
        throw Error(ErrorCode::kBackendError,
                    backend.identifier() + " returned a mask of the wrong size");
      }
    }
    result.sim_maps.push_back(std::move(sim));
    result.prompt_sets.push_back(std::move(prompts));
    result.epoch_masks.push_back(std::move(mask));
  }
  const bool all_empty = std::all_of(result.prompt_sets.begin(), result.prompt_sets.end(),
                                     [](const auto& p) { return p.positives.empty(); });
  if (all_empty) {
    result.warnings.push_back("tile " + tile.stem +
                              ": no similarity cell exceeds the threshold in any epoch");
  }
  result.change_maps = cd::pairwise_change_maps(result.epoch_masks);
  result.change_map = result.change_maps.at({0, 1});
  return result;
}

std::shared_ptr<const segment::SegmenterBackend> make_backend(const PipelineConfig& config,
                                                              const DatasetLayout& layout) {
  if (config.backend == BackendKind::kFile) {
    std::vector<fs::path> dirs;
    for (std::size_t e = 0; e < kEpochs; ++e) dirs.push_back(config.masks / epoch_name(e));
    return std::make_shared<segment::FileBackend>(std::move(dirs));
  }
  if (!layout.has_epoch_labels()) {
    throw Error(ErrorCode::kBackendError,
                "oracle backends need label_t1/ and label_t2/ in the dataset");
  }
  auto lookup = [layout, croi_class = config.croi_class](const segment::SegmentationRequest& r) {
    return load_epoch_label(layout, r.epoch, r.tile, croi_class);
  };
  auto oracle = std::make_shared<segment::ConnectedComponentOracle>(lookup, config.connectivity);
  if (config.backend == BackendKind::kNoisy) {
    return std::make_shared<segment::NoisySegmenter>(oracle, config.flip_prob, config.seed);
  }
  return oracle;
}

std::unique_ptr<EmbeddingSource> make_embeddings(const PipelineConfig& config,
                                                 const DatasetLayout& layout) {
  if (config.encoder == EncoderKind::kSynthetic) {
    if (!layout.has_epoch_labels()) {
      throw Error(ErrorCode::kInvalidDataset, "synthetic encoder needs epoch labels");
    }
    return std::make_unique<SyntheticEncoder>(layout, config);
  }
  return std::make_unique<TensorFileEmbeddings>(layout, config.geometry());
}

MetricSet metric_set(const metrics::ConfusionCounts& c) {
  return {metrics::precision(c), metrics::recall(c), metrics::f1(c),
          metrics::overall_accuracy(c)};
}

EvaluationReport summarize(const std::vector<TileScores>& tiles, bool macro,
                           bool have_seg, bool have_points) {
  EvaluationReport r;
  r.macro = macro;
  r.tiles = tiles.size();
  for (const auto& t : tiles) {
    r.cd_counts += t.cd;
    r.seg_counts += t.seg;
    r.points += t.points;
  }
  if (!macro) {
    r.cd = metric_set(r.cd_counts);
    if (have_seg) r.seg = metric_set(r.seg_counts);
    if (have_points && r.points.p_total + r.points.n_total > 0) {
      r.pacc = metrics::point_accuracy(r.points);
    }
  } else {
    MetricSet cd, seg;
    double pacc = 0.0;
    std::size_t pacc_tiles = 0;
    for (const auto& t : tiles) {
      const auto a = metric_set(t.cd);
      const auto b = metric_set(t.seg);
      cd.precision += a.precision;
      cd.recall += a.recall;
      cd.f1 += a.f1;
      cd.oa += a.oa;
      seg.precision += b.precision;
      seg.recall += b.recall;
      seg.f1 += b.f1;
      seg.oa += b.oa;
      if (t.points.p_total + t.points.n_total > 0) {
        pacc += metrics::point_accuracy(t.points);
        ++pacc_tiles;
      }
    }
    const double n = tiles.empty() ? 1.0 : static_cast<double>(tiles.size());
    auto scale = [n](MetricSet& m) {
      m.precision /= n;
      m.recall /= n;
      m.f1 /= n;
      m.oa /= n;
    };
    scale(cd);
    scale(seg);
    r.cd = cd;
    if (have_seg) r.seg = seg;
    if (have_points && pacc_tiles > 0) r.pacc = pacc / static_cast<double>(pacc_tiles);
  }
  if (r.seg && r.seg->f1 != 1.0) r.error_ratio = metrics::error_ratio(r.cd.f1, r.seg->f1);
  return r;
}

DatasetRun run_dataset(const PipelineConfig& config, const DatasetLayout& layout,
                       const DatasetRunOptions& options) {
  config.validate();
  if (options.score && !layout.has_change_labels()) {
    throw Error(ErrorCode::kInvalidDataset, layout.root().string() + " has no labels");
  }
  const auto backend = make_backend(config, layout);
  const auto embeddings = make_embeddings(config, layout);
  const auto& stems = layout.stems();

  const bool dump = options.out && config.dump_intermediates;
  if (options.out) {
    fs::create_directories(*options.out / "change");
    if (dump) {
      for (std::size_t e = 0; e < kEpochs; ++e) {
        for (const char* kind : {"mask_", "sim_", "prompts_"}) {
          fs::create_directories(*options.out / (kind + epoch_name(e)));
        }
      }
    }
  }

  const bool score_seg = options.score && layout.has_epoch_labels();
  DatasetRun run;
  run.tiles.resize(stems.size());
  std::vector<std::vector<std::string>> warnings(stems.size());
  for_each_tile(stems.size(), config.workers, [&](std::size_t i) {
    const std::string& stem = stems[i];
    const TileInput tile = load_tile(layout, stem);
    DetectResult det = run_detect(config, tile, *embeddings, *backend);
    warnings[i] = det.warnings;

    if (options.out) {
      const fs::path& out = *options.out;
      io::write_mask(out / "change" / (stem + ".pgm"), det.change_map);
      if (dump) {
        for (std::size_t e = 0; e < kEpochs; ++e) {
          const std::string ep = epoch_name(e);
          io::write_mask(out / ("mask_" + ep) / (stem + ".pgm"), det.epoch_masks[e]);
          const ScalarMap& sim = det.sim_maps[e];
          io::write_pnm(out / ("sim_" + ep) / (stem + ".pgm"),
                        io::scalar_map_to_gray(bilinear_upsample(
                            sim, tile.images[e]->width(), tile.images[e]->height())));
          std::vector<float> grid(sim.data().begin(), sim.data().end());
          io::write_tensor(out / ("sim_" + ep) / (stem + ".auwt"),
                           io::Tensor::from_f32({static_cast<std::uint32_t>(sim.height()),
                                                 static_cast<std::uint32_t>(sim.width())},
                                                std::move(grid)));
          write_text(out / ("prompts_" + ep) / (stem + ".csv"),
                     format_prompts(det.prompt_sets[e]));
        }
      }
    }

    if (options.score) {
      TileScores& s = run.tiles[i];
      s.cd = metrics::confusion(det.change_map,
                                load_change_label(layout, stem, config.croi_class));
      if (score_seg) {
        for (std::size_t e = 0; e < kEpochs; ++e) {
          const BinaryMask truth = load_epoch_label(layout, e, stem, config.croi_class);
          s.seg += metrics::confusion(det.epoch_masks[e], truth);
          s.points += metrics::audit_points(det.prompt_sets[e], truth);
        }
      }
    }
  });
  for (auto& w : warnings) run.warnings.insert(run.warnings.end(), w.begin(), w.end());
  if (options.score) {
    run.report = summarize(run.tiles, config.macro, score_seg, score_seg);
  }
  run.report.config_echo = config.echo();
  return run;
}

EvaluationReport run_evaluate(const PipelineConfig& config, const DatasetLayout& layout,
                              const fs::path& predictions) {
  config.validate();
  if (!layout.has_change_labels()) {
    throw Error(ErrorCode::kInvalidDataset, layout.root().string() + " has no labels");
  }
  const fs::path change_dir = predictions / "change";
  if (!dir_exists(change_dir)) {
    throw Error(ErrorCode::kInvalidDataset, "missing " + change_dir.string());
  }
  std::size_t found = 0;
  for (const auto& entry : fs::directory_iterator(change_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") ++found;
  }
  const auto& stems = layout.stems();
  if (found != stems.size()) {
    throw Error(ErrorCode::kInvalidDataset,
                std::to_string(found) + " predictions for " + std::to_string(stems.size()) +
                    " tiles");
  }
  for (const auto& stem : stems) {
    if (!file_exists(change_dir / (stem + ".pgm"))) {
      throw Error(ErrorCode::kInvalidDataset, "no prediction for tile " + stem);
    }
  }
  bool have_masks = layout.has_epoch_labels();
  bool have_points = layout.has_epoch_labels();
  for (std::size_t e = 0; e < kEpochs; ++e) {
    have_masks = have_masks && dir_exists(predictions / ("mask_" + epoch_name(e)));
    have_points = have_points && dir_exists(predictions / ("prompts_" + epoch_name(e)));
  }

  std::vector<TileScores> tiles(stems.size());
  for_each_tile(stems.size(), config.workers, [&](std::size_t i) {
    const std::string& stem = stems[i];
    TileScores& s = tiles[i];
    s.cd = metrics::confusion(io::read_mask(change_dir / (stem + ".pgm")),
                              load_change_label(layout, stem, config.croi_class));
    if (!have_masks && !have_points) return;
    for (std::size_t e = 0; e < kEpochs; ++e) {
      const BinaryMask truth = load_epoch_label(layout, e, stem, config.croi_class);
      const std::string ep = epoch_name(e);
      if (have_masks) {
        s.seg += metrics::confusion(io::read_mask(predictions / ("mask_" + ep) / (stem + ".pgm")),
                                    truth);
      }
      if (have_points) {
        const fs::path p = predictions / ("prompts_" + ep) / (stem + ".csv");
        if (!file_exists(p)) {
          throw Error(ErrorCode::kInvalidDataset, "missing prompt dump " + p.string());
        }
        s.points += metrics::audit_points(parse_prompts(bytes_to_string(io::read_file(p))),
                                          truth);
      }
    }
  });
  EvaluationReport report = summarize(tiles, config.macro, have_masks, have_points);
  report.config_echo = config.echo();
  return report;
}

std::vector<double> SweepRange::thresholds() const {
  if (!(step > 0.0) || !(to >= from)) {
    throw Error(ErrorCode::kInvalidInput, "sweep needs step > 0 and to >= from");
  }
  const auto steps = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
  std::vector<double> out;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = from + static_cast<double>(i) * step;
    out.push_back(std::round(t * 1e12) / 1e12);
  }
  return out;
}

SweepResult run_sweep(const PipelineConfig& config, const DatasetLayout& layout,
                      const SweepRange& range) {
  if (!layout.has_epoch_labels() || !layout.has_change_labels()) {
    throw Error(ErrorCode::kInvalidDataset,
                layout.root().string() + ": sweep needs epoch and change labels");
  }
  SweepResult result;
  result.config_echo = config.echo();
  for (const double t : range.thresholds()) {
    PipelineConfig at = config;
    at.threshold = t;
    DatasetRun run = run_dataset(at, layout, {});
    result.rows.push_back({t, std::move(run.report)});
  }
  return result;
}

std::string format_prompts(const align::PromptSet& prompts) {
  std::string out = "polarity,x,y,row,col,score\n";
  char line[256];
  auto emit = [&](const align::PromptPoint& p) {
    std::snprintf(line, sizeof line, "%s,%.17g,%.17g,%zu,%zu,%.17g\n",
                  p.polarity == align::Polarity::kPositive ? "positive" : "negative", p.x,
                  p.y, p.source_cell.row, p.source_cell.col, p.score);
    out += line;
  };
  for (const auto& p : prompts.positives) emit(p);
  for (const auto& p : prompts.negatives) emit(p);
  return out;
}

align::PromptSet parse_prompts(std::string_view text) {
  align::PromptSet set;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != "polarity,x,y,row,col,score") {
        throw Error(ErrorCode::kParseError, "bad prompt dump header");
      }
      header = false;
      continue;
    }
    char polarity[16] = {};
    align::PromptPoint p;
    if (std::sscanf(line.c_str(), "%15[a-z],%lf,%lf,%zu,%zu,%lf", polarity, &p.x, &p.y,
                    &p.source_cell.row, &p.source_cell.col, &p.score) != 6) {
      throw Error(ErrorCode::kParseError, "bad prompt dump line: " + line);
    }
    const std::string_view pol = polarity;
    if (pol == "positive") {
      p.polarity = align::Polarity::kPositive;
      set.positives.push_back(p);
    } else if (pol == "negative") {
      p.polarity = align::Polarity::kNegative;
      set.negatives.push_back(p);
    } else {
      throw Error(ErrorCode::kParseError, "bad prompt polarity: " + line);
    }
  }
  if (header) throw Error(ErrorCode::kParseError, "empty prompt dump");
  return set;
}

}  // namespace auwcd::pipeline
