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

// auwcd: semantic-first change detection from the command line.
//
//   auwcd synth    --out DIR [--tiles N --size PX --embedding-noise S ...]
//   auwcd detect   --dataset DIR --out DIR [--backend oracle|file|noisy ...]
//   auwcd evaluate --dataset DIR --predictions DIR [--out DIR] [--macro]
//   auwcd sweep    --dataset DIR --out DIR [--from 0.5 --to 0.95 --step 0.05]
//
// Exit codes: 0 ok, 2 invalid input, 3 backend error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "auwcd/config.hpp"
#include "auwcd/dataset.hpp"
#include "auwcd/error.hpp"
#include "auwcd/io.hpp"
#include "auwcd/pipeline.hpp"
#include "auwcd/report.hpp"
#include "auwcd/synthetic.hpp"

namespace fs = std::filesystem;
using namespace auwcd;
using namespace auwcd::pipeline;

namespace {

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::string> croi;
  std::optional<std::string> croui;
  std::optional<double> threshold;
  std::optional<std::string> backend;
  std::optional<std::string> encoder;
  std::optional<std::string> masks;
  std::optional<double> flip_prob;
  std::optional<double> embedding_noise;
  std::optional<std::size_t> eis;
  std::optional<std::size_t> ps;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<int> croi_class;
  std::optional<int> connectivity;
  bool macro = false;
  bool swap_axes = false;
  bool center_offset = false;
  bool dump = false;
  std::string dataset;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "key = value configuration file");
  cmd->add_option("--croi", f.croi, "CRoI text");
  cmd->add_option("--croui", f.croui, "CRoUI text (\" \" for none)");
  cmd->add_option("--threshold", f.threshold, "prompt-point threshold t in [0,1]");
  cmd->add_option("--backend", f.backend, "oracle | file | noisy");
  cmd->add_option("--encoder", f.encoder, "files | synthetic");
  cmd->add_option("--masks", f.masks, "mask root for the file backend (t1/, t2/)");
  cmd->add_option("--flip-prob", f.flip_prob, "pixel flip probability of the noisy backend");
  cmd->add_option("--embedding-noise", f.embedding_noise,
                  "noise of the synthetic encoder");
  cmd->add_option("--eis", f.eis, "encoder input size");
  cmd->add_option("--ps", f.ps, "patch size");
  cmd->add_option("--seed", f.seed, "seed");
  cmd->add_option("--workers", f.workers, "worker threads");
  cmd->add_option("--croi-class", f.croi_class, "binarize class-id labels at this id");
  cmd->add_option("--connectivity", f.connectivity, "oracle connectivity, 4 or 8");
  cmd->add_flag("--macro", f.macro, "average per-tile metrics");
  cmd->add_flag("--swap-axes", f.swap_axes, "pair the column index with image width");
  cmd->add_flag("--center-offset", f.center_offset, "place points at cell centers");
  cmd->add_flag("--dump-intermediates", f.dump, "write masks, maps and prompts");
}

PipelineConfig build_config(const CommonFlags& f) {
  PipelineConfig c = f.config ? load_config(*f.config) : PipelineConfig{};
  auto set = [&c](const char* key, const auto& v) {
    if (v) {
      if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, std::string>) {
        c.set(key, *v);
      } else {
        c.set(key, std::to_string(*v));
      }
    }
  };
  if (f.croi) c.croi_text = *f.croi;
  if (f.croui) c.croui_text = *f.croui;
  if (f.threshold) c.threshold = *f.threshold;
  if (f.flip_prob) c.flip_prob = *f.flip_prob;
  if (f.embedding_noise) c.embedding_noise = *f.embedding_noise;
  set("backend", f.backend);
  set("encoder", f.encoder);
  set("masks", f.masks);
  set("eis", f.eis);
  set("ps", f.ps);
  set("seed", f.seed);
  set("workers", f.workers);
  set("croi_class", f.croi_class);
  set("connectivity", f.connectivity);
  if (f.macro) c.macro = true;
  if (f.swap_axes) c.swap_axes = true;
  if (f.center_offset) c.center_offset = true;
  if (f.dump) c.dump_intermediates = true;
  c.validate();
  return c;
}

void write_text(const fs::path& path, const std::string& text) {
  io::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                 text.size()));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_detect(const CommonFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  const PipelineConfig config = build_config(f);
  const DatasetLayout layout = DatasetLayout::discover(f.dataset);
  const fs::path out = f.out;
  DatasetRunOptions options;
  options.out = out;
  options.score = layout.has_change_labels();
  const DatasetRun run = run_dataset(config, layout, options);
  std::string warnings;
  for (const auto& w : run.warnings) {
    std::cerr << "warning: " << w << "\n";
    warnings += w + "\n";
  }
  write_text(out / "warnings.txt", warnings);
  if (options.score) {
    write_text(out / "report.csv", report_csv(run.report));
    write_text(out / "report.txt", report_table(run.report));
    std::cout << report_table(run.report);
  }
  std::printf("detect: %zu tiles in %.3f s\n", layout.stems().size(), seconds_since(start));
  return 0;
}

int cmd_evaluate(const CommonFlags& f, const std::string& predictions) {
  const auto start = std::chrono::steady_clock::now();
  const PipelineConfig config = build_config(f);
  const DatasetLayout layout = DatasetLayout::discover(f.dataset);
  EvaluationReport report = run_evaluate(config, layout, predictions);
  report.runtime_seconds = seconds_since(start);
  if (!f.out.empty()) {
    write_text(fs::path(f.out) / "report.csv", report_csv(report));
    write_text(fs::path(f.out) / "report.txt", report_table(report));
  }
  std::cout << report_table(report);
  std::printf("evaluate: %zu tiles in %.3f s\n", report.tiles, report.runtime_seconds);
  return 0;
}

int cmd_sweep(const CommonFlags& f, const SweepRange& range) {
  const auto start = std::chrono::steady_clock::now();
  const PipelineConfig config = build_config(f);
  const DatasetLayout layout = DatasetLayout::discover(f.dataset);
  const SweepResult sweep = run_sweep(config, layout, range);
  write_text(fs::path(f.out) / "sweep.csv", sweep_csv(sweep));
  write_text(fs::path(f.out) / "sweep.txt", sweep_table(sweep));
  std::cout << sweep_table(sweep);
  std::printf("sweep: %zu thresholds in %.3f s\n", sweep.rows.size(), seconds_since(start));
  return 0;
}

int cmd_synth(const CommonFlags& f, SyntheticSpec spec) {
  const PipelineConfig config = build_config(f);
  spec.seed = config.seed;
  spec.encoder_input_size = config.encoder_input_size;
  spec.patch_size = config.patch_size;
  spec.croi_text = config.croi_text;
  spec.croui_text = config.croui_text;
  if (f.embedding_noise) spec.embedding_noise = *f.embedding_noise;
  const DatasetLayout layout = generate_synthetic_dataset(spec, f.out);
  std::printf("synth: wrote %zu tiles to %s\n", layout.stems().size(), f.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"auwcd: semantic-first change detection"};
  app.require_subcommand(1);

  CommonFlags detect_flags, eval_flags, sweep_flags, synth_flags;

  auto* detect = app.add_subcommand("detect", "run the pipeline on a dataset");
  add_common(detect, detect_flags);
  detect->add_option("--dataset", detect_flags.dataset, "dataset root")->required();
  detect->add_option("--out", detect_flags.out, "output directory")->required();

  std::string predictions;
  auto* evaluate = app.add_subcommand("evaluate", "score stored predictions");
  add_common(evaluate, eval_flags);
  evaluate->add_option("--dataset", eval_flags.dataset, "dataset root")->required();
  evaluate->add_option("--predictions", predictions, "detect output directory")->required();
  evaluate->add_option("--out", eval_flags.out, "report directory");

  SweepRange range;
  auto* sweep = app.add_subcommand("sweep", "threshold ablation");
  add_common(sweep, sweep_flags);
  sweep->add_option("--dataset", sweep_flags.dataset, "dataset root")->required();
  sweep->add_option("--out", sweep_flags.out, "output directory")->required();
  sweep->add_option("--from", range.from, "first threshold");
  sweep->add_option("--to", range.to, "last threshold");
  sweep->add_option("--step", range.step, "threshold step");

  SyntheticSpec spec;
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  add_common(synth, synth_flags);
  synth->add_option("--out", synth_flags.out, "output directory")->required();
  synth->add_option("--tiles", spec.tiles, "tile count");
  synth->add_option("--size", spec.size, "tile side in pixels");
  synth->add_option("--blobs", spec.blobs, "blobs per tile");
  synth->add_option("--min-blob", spec.min_blob, "smallest blob side");
  synth->add_option("--max-blob", spec.max_blob, "largest blob side");
  synth->add_option("--change-fraction", spec.change_fraction,
                    "probability a blob exists in only one epoch");
  synth->add_option("--token-dim", spec.token_dim, "embedding width");
  bool no_anchor = false;
  synth->add_flag("--no-anchor", no_anchor, "allow blobs that cover no full grid cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*detect) return cmd_detect(detect_flags);
    if (*evaluate) return cmd_evaluate(eval_flags, predictions);
    if (*sweep) return cmd_sweep(sweep_flags, range);
    if (*synth) {
      spec.require_anchor = !no_anchor;
      return cmd_synth(synth_flags, spec);
    }
  } catch (const Error& e) {
    std::cerr << "auwcd: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "auwcd: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
