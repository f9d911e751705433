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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "auwcd/change_detect.hpp"
#include "auwcd/error_propagation.hpp"
#include "auwcd/metrics.hpp"
#include "auwcd/pipeline.hpp"
#include "auwcd/raster.hpp"
#include "auwcd/report.hpp"
#include "auwcd/semantic_align.hpp"
#include "auwcd/synthetic.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace auwcd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::map<std::string, std::vector<std::uint8_t>> snapshot(const fs::path& root) {
  std::map<std::string, std::vector<std::uint8_t>> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      files[fs::relative(e.path(), root).string()] = oracle::read_bytes(e.path().string());
    }
  }
  return files;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(AUWCD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome oracle_exactness(const fs::path& work) {
  pipeline::SyntheticSpec spec;
  spec.tiles = 50;
  spec.size = 128;
  spec.seed = 2026;
  const auto layout = pipeline::generate_synthetic_dataset(spec, work / "exact");
  pipeline::PipelineConfig config;
  config.threshold = 0.55;
  config.workers = 1;
  const auto start = std::chrono::steady_clock::now();
  const auto run = pipeline::run_dataset(config, layout, {work / "exact_out", true});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto& r = run.report;
  return {r.tiles == 50 && r.cd.f1 == 1.0 && r.cd.oa == 1.0 && secs < 10.0,
          fmt("tiles=%zu F1_CD=%.17g OA=%.17g runtime=%.3fs", r.tiles, r.cd.f1, r.cd.oa, secs)};
}

Outcome sqrt2_ratio() {
  bool ok = true;
  std::string detail;
  for (double e : {0.01, 0.02, 0.05}) {
    metrics::ErrorPropagationParams p;
    p.flip_prob = e;
    p.trials = 200;
    p.seed = 11;
    const auto r = metrics::simulate_error_propagation(p);
    ok = ok && r.ratios.size() >= 200 && r.mean_ratio >= 1.30 && r.mean_ratio <= 1.50;
    detail += fmt("eps=%.2f mean=%.4f ", e, r.mean_ratio);
  }
  double worst = 0;
  for (double m : {1e-6, 0.01, 0.1, 0.2596, 0.5, 1.0, 3.0}) {
    const std::vector<double> mm{m, m};
    worst = std::max(worst, std::abs(metrics::combined_error(mm) - std::sqrt(2.0) * m));
  }
  ok = ok && worst <= 1e-12;
  return {ok, detail + fmt("combined_error max dev=%.3g", worst)};
}

Outcome point_selection() {
  std::mt19937_64 rng(98);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> levels(0, 8);
  std::size_t mismatches = 0, ties = 0, capped = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t side = 1 + rng() % 8;
    std::vector<double> v(side * side);
    const bool coarse = trial % 2 == 0;  // coarse levels force ties
    for (auto& x : v) x = coarse ? levels(rng) / 8.0 : u(rng);
    const double t = coarse ? levels(rng) / 8.0 : u(rng);
    const auto expect = oracle::select_cells(v, t);
    const auto counts = align::select_point_counts(ScalarMap(side, side, v), t);
    const auto s = align::generate_prompt_points(ScalarMap(side, side, v), t, 224, 224);
    bool same = counts.num_p == expect.num_p && counts.num_n == expect.num_p &&
                s.positives.size() == expect.num_p && s.negatives.size() == expect.negatives.size();
    for (std::size_t i = 0; same && i < s.positives.size(); ++i) {
      const auto& c = s.positives[i].source_cell;
      same = c.row * side + c.col == expect.positives[i];
    }
    for (std::size_t i = 0; same && i < s.negatives.size(); ++i) {
      const auto& c = s.negatives[i].source_cell;
      same = c.row * side + c.col == expect.negatives[i];
    }
    if (!same) ++mismatches;
    std::size_t above = 0;
    for (double x : v) above += x > t;
    if (above > v.size() / 2) ++capped;
    if (std::set<double>(v.begin(), v.end()).size() < v.size()) ++ties;
  }
  return {mismatches == 0,
          fmt("maps=1000 mismatches=%zu with_ties=%zu capped=%zu", mismatches, ties, capped)};
}

Outcome coordinate_mapping() {
  std::size_t bad = 0, cells = 0;
  for (std::size_t ps : {14u, 16u, 32u}) {
    const align::PatchGeometry g(224, ps);
    const std::size_t side = g.grid_side();
    const double step = 224.0 / static_cast<double>(side);
    for (std::size_t r = 0; r < side; ++r) {
      for (std::size_t c = 0; c < side; ++c) {
        ++cells;
        const auto [x, y] = align::cell_to_image({r, c}, side, 224, 224);
        const bool in = x >= 0 && x < 224 && y >= 0 && y < 224;
        if (!in || x != step * c || y != step * r) ++bad;
      }
    }
  }
  const auto [x7, y7] = align::cell_to_image({7, 7}, 14, 224, 224);
  const bool hand = x7 == 112.0 && y7 == 112.0;
  return {bad == 0 && hand, fmt("cells=%zu bad=%zu cell(7,7)@14->(%g,%g)", cells, bad, x7, y7)};
}

Outcome metric_oracle() {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> coord(0, 31);
  std::uniform_real_distribution<double> jitter(-0.49, 0.49);
  double worst = 0;
  std::size_t count_mismatch = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = oracle::random_bits(rng, 1024, u(rng));
    const auto b = oracle::random_bits(rng, 1024, u(rng));
    const BinaryMask pred(32, 32, a), truth(32, 32, b);
    const auto c = metrics::confusion(pred, truth);
    const auto o = oracle::tally(a, b);
    if (c.tp != o.tp || c.fp != o.fp || c.tn != o.tn || c.fn != o.fn) ++count_mismatch;
    worst = std::max({worst, std::abs(metrics::precision(c) - oracle::precision(o)),
                      std::abs(metrics::recall(c) - oracle::recall(o)),
                      std::abs(metrics::f1(c) - oracle::f1(o)),
                      std::abs(metrics::overall_accuracy(c) - oracle::oa(o))});

    align::PromptSet s;
    std::uint64_t correct = 0, total = 0;
    const int points = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < points; ++i) {
      const int px = coord(rng), py = coord(rng);
      const bool positive = rng() % 2;
      align::PromptPoint p{px + jitter(rng), py + jitter(rng),
                           positive ? align::Polarity::kPositive : align::Polarity::kNegative,
                           {}, 0.0};
      (positive ? s.positives : s.negatives).push_back(p);
      const bool inside = b[static_cast<std::size_t>(py) * 32 + px] != 0;
      correct += inside == positive;
      ++total;
    }
    const double pacc = metrics::point_accuracy(metrics::audit_points(s, truth));
    worst = std::max(worst, std::abs(pacc - oracle::frac(correct, total)));
  }
  return {count_mismatch == 0 && worst <= 1e-12,
          fmt("pairs=1000 count_mismatch=%zu max dev=%.3g", count_mismatch, worst)};
}

Outcome sweep_trends(const fs::path& work) {
  pipeline::SyntheticSpec spec;
  spec.tiles = 50;
  spec.blobs = 8;
  spec.min_blob = 4;
  spec.max_blob = 32;
  spec.require_anchor = false;
  spec.embedding_noise = 0.05;
  spec.seed = 7;
  const auto layout = pipeline::generate_synthetic_dataset(spec, work / "noisy");
  const auto sweep = pipeline::run_sweep(pipeline::PipelineConfig{}, layout, {});
  std::vector<double> ts, pacc, rec;
  for (const auto& row : sweep.rows) {
    ts.push_back(row.threshold);
    pacc.push_back(row.report.pacc.value_or(0.0));
    rec.push_back(row.report.cd.recall);
  }
  const double rp = oracle::spearman(pacc, ts);
  const double rr = oracle::spearman(rec, ts);
  return {ts.size() == 10 && rp > 0.8 && rr < -0.8,
          fmt("thresholds=%zu rho(PAcc,t)=%.4f rho(recall,t)=%.4f", ts.size(), rp, rr)};
}

Outcome invariants() {
  std::mt19937_64 rng(77);
  std::size_t failures = 0, checks = 0;
  auto expect = [&](bool ok) {
    ++checks;
    failures += ok ? 0 : 1;
  };

  // Normalization under positive affine maps.
  std::uniform_int_distribution<int> ints(-1000, 1000);
  std::uniform_real_distribution<double> u(-10, 10), slope(0.01, 100);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(2 + trial % 40), w(v.size());
    for (auto& x : v) x = ints(rng);
    v[0] = 1001;
    const double a = std::ldexp(1.0, trial % 11 - 5), b = ints(rng);
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = a * v[i] + b;
    expect(minmax_normalize(v) == minmax_normalize(w));
    const auto once = minmax_normalize(v);
    expect(minmax_normalize(once) == once);

    for (auto& x : v) x = u(rng);
    const double ga = slope(rng), gb = u(rng);
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = ga * v[i] + gb;
    const auto nv = minmax_normalize(v), nw = minmax_normalize(w);
    double dev = 0;
    for (std::size_t i = 0; i < v.size(); ++i) dev = std::max(dev, std::abs(nv[i] - nw[i]));
    expect(dev <= 1e-12);
  }

  // Similarity map under direction scaling and token shifts.
  std::normal_distribution<float> n;
  std::uniform_real_distribution<float> scale(0.05f, 20.0f);
  const align::PatchGeometry g(224, 16);
  for (int trial = 0; trial < 100; ++trial) {
    align::TokenEmbeddings tok;
    tok.num_token = g.simms() + 1;
    tok.token_dim = 8;
    tok.includes_class_token = true;
    tok.data.resize(tok.num_token * 8);
    for (auto& x : tok.data) x = n(rng);
    align::TextEmbedding a, b, a2, b2;
    std::vector<float> shift(8);
    const float s = scale(rng);
    for (int d = 0; d < 8; ++d) {
      a.data.push_back(n(rng));
      b.data.push_back(n(rng));
      a2.data.push_back(2 * a.data[d]);
      b2.data.push_back(2 * b.data[d]);
      shift[d] = 2 * n(rng);
    }
    const auto base = align::compute_similarity_map(tok, a, b, g);
    expect(base == align::compute_similarity_map(tok, a2, b2, g));
    align::TextEmbedding as{b.data};
    for (int d = 0; d < 8; ++d) as.data[d] += s * (a.data[d] - b.data[d]);
    const auto scaled = align::compute_similarity_map(tok, as, b, g);
    align::TokenEmbeddings moved = tok;
    for (std::size_t i = 0; i < moved.data.size(); ++i) moved.data[i] += shift[i % 8];
    const auto shifted = align::compute_similarity_map(moved, a, b, g);
    double dev = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      dev = std::max({dev, std::abs(base.data()[i] - scaled.data()[i]),
                      std::abs(base.data()[i] - shifted.data()[i])});
    }
    expect(dev <= 1e-6);
  }

  // Change algebra.
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t w = 1 + rng() % 40, h = 1 + rng() % 40;
    const BinaryMask a(w, h, oracle::random_bits(rng, w * h, 0.2));
    const BinaryMask b(w, h, oracle::random_bits(rng, w * h, 0.5));
    const BinaryMask c(w, h, oracle::random_bits(rng, w * h, 0.8));
    const auto ab = cd::symmetric_difference(a, b);
    expect(ab == cd::symmetric_difference(b, a));
    expect(cd::symmetric_difference(a, a).count() == 0);
    expect(cd::symmetric_difference(a, BinaryMask(w, h)) == a);
    expect(ab == cd::symmetric_difference(cd::symmetric_difference(a, c),
                                          cd::symmetric_difference(c, b)));
    expect(testing::vec(ab.bits()) ==
           oracle::set_change(testing::vec(a.bits()), testing::vec(b.bits())));
  }
  return {failures == 0, fmt("checks=%zu failures=%zu", checks, failures)};
}

Outcome determinism(const fs::path& work) {
  pipeline::SyntheticSpec spec;
  spec.tiles = 50;
  spec.blobs = 6;
  spec.min_blob = 6;
  spec.max_blob = 30;
  spec.require_anchor = false;
  spec.embedding_noise = 0.05;
  spec.seed = 31;
  const auto data = work / "det";
  pipeline::generate_synthetic_dataset(spec, data);

  // Library runs with a noisy backend.
  pipeline::PipelineConfig config;
  config.backend = pipeline::BackendKind::kNoisy;
  config.flip_prob = 0.03;
  config.seed = 4;
  config.dump_intermediates = true;
  const auto layout = pipeline::DatasetLayout::discover(data);
  std::vector<std::map<std::string, std::vector<std::uint8_t>>> lib;
  std::vector<std::string> reports;
  for (std::size_t workers : {1u, 4u}) {
    config.workers = workers;
    const fs::path out = work / ("lib_w" + std::to_string(workers));
    const auto run = pipeline::run_dataset(config, layout, {out, true});
    lib.push_back(snapshot(out));
    reports.push_back(pipeline::report_csv(run.report) + pipeline::report_table(run.report));
  }

  // Full CLI runs.
  std::vector<std::map<std::string, std::vector<std::uint8_t>>> cli;
  int rc = 0;
  for (int workers : {1, 4}) {
    const fs::path out = work / ("cli_w" + std::to_string(workers));
    rc |= run_cli("detect --dataset " + q(data) + " --out " + q(out) +
                  " --backend noisy --flip-prob 0.03 --seed 4 --dump-intermediates --workers " +
                  std::to_string(workers));
    cli.push_back(snapshot(out));
  }
  const bool ok = rc == 0 && lib[0] == lib[1] && reports[0] == reports[1] && cli[0] == cli[1] &&
                  cli[0].count("report.csv") && lib[0].size() > 50;
  return {ok, fmt("library files=%zu cli files=%zu identical=%s", lib[0].size(), cli[0].size(),
                  ok ? "yes" : "no")};
}

}  // namespace

int main() {
  testing::TempDir work("acceptance");
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle end-to-end exactness", [&] { return oracle_exactness(work.path()); }},
      {"sqrt(2) error-ratio reproduction", sqrt2_ratio},
      {"point-selection brute-force equivalence", point_selection},
      {"coordinate mapping", coordinate_mapping},
      {"metric oracle equivalence", metric_oracle},
      {"threshold-sweep trends", [&] { return sweep_trends(work.path()); }},
      {"normalization and change-algebra invariants", invariants},
      {"determinism across worker counts", [&] { return determinism(work.path()); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %-45s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
