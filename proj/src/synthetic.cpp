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

#include "auwcd/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "auwcd/change_detect.hpp"
#include "auwcd/error.hpp"
#include "auwcd/io.hpp"
#include "auwcd/segment.hpp"

namespace auwcd::pipeline {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_int(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

struct Blob {
  bool ellipse = false;
  std::size_t x0 = 0, y0 = 0, w = 0, h = 0;  // bounding box
  bool in_t1 = true;
  bool in_t2 = true;

  bool contains(std::size_t x, std::size_t y) const {
    if (x < x0 || y < y0 || x >= x0 + w || y >= y0 + h) return false;
    if (!ellipse) return true;
    const double dx = (static_cast<double>(x - x0) + 0.5) / static_cast<double>(w) - 0.5;
    const double dy = (static_cast<double>(y - y0) + 0.5) / static_cast<double>(h) - 0.5;
    return dx * dx + dy * dy <= 0.25;
  }

  bool overlaps(const Blob& o, std::size_t gap) const {
    return x0 < o.x0 + o.w + gap && o.x0 < x0 + w + gap && y0 < o.y0 + o.h + gap &&
           o.y0 < y0 + h + gap;
  }
};

BinaryMask rasterize(const std::vector<Blob>& blobs, std::size_t size, std::size_t epoch) {
  BinaryMask mask(size, size);
  for (const auto& b : blobs) {
    if (epoch == 0 ? !b.in_t1 : !b.in_t2) continue;
    for (std::size_t y = b.y0; y < b.y0 + b.h; ++y) {
      for (std::size_t x = b.x0; x < b.x0 + b.w; ++x) {
        if (b.contains(x, y)) mask.set(x, y, true);
      }
    }
  }
  return mask;
}

// True when some grid cell lies entirely inside the blob and its prompt
// coordinate snaps onto a blob pixel.
bool has_anchor_cell(const Blob& blob, std::size_t size, std::size_t grid) {
  const BinaryMask alone = rasterize({blob}, size, 0);
  const auto fractions = patch_fractions(alone, grid);
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (fractions[i] != 1.0) continue;
    const align::GridCell cell{i / grid, i % grid};
    const auto [x, y] = align::cell_to_image(cell, grid, size, size);
    const auto [px, py] = segment::snap_to_pixel(x, y, size, size);
    if (alone.get(px, py)) return true;
  }
  return false;
}

ImageRaster paint(const BinaryMask& roi, std::size_t epoch, std::mt19937_64& rng) {
  ImageRaster img(roi.width(), roi.height(), 3);
  const int shift = epoch == 0 ? 0 : 12;
  for (std::size_t y = 0; y < roi.height(); ++y) {
    for (std::size_t x = 0; x < roi.width(); ++x) {
      const int jitter = static_cast<int>(rng() % 17) - 8;
      const bool on = roi.get(x, y);
      const int r = (on ? 186 : 92) + jitter + shift;
      const int g = (on ? 88 : 126) + jitter;
      const int b = (on ? 70 : 74) + jitter - shift / 2;
      img.set(x, y, 0, static_cast<std::uint8_t>(std::clamp(r, 0, 255)));
      img.set(x, y, 1, static_cast<std::uint8_t>(std::clamp(g, 0, 255)));
      img.set(x, y, 2, static_cast<std::uint8_t>(std::clamp(b, 0, 255)));
    }
  }
  return img;
}

}  // namespace

std::vector<double> patch_fractions(const BinaryMask& truth, std::size_t grid_side) {
  if (grid_side == 0 || truth.width() < grid_side || truth.height() < grid_side) {
    throw Error(ErrorCode::kInvalidInput, "grid is finer than the mask");
  }
  std::vector<std::size_t> set(grid_side * grid_side, 0);
  std::vector<std::size_t> total(grid_side * grid_side, 0);
  for (std::size_t y = 0; y < truth.height(); ++y) {
    const std::size_t row = y * grid_side / truth.height();
    for (std::size_t x = 0; x < truth.width(); ++x) {
      const std::size_t cell = row * grid_side + x * grid_side / truth.width();
      ++total[cell];
      if (truth.get(x, y)) ++set[cell];
    }
  }
  std::vector<double> out(set.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<double>(set[i]) / static_cast<double>(total[i]);
  }
  return out;
}

SyntheticText synthetic_text_embeddings(std::size_t token_dim) {
  if (token_dim == 0) throw Error(ErrorCode::kInvalidInput, "token_dim must be positive");
  SyntheticText t;
  t.croi.data.resize(token_dim);
  t.croui.data.resize(token_dim);
  for (std::size_t d = 1; d < token_dim; ++d) {
    const float shared = 0.125F * static_cast<float>(d);
    t.croi.data[d] = shared;
    t.croui.data[d] = shared;
  }
  t.croi.data[0] = 1.0F;
  t.croui.data[0] = 0.0F;
  return t;
}

align::TokenEmbeddings synthetic_tokens(std::span<const double> fractions,
                                        std::size_t token_dim, double noise,
                                        std::uint64_t seed) {
  if (token_dim == 0) throw Error(ErrorCode::kInvalidInput, "token_dim must be positive");
  align::TokenEmbeddings tokens;
  tokens.num_token = fractions.size() + 1;
  tokens.token_dim = token_dim;
  tokens.includes_class_token = true;
  tokens.data.assign(tokens.num_token * token_dim, 0.0F);
  std::mt19937_64 rng(mix(seed));
  std::normal_distribution<double> gauss(0.0, noise > 0.0 ? noise : 1.0);
  // The class token carries no spatial signal.
  tokens.data[0] = 0.5F;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    float* row = tokens.data.data() + (k + 1) * token_dim;
    const double jitter = noise > 0.0 ? gauss(rng) : 0.0;
    row[0] = static_cast<float>(fractions[k] + jitter);
    for (std::size_t d = 1; d < token_dim; ++d) {
      row[d] = static_cast<float>(2.0 * uniform01(rng) - 1.0);
    }
  }
  return tokens;
}

std::uint64_t synthetic_stream_seed(std::uint64_t seed, const std::string& stem,
                                    std::size_t epoch) {
  return mix(seed ^ fnv1a(stem) ^ mix(epoch + 0x51));
}

DatasetLayout generate_synthetic_dataset(const SyntheticSpec& spec,
                                         const std::filesystem::path& out) {
  const align::PatchGeometry geom(spec.encoder_input_size, spec.patch_size);
  const std::size_t grid = geom.grid_side();
  if (spec.tiles == 0 || spec.size < grid || spec.min_blob == 0 ||
      spec.min_blob > spec.max_blob || spec.max_blob + 4 > spec.size) {
    throw Error(ErrorCode::kInvalidInput, "unusable synthetic dataset spec");
  }
  if (!(spec.change_fraction >= 0.0 && spec.change_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "change_fraction must lie in [0,1]");
  }
  constexpr std::size_t kGap = 3;
  constexpr int kAttempts = 400;

  const SyntheticText text = synthetic_text_embeddings(spec.token_dim);
  for (std::size_t t = 0; t < spec.tiles; ++t) {
    char name[32];
    std::snprintf(name, sizeof name, "tile_%04zu", t);
    const std::string stem = name;
    std::mt19937_64 rng(mix(spec.seed * 0x100000001B3ULL + t));

    std::vector<Blob> blobs;
    for (std::size_t b = 0; b < spec.blobs; ++b) {
      for (int attempt = 0; attempt < kAttempts; ++attempt) {
        Blob blob;
        blob.ellipse = (rng() & 1U) != 0;
        blob.w = uniform_int(rng, spec.min_blob, spec.max_blob);
        blob.h = uniform_int(rng, spec.min_blob, spec.max_blob);
        blob.x0 = uniform_int(rng, 1, spec.size - blob.w - 1);
        blob.y0 = uniform_int(rng, 1, spec.size - blob.h - 1);
        const bool clear = std::none_of(blobs.begin(), blobs.end(), [&](const Blob& o) {
          return blob.overlaps(o, kGap);
        });
        if (!clear || (spec.require_anchor && !has_anchor_cell(blob, spec.size, grid))) {
          continue;
        }
        if (uniform01(rng) < spec.change_fraction) {
          const bool vanish = (rng() & 1U) != 0;
          blob.in_t1 = vanish;
          blob.in_t2 = !vanish;
        }
        blobs.push_back(blob);
        break;
      }
    }

    BinaryMask labels[kEpochs];
    for (std::size_t e = 0; e < kEpochs; ++e) {
      labels[e] = rasterize(blobs, spec.size, e);
      io::write_pnm(out / epoch_name(e) / (stem + ".ppm"), paint(labels[e], e, rng));
      io::write_mask(out / ("label_" + epoch_name(e)) / (stem + ".pgm"), labels[e]);
      const auto fractions = patch_fractions(labels[e], grid);
      const auto tokens =
          synthetic_tokens(fractions, spec.token_dim, spec.embedding_noise,
                           synthetic_stream_seed(spec.seed, stem, e));
      io::write_tensor(out / "embeddings" / epoch_name(e) / (stem + ".auwt"),
                       tokens.to_tensor());
    }
    io::write_mask(out / "label_change" / (stem + ".pgm"),
                   cd::symmetric_difference(labels[0], labels[1]));
  }

  io::write_tensor(out / "embeddings" / "text" / "croi.auwt", text.croi.to_tensor());
  io::write_tensor(out / "embeddings" / "text" / "croui.auwt", text.croui.to_tensor());
  EmbeddingManifest manifest;
  manifest.encoder_input_size = spec.encoder_input_size;
  manifest.patch_size = spec.patch_size;
  manifest.num_token = align::expected_token_count(geom);
  manifest.token_dim = spec.token_dim;
  manifest.model = "synthetic-fraction";
  manifest.croi_text = spec.croi_text;
  manifest.croui_text = spec.croui_text;
  const std::string m = manifest.serialize();
  io::write_file(out / "embeddings" / "manifest.txt",
                 std::span(reinterpret_cast<const std::uint8_t*>(m.data()), m.size()));
  return DatasetLayout::discover(out);
}

}  // namespace auwcd::pipeline
