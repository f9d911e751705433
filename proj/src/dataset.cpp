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

#include "auwcd/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <system_error>

#include "auwcd/change_detect.hpp"
#include "auwcd/error.hpp"
#include "auwcd/io.hpp"

namespace auwcd::pipeline {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidDataset, what);
}

bool dir_exists(const fs::path& p) {
  std::error_code ec;
  return fs::is_directory(p, ec);
}

bool file_exists(const fs::path& p) {
  std::error_code ec;
  return fs::is_regular_file(p, ec);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return std::string(s.substr(1, s.size() - 2));
  }
  return std::string(s);
}

std::size_t to_size(std::string_view key, std::string_view v) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::kParseError,
                "manifest key '" + std::string(key) + "' is not a count");
  }
  return out;
}

}  // namespace

std::string epoch_name(std::size_t epoch) { return "t" + std::to_string(epoch + 1); }

DatasetLayout DatasetLayout::discover(const fs::path& root) {
  DatasetLayout layout;
  layout.root_ = root;
  const fs::path t1 = root / "t1";
  if (!dir_exists(t1)) invalid(root.string() + ": missing t1/ directory");
  for (const auto& entry : fs::directory_iterator(t1)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ppm") {
      layout.stems_.push_back(entry.path().stem().string());
    }
  }
  if (layout.stems_.empty()) invalid(root.string() + ": t1/ holds no .ppm tiles");
  std::sort(layout.stems_.begin(), layout.stems_.end());
  for (const auto& stem : layout.stems_) {
    if (!file_exists(layout.image(1, stem))) {
      invalid("tile " + stem + " has no t2 partner");
    }
  }
  layout.has_epoch_labels_ =
      dir_exists(root / "label_t1") && dir_exists(root / "label_t2");
  layout.has_change_labels_ = dir_exists(root / "label_change") || layout.has_epoch_labels_;
  return layout;
}

fs::path DatasetLayout::image(std::size_t epoch, const std::string& stem) const {
  return root_ / epoch_name(epoch) / (stem + ".ppm");
}

fs::path DatasetLayout::label(std::size_t epoch, const std::string& stem) const {
  return root_ / ("label_" + epoch_name(epoch)) / (stem + ".pgm");
}

fs::path DatasetLayout::change_label(const std::string& stem) const {
  return root_ / "label_change" / (stem + ".pgm");
}

fs::path DatasetLayout::embeddings_dir() const { return root_ / "embeddings"; }

fs::path DatasetLayout::tokens(std::size_t epoch, const std::string& stem) const {
  return embeddings_dir() / epoch_name(epoch) / (stem + ".auwt");
}

fs::path DatasetLayout::text_embedding(const std::string& which) const {
  return embeddings_dir() / "text" / (which + ".auwt");
}

BinaryMask load_epoch_label(const DatasetLayout& layout, std::size_t epoch,
                            const std::string& stem, std::optional<int> croi_class) {
  const fs::path path = layout.label(epoch, stem);
  if (!file_exists(path)) invalid("missing label " + path.string());
  const ImageRaster gray = io::read_pgm(path);
  if (!croi_class) return io::mask_from_gray(gray);
  std::vector<std::uint8_t> bits(gray.data().size());
  std::transform(gray.data().begin(), gray.data().end(), bits.begin(), [&](std::uint8_t v) {
    return static_cast<std::uint8_t>(v == *croi_class);
  });
  return BinaryMask(gray.width(), gray.height(), std::move(bits));
}

BinaryMask load_change_label(const DatasetLayout& layout, const std::string& stem,
                             std::optional<int> croi_class) {
  const fs::path path = layout.change_label(stem);
  if (!croi_class && file_exists(path)) return io::read_mask(path);
  if (!layout.has_epoch_labels()) invalid("missing change label " + path.string());
  return cd::symmetric_difference(load_epoch_label(layout, 0, stem, croi_class),
                                  load_epoch_label(layout, 1, stem, croi_class));
}

std::string EmbeddingManifest::serialize() const {
  std::ostringstream os;
  os << "eis = " << encoder_input_size << "\n"
     << "ps = " << patch_size << "\n"
     << "num_token = " << num_token << "\n"
     << "token_dim = " << token_dim << "\n"
     << "model = \"" << model << "\"\n"
     << "croi = \"" << croi_text << "\"\n"
     << "croui = \"" << croui_text << "\"\n";
  return os.str();
}

EmbeddingManifest EmbeddingManifest::parse(std::string_view text) {
  EmbeddingManifest m;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParseError, "manifest line without '='");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "eis") {
      m.encoder_input_size = to_size(key, value);
    } else if (key == "ps") {
      m.patch_size = to_size(key, value);
    } else if (key == "num_token") {
      m.num_token = to_size(key, value);
    } else if (key == "token_dim") {
      m.token_dim = to_size(key, value);
    } else if (key == "model") {
      m.model = unquote(value);
    } else if (key == "croi") {
      m.croi_text = unquote(value);
    } else if (key == "croui") {
      m.croui_text = unquote(value);
    }
    // Unknown keys (e.g. preprocessing notes) are carried by the exporter
    // for humans and ignored here.
  }
  return m;
}

std::optional<EmbeddingManifest> EmbeddingManifest::load(const fs::path& path) {
  if (!file_exists(path)) return std::nullopt;
  const auto bytes = io::read_file(path);
  return parse(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace auwcd::pipeline
