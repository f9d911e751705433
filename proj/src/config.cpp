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

#include "auwcd/config.hpp"

#include <charconv>
#include <sstream>

#include "auwcd/error.hpp"
#include "auwcd/io.hpp"

namespace auwcd::pipeline {

namespace {

[[noreturn]] void bad(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::kInvalidInput,
              "bad value '" + std::string(value) + "' for key '" + std::string(key) + "'");
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

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad(key, v);
  return out;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view v) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad(key, v);
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad(key, v);
}

// Shortest text that reads back as the same double.
std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::kOracle: return "oracle";
    case BackendKind::kFile: return "file";
    case BackendKind::kNoisy: return "noisy";
  }
  return "?";
}

std::string_view to_string(EncoderKind kind) {
  return kind == EncoderKind::kFiles ? "files" : "synthetic";
}

void PipelineConfig::set(std::string_view key, std::string_view raw) {
  const std::string value = unquote(raw);
  const std::string_view v = value;
  if (key == "croi") {
    croi_text = value;
  } else if (key == "croui") {
    croui_text = value;
  } else if (key == "threshold") {
    threshold = to_double(key, v);
  } else if (key == "backend") {
    if (v == "oracle") {
      backend = BackendKind::kOracle;
    } else if (v == "file") {
      backend = BackendKind::kFile;
    } else if (v == "noisy") {
      backend = BackendKind::kNoisy;
    } else {
      bad(key, v);
    }
  } else if (key == "eis") {
    encoder_input_size = to_int<std::size_t>(key, v);
  } else if (key == "ps") {
    patch_size = to_int<std::size_t>(key, v);
  } else if (key == "swap_axes") {
    swap_axes = to_bool(key, v);
  } else if (key == "center_offset") {
    center_offset = to_bool(key, v);
  } else if (key == "seed") {
    seed = to_int<std::uint64_t>(key, v);
  } else if (key == "workers") {
    workers = to_int<std::size_t>(key, v);
  } else if (key == "flip_prob") {
    flip_prob = to_double(key, v);
  } else if (key == "encoder") {
    if (v == "files") {
      encoder = EncoderKind::kFiles;
    } else if (v == "synthetic") {
      encoder = EncoderKind::kSynthetic;
    } else {
      bad(key, v);
    }
  } else if (key == "embedding_noise") {
    embedding_noise = to_double(key, v);
  } else if (key == "masks") {
    masks = value;
  } else if (key == "connectivity") {
    const int c = to_int<int>(key, v);
    if (c == 4) {
      connectivity = segment::Connectivity::kFour;
    } else if (c == 8) {
      connectivity = segment::Connectivity::kEight;
    } else {
      bad(key, v);
    }
  } else if (key == "croi_class") {
    croi_class = to_int<int>(key, v);
  } else if (key == "macro") {
    macro = to_bool(key, v);
  } else if (key == "dump_intermediates") {
    dump_intermediates = to_bool(key, v);
  } else {
    throw Error(ErrorCode::kInvalidInput, "unknown config key '" + std::string(key) + "'");
  }
}

void PipelineConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "threshold must lie in [0,1]");
  }
  if (!(flip_prob >= 0.0 && flip_prob <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "flip_prob must lie in [0,1]");
  }
  if (!(embedding_noise >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "embedding_noise must be non-negative");
  }
  if (workers == 0) throw Error(ErrorCode::kInvalidInput, "workers must be positive");
  if (croi_class && (*croi_class < 0 || *croi_class > 255)) {
    throw Error(ErrorCode::kInvalidInput, "croi_class must lie in [0,255]");
  }
  (void)geometry();
  if (backend == BackendKind::kFile && masks.empty()) {
    throw Error(ErrorCode::kInvalidInput, "file backend needs a masks directory");
  }
}

std::string PipelineConfig::echo() const {
  std::ostringstream os;
  os << "croi = \"" << croi_text << "\"\n"
     << "croui = \"" << croui_text << "\"\n"
     << "threshold = " << fmt_double(threshold) << "\n"
     << "backend = " << to_string(backend) << "\n"
     << "eis = " << encoder_input_size << "\n"
     << "ps = " << patch_size << "\n"
     << "swap_axes = " << (swap_axes ? "true" : "false") << "\n"
     << "center_offset = " << (center_offset ? "true" : "false") << "\n"
     << "seed = " << seed << "\n"
     << "flip_prob = " << fmt_double(flip_prob) << "\n"
     << "encoder = " << to_string(encoder) << "\n"
     << "embedding_noise = " << fmt_double(embedding_noise) << "\n"
     << "connectivity = " << static_cast<int>(connectivity) << "\n"
     << "macro = " << (macro ? "true" : "false") << "\n";
  if (croi_class) os << "croi_class = " << *croi_class << "\n";
  return os.str();
}

PipelineConfig parse_config(std::string_view text, PipelineConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidInput,
                  "config line " + std::to_string(line_no) + " has no '='");
    }
    base.set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
  return base;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
  const auto bytes = io::read_file(path);
  return parse_config(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                       bytes.size()),
                      std::move(base));
}

}  // namespace auwcd::pipeline
