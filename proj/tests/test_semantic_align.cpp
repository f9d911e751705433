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

#include <cmath>
#include <random>
#include <set>

#include "auwcd/semantic_align.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace auwcd;
using namespace auwcd::align;
using testing::code_of;

namespace {

// Tokens whose projection onto e0 is given by `scores`, after a class token.
TokenEmbeddings tokens_with_scores(const std::vector<float>& scores, std::size_t dim = 3,
                                   bool class_token = true) {
  TokenEmbeddings t;
  t.token_dim = dim;
  t.includes_class_token = class_token;
  t.num_token = scores.size() + (class_token ? 1 : 0);
  if (class_token) {
    for (std::size_t d = 0; d < dim; ++d) t.data.push_back(d == 0 ? 100.0f : 0.0f);
  }
  for (std::size_t k = 0; k < scores.size(); ++k) {
    for (std::size_t d = 0; d < dim; ++d) {
      t.data.push_back(d == 0 ? scores[k] : static_cast<float>(k + d));
    }
  }
  return t;
}

TextEmbedding text(std::vector<float> v) { return TextEmbedding{std::move(v)}; }

ScalarMap square(std::vector<double> v) {
  std::size_t side = 0;
  while (side * side < v.size()) ++side;
  return ScalarMap(side, side, std::move(v));
}

}  // namespace

TEST_CASE("patch grids follow encoder and patch sizes") {
  CHECK(expected_token_count(PatchGeometry(224, 32)) == 50);
  CHECK(expected_token_count(PatchGeometry(224, 14)) == 257);
  CHECK(expected_token_count(PatchGeometry(224, 224)) == 2);
  CHECK(PatchGeometry(224, 16).grid_side() == 14);
  CHECK(code_of([] { PatchGeometry(224, 15); }) == ErrorCode::kInvalidInput);
  CHECK(code_of([] { PatchGeometry(224, 0); }) == ErrorCode::kInvalidInput);
}

TEST_CASE("token tensors are checked against the patch grid") {
  const PatchGeometry g(224, 112);  // 2x2 grid
  const auto with_cls = io::Tensor::from_f32({1, 5, 2}, std::vector<float>(10, 1.0f));
  CHECK(TokenEmbeddings::from_tensor(with_cls, g).includes_class_token);
  const auto without = io::Tensor::from_f32({1, 4, 2}, std::vector<float>(8, 1.0f));
  CHECK_FALSE(TokenEmbeddings::from_tensor(without, g).includes_class_token);
  const auto wrong = io::Tensor::from_f32({1, 6, 2}, std::vector<float>(12, 1.0f));
  CHECK(code_of([&] { TokenEmbeddings::from_tensor(wrong, g); }) == ErrorCode::kShapeMismatch);
  const auto flat = io::Tensor::from_f32({5, 2}, std::vector<float>(10, 1.0f));
  CHECK(code_of([&] { TokenEmbeddings::from_tensor(flat, g); }) == ErrorCode::kShapeMismatch);
  const auto tok = TokenEmbeddings::from_tensor(with_cls, g);
  CHECK(TokenEmbeddings::from_tensor(tok.to_tensor(), g).data == tok.data);
}

TEST_CASE("similarity map drops the class token and normalizes") {
  const PatchGeometry g(224, 112);
  const auto tok = tokens_with_scores({4, 3, 2, 4});
  const ScalarMap m = compute_similarity_map(tok, text({1, 0, 0}), text({0, 0, 0}), g);
  REQUIRE(m.width() == 2);
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(0, 1) == 0.5);
  CHECK(m.at(1, 0) == 0.0);
  CHECK(m.at(1, 1) == 1.0);
}

TEST_CASE("similarity map uses the CRoI minus CRoUI direction") {
  const PatchGeometry g(224, 112);
  TokenEmbeddings tok;
  tok.num_token = 4;
  tok.token_dim = 2;
  tok.data = {1, 0, 0, 1, 1, 1, 0, 0};
  const ScalarMap m = compute_similarity_map(tok, text({2, 1}), text({1, 1}), g);
  CHECK(m.data()[0] == 1.0);
  CHECK(m.data()[1] == 0.0);
  CHECK(m.data()[2] == 1.0);
  CHECK(m.data()[3] == 0.0);
}

TEST_CASE("identical CRoI and CRoUI texts give an all-zero map") {
  const PatchGeometry g(224, 112);
  const auto tok = tokens_with_scores({4, 3, 2, 4});
  const ScalarMap m = compute_similarity_map(tok, text({1, 2, 3}), text({1, 2, 3}), g);
  for (double v : m.data()) CHECK(v == 0.0);
}

TEST_CASE("similarity map ignores positive scaling of the direction") {
  std::mt19937_64 rng(4);
  std::normal_distribution<float> n;
  const PatchGeometry g(224, 32);
  for (int trial = 0; trial < 50; ++trial) {
    TokenEmbeddings tok;
    tok.num_token = 50;
    tok.token_dim = 6;
    tok.includes_class_token = true;
    tok.data.resize(50 * 6);
    for (auto& x : tok.data) x = n(rng);
    std::vector<float> a(6), b(6), a2(6), b2(6);
    for (int d = 0; d < 6; ++d) {
      a[d] = n(rng);
      b[d] = n(rng);
      a2[d] = 2 * a[d];
      b2[d] = 2 * b[d];
    }
    const auto m1 = compute_similarity_map(tok, text(a), text(b), g);
    const auto m2 = compute_similarity_map(tok, text(a2), text(b2), g);
    CHECK(m1 == m2);
  }
}

TEST_CASE("similarity map rejects dimension mismatches") {
  const PatchGeometry g(224, 112);
  const auto tok = tokens_with_scores({4, 3, 2, 4});
  CHECK(code_of([&] { compute_similarity_map(tok, text({1, 0}), text({0, 0, 0}), g); }) ==
        ErrorCode::kShapeMismatch);
  CHECK(code_of([&] {
          compute_similarity_map(tok, text({1, 0, 0}), text({0, 0, 0}), PatchGeometry(224, 32));
        }) == ErrorCode::kShapeMismatch);
}

TEST_CASE("point counts follow the threshold and the half-grid cap") {
  const ScalarMap m = square({0.9, 0.8, 0.7, 0.2, 0.1, 0, 0, 0, 0});
  CHECK(select_point_counts(m, 0.5) == PointCounts{3, 3});
  CHECK(select_point_counts(ScalarMap(4, 4, 0.9), 0.5) == PointCounts{8, 8});
  CHECK(select_point_counts(ScalarMap(4, 4, 0.3), 0.5) == PointCounts{0, 0});
  // Strictly greater than the threshold.
  CHECK(select_point_counts(square({0.5, 0.5, 0.6, 0}), 0.5) == PointCounts{1, 1});
  CHECK(code_of([] { select_point_counts(ScalarMap(2, 3), 0.5); }) ==
        ErrorCode::kShapeMismatch);
  CHECK(code_of([] { select_point_counts(ScalarMap(2, 2), 1.5); }) ==
        ErrorCode::kInvalidInput);
}

TEST_CASE("a 2x2 map yields one positive and one negative") {
  const ScalarMap m = square({0.9, 0.2, 0.1, 0.4});
  const PromptSet s = generate_prompt_points(m, 0.5, 224, 224);
  REQUIRE(s.positives.size() == 1);
  REQUIRE(s.negatives.size() == 1);
  CHECK(s.positives[0].source_cell == GridCell{0, 0});
  CHECK(s.positives[0].x == 0.0);
  CHECK(s.positives[0].y == 0.0);
  CHECK(s.negatives[0].source_cell == GridCell{1, 0});
  CHECK(s.negatives[0].x == 0.0);
  CHECK(s.negatives[0].y == 112.0);
  CHECK(s.threshold_used == 0.5);
}

TEST_CASE("cell (7,7) of a 14x14 grid on a 224 image maps to (112,112)") {
  const auto [x, y] = cell_to_image({7, 7}, 14, 224, 224);
  CHECK(x == 112.0);
  CHECK(y == 112.0);
  const auto [cx, cy] = cell_to_image({7, 7}, 14, 224, 224, {false, true});
  CHECK(cx == 120.0);
  CHECK(cy == 120.0);
}

TEST_CASE("non-square images pair the column with the height unless swapped") {
  const auto [x, y] = cell_to_image({1, 2}, 4, 400, 200);
  CHECK(x == 100.0);  // 200/4 * 2
  CHECK(y == 100.0);  // 400/4 * 1
  const auto [sx, sy] = cell_to_image({1, 2}, 4, 400, 200, {true, false});
  CHECK(sx == 200.0);
  CHECK(sy == 50.0);
}

TEST_CASE("ties break towards the lower cell index") {
  const ScalarMap m = square({0.7, 0.9, 0.9, 0.0, 0.0, 0.9, 0.1, 0.0, 0.2});
  const PromptSet s = generate_prompt_points(m, 0.5, 9, 9);
  REQUIRE(s.positives.size() == 4);
  CHECK(s.positives[0].source_cell == GridCell{0, 1});
  CHECK(s.positives[1].source_cell == GridCell{0, 2});
  CHECK(s.positives[2].source_cell == GridCell{1, 2});
  CHECK(s.positives[3].source_cell == GridCell{0, 0});
  REQUIRE(s.negatives.size() == 4);
  CHECK(s.negatives[0].source_cell == GridCell{1, 0});
  CHECK(s.negatives[1].source_cell == GridCell{1, 1});
  CHECK(s.negatives[2].source_cell == GridCell{2, 1});
  CHECK(s.negatives[3].source_cell == GridCell{2, 0});
}

TEST_CASE("selection matches a brute-force ranking on random maps") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> levels(0, 10);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t side = 1 + trial % 8;
    std::vector<double> v(side * side);
    const bool coarse = trial % 2 == 0;
    for (auto& x : v) x = coarse ? levels(rng) / 10.0 : u(rng);
    const double t = coarse ? levels(rng) / 10.0 : u(rng);
    const auto expect = oracle::select_cells(v, t);
    const PromptSet s = generate_prompt_points(ScalarMap(side, side, v), t, 64, 64);
    REQUIRE(s.positives.size() == expect.num_p);
    REQUIRE(s.negatives.size() == expect.negatives.size());
    for (std::size_t i = 0; i < expect.num_p; ++i) {
      const auto& p = s.positives[i];
      CHECK(p.source_cell.row * side + p.source_cell.col == expect.positives[i]);
      CHECK(p.polarity == Polarity::kPositive);
      CHECK(p.score == v[expect.positives[i]]);
    }
    for (std::size_t i = 0; i < expect.negatives.size(); ++i) {
      const auto& p = s.negatives[i];
      CHECK(p.source_cell.row * side + p.source_cell.col == expect.negatives[i]);
      CHECK(p.polarity == Polarity::kNegative);
    }
  }
}

TEST_CASE("prompt coordinates stay inside square images") {
  for (std::size_t ps : {14u, 16u, 32u}) {
    const PatchGeometry g(224, ps);
    const std::size_t side = g.grid_side();
    for (bool center : {false, true}) {
      for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
          const auto [x, y] = cell_to_image({r, c}, side, 224, 224, {false, center});
          CHECK(x >= 0.0);
          CHECK(x < 224.0);
          CHECK(y >= 0.0);
          CHECK(y < 224.0);
          CHECK(x == static_cast<double>(224 / side) * (c + (center ? 0.5 : 0.0)));
        }
      }
    }
  }
}

TEST_CASE("similarity map ignores a constant shift of every token") {
  std::mt19937_64 rng(6);
  std::normal_distribution<float> n;
  const PatchGeometry g(224, 32);
  for (int trial = 0; trial < 50; ++trial) {
    TokenEmbeddings tok;
    tok.num_token = 50;
    tok.token_dim = 5;
    tok.includes_class_token = true;
    tok.data.resize(50 * 5);
    for (auto& x : tok.data) x = n(rng);
    std::vector<float> a(5), b(5), shift(5);
    for (int d = 0; d < 5; ++d) {
      a[d] = n(rng);
      b[d] = n(rng);
      shift[d] = 3 * n(rng);
    }
    TokenEmbeddings moved = tok;
    for (std::size_t i = 0; i < moved.data.size(); ++i) moved.data[i] += shift[i % 5];
    const auto m1 = compute_similarity_map(tok, text(a), text(b), g);
    const auto m2 = compute_similarity_map(moved, text(a), text(b), g);
    for (std::size_t i = 0; i < m1.size(); ++i) CHECK(std::abs(m1.data()[i] - m2.data()[i]) <= 1e-6);
  }
}

TEST_CASE("hand-computed dot products give the expected 2x2 map") {
  // croi - croui = [1, 0, -1]; raw scores [1, 0, -1, 1].
  TokenEmbeddings tok;
  tok.num_token = 4;
  tok.token_dim = 3;
  tok.data = {1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0};
  const ScalarMap m =
      compute_similarity_map(tok, text({1, 0, 0}), text({0, 0, 1}), PatchGeometry(224, 112));
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(0, 1) == 0.5);
  CHECK(m.at(1, 0) == 0.0);
  CHECK(m.at(1, 1) == 1.0);

  TokenEmbeddings doubled = tok;
  for (auto& x : doubled.data) x *= 2;
  CHECK(compute_similarity_map(doubled, text({1, 0, 0}), text({0, 0, 1}),
                               PatchGeometry(224, 112)) == m);
}

TEST_CASE("three cells above the threshold on a 4x4 map") {
  std::vector<double> v(16, 0.2);
  v[2] = 0.9;
  v[7] = 0.51;
  v[13] = 0.6;
  v[5] = 0.5;  // equal to t, not above
  CHECK(select_point_counts(ScalarMap(4, 4, v), 0.5) == PointCounts{3, 3});
  std::vector<double> many(16, 0.9);
  for (std::size_t i = 0; i < 4; ++i) many[i] = 0.1;
  CHECK(select_point_counts(ScalarMap(4, 4, many), 0.5) == PointCounts{8, 8});
}

TEST_CASE("the two strongest of four cells become positives") {
  const ScalarMap m = square({0.9, 0.1, 0.2, 0.8});
  const PromptSet s = generate_prompt_points(m, 0.5, 224, 224);
  REQUIRE(s.positives.size() == 2);
  REQUIRE(s.negatives.size() == 2);
  CHECK(s.positives[0].source_cell == GridCell{0, 0});
  CHECK(s.positives[1].source_cell == GridCell{1, 1});
  CHECK(s.positives[0].x == 0.0);
  CHECK(s.positives[0].y == 0.0);
  CHECK(s.positives[1].x == 112.0);
  CHECK(s.positives[1].y == 112.0);
  std::set<std::pair<std::size_t, std::size_t>> neg;
  for (const auto& p : s.negatives) neg.insert({p.source_cell.row, p.source_cell.col});
  CHECK(neg == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
}

TEST_CASE("a degenerate map yields no prompts") {
  const ScalarMap flat = reshape_to_map(minmax_normalize(std::vector<double>(16, 3.0)), 4);
  CHECK(generate_prompt_points(flat, 0.1, 64, 64).empty());
}

TEST_CASE("equal top cells resolve to the lower index") {
  const PromptSet s = generate_prompt_points(square({0.1, 0.9, 0.2, 0.9}), 0.5, 8, 8);
  REQUIRE(s.positives.size() == 2);
  CHECK(s.positives[0].source_cell == GridCell{0, 1});
  CHECK(s.positives[1].source_cell == GridCell{1, 1});
  CHECK(s.negatives[0].source_cell == GridCell{0, 0});
  CHECK(s.negatives[1].source_cell == GridCell{1, 0});
}
