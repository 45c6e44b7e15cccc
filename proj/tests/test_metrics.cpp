// Copyright 2026 The ROPE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "rope/metrics.hpp"
#include "test_support.hpp"

using namespace rope;

namespace {

// All-pairs PD, straight from the definition.
double pd_literal(const GrayImage &img) {
  double acc = 0.0;
  for (std::uint8_t a : img.data) {
    for (std::uint8_t b : img.data) {
      acc += std::abs(static_cast<int>(a) - static_cast<int>(b));
    }
  }
  const double n = static_cast<double>(img.pixel_count());
  return acc / (n * n);
}

// All-pixels LOE, straight from the definition.
double loe_literal(const GrayImage &in, const GrayImage &out) {
  const std::size_t m = in.pixel_count();
  std::uint64_t bad = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      bad += (in.data[a] >= in.data[b]) != (out.data[a] >= out.data[b]);
    }
  }
  return static_cast<double>(bad) / static_cast<double>(m);
}

GrayImage half_half(std::uint8_t lo, std::uint8_t hi) {
  GrayImage img(8, 8);
  for (std::size_t q = 0; q < img.data.size(); ++q) {
    img.data[q] = q < img.data.size() / 2 ? lo : hi;
  }
  return img;
}

}  // namespace

TEST_CASE("discrete entropy oracles") {
  CHECK(discrete_entropy(half_half(0, 255)) == 1.0);

  GrayImage uniform(16, 16);
  for (std::size_t q = 0; q < uniform.data.size(); ++q) {
    uniform.data[q] = static_cast<std::uint8_t>(q);
  }
  CHECK(discrete_entropy(uniform) == 8.0);

  CHECK(discrete_entropy(GrayImage(5, 5, 42)) == 0.0);
}

TEST_CASE("discrete entropy stays within its bounds") {
  std::mt19937 rng(41);
  for (int k : {4, 64, 256}) {
    const GrayImage img = testing::random_gray(rng, 20, 20, k);
    const double de = discrete_entropy(img, k);
    CHECK(de >= 0.0);
    CHECK(de <= std::log2(static_cast<double>(k)) + 1e-12);
  }
  GrayImage img(2, 2, 200);
  CHECK_THROWS_AS(discrete_entropy(img, 64), std::invalid_argument);
}

TEST_CASE("eme single-tile oracle") {
  GrayImage tile(8, 8, 50);
  tile.at(3, 4) = 200;
  CHECK(std::abs(eme(tile) - 20.0 * std::log10(4.0)) < 1e-9);
  CHECK(eme(tile) == doctest::Approx(12.041199826559248).epsilon(1e-12));
}

TEST_CASE("eme averages over tiles") {
  GrayImage img(16, 8, 50);
  img.at(1, 1) = 200;  // left tile: 200/50
  for (int y = 0; y < 8; ++y) {
    for (int x = 8; x < 16; ++x) img.at(x, y) = 100;
  }
  img.at(9, 2) = 200;  // right tile: 200/100
  CHECK(eme(img) == doctest::Approx(9.030899869919436).epsilon(1e-12));
}

TEST_CASE("eme floors zero codes instead of diverging") {
  GrayImage img(8, 8, 0);
  img.at(0, 0) = 100;
  // 20 log10(100 / 1e-4) = 120 dB exactly.
  CHECK(eme(img) == doctest::Approx(120.0).epsilon(1e-12));
  CHECK(std::isfinite(eme(GrayImage(8, 8, 0))));
  CHECK(eme(GrayImage(8, 8, 0)) == 0.0);
}

TEST_CASE("eme includes ragged edge tiles") {
  // 10x10 with block 8 makes four tiles; only the 2x2 corner has contrast.
  GrayImage img(10, 10, 100);
  img.at(9, 9) = 200;
  const double corner = 20.0 * std::log10(2.0);
  CHECK(eme(img) == doctest::Approx(corner / 4.0).epsilon(1e-12));
  CHECK(eme(GrayImage(3, 3, 9)) == 0.0);
  CHECK_THROWS_AS(eme(img, 1), std::invalid_argument);
}

TEST_CASE("pixel distance oracles") {
  CHECK(pixel_distance(half_half(0, 255)) == 127.5);

  GrayImage three(16, 1);
  for (int q = 0; q < 4; ++q) three.data[q] = 0;
  for (int q = 4; q < 12; ++q) three.data[q] = 10;
  for (int q = 12; q < 16; ++q) three.data[q] = 20;
  CHECK(pixel_distance(three) == 7.5);

  CHECK(pixel_distance(GrayImage(7, 3, 99)) == 0.0);
}

TEST_CASE("pixel distance equals the literal all-pairs loop") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> side(1, 32);
  for (int rep = 0; rep < 50; ++rep) {
    const GrayImage img = testing::random_gray(rng, side(rng), side(rng));
    CHECK(pixel_distance(img) == pd_literal(img));
  }
}

TEST_CASE("loe is zero for identical images and strict monotone remaps") {
  std::mt19937 rng(43);
  const GrayImage img = testing::random_gray(rng, 30, 20, 120);
  CHECK(loe(img, img) == 0.0);

  MappingFunction t;
  t.table.resize(120);
  for (int v = 0; v < 120; ++v) {
    t.table[v] = static_cast<std::uint8_t>(2 * v + 5);  // strictly increasing
  }
  CHECK(loe(img, apply_mapping(img, t)) == 0.0);
}

TEST_CASE("loe two-pixel worked example") {
  GrayImage in(2, 1), out(2, 1);
  in.data = {10, 20};
  out.data = {5, 5};
  CHECK(loe(in, out, 2) == 0.5);
  CHECK(loe(in, out) == 0.5);  // default grid covers both pixels
  CHECK(loe(in, out, 2) > 0.0);
}

TEST_CASE("loe with a covering grid equals the literal loop") {
  std::mt19937 rng(44);
  for (int rep = 0; rep < 20; ++rep) {
    const GrayImage in = testing::random_gray(rng, 5, 4);
    GrayImage out = testing::random_gray(rng, 5, 4);
    CHECK(loe(in, out, 64) == loe_literal(in, out));
  }
}

TEST_CASE("loe subsampling only sees lattice pixels") {
  // grid=2 on 4x4 samples rows/cols {0, 2}; corrupting only odd coordinates
  // must be invisible.
  std::mt19937 rng(45);
  const GrayImage in = testing::random_gray(rng, 4, 4);
  GrayImage out = in;
  for (int y : {1, 3}) {
    for (int x : {1, 3}) out.at(x, y) = static_cast<std::uint8_t>(255 - out.at(x, y));
  }
  CHECK(loe(in, out, 2) == 0.0);
  CHECK(loe(in, out, 4) >= 0.0);
}

TEST_CASE("loe argument validation") {
  GrayImage a(4, 4), b(4, 5);
  CHECK_THROWS_AS(loe(a, b), std::invalid_argument);
  CHECK_THROWS_AS(loe(a, a, 1), std::invalid_argument);
}

TEST_CASE("compute_metrics aggregates the four metrics") {
  std::mt19937 rng(46);
  const GrayImage ref = testing::random_gray(rng, 24, 16);
  const GrayImage enh = testing::random_gray(rng, 24, 16);
  const MetricsParams params;
  const MetricsReport r = compute_metrics(ref, enh, params);
  CHECK(r.de == discrete_entropy(enh));
  CHECK(r.eme == eme(enh, params.eme_block));
  CHECK(r.pd == pixel_distance(enh));
  CHECK(r.loe == loe(ref, enh, params.loe_grid));

  const MetricsReport same = compute_metrics(ref, ref);
  CHECK(same.loe == 0.0);
}

TEST_CASE("color metrics run on the grayscale channel") {
  std::mt19937 rng(47);
  const ColorImage ref = testing::random_color(rng, 12, 9);
  const ColorImage enh = testing::random_color(rng, 12, 9);
  const MetricsReport via_color = compute_metrics(ref, enh);
  const MetricsReport via_gray =
      compute_metrics(to_grayscale(ref), to_grayscale(enh));
  CHECK(via_color.de == via_gray.de);
  CHECK(via_color.eme == via_gray.eme);
  CHECK(via_color.pd == via_gray.pd);
  CHECK(via_color.loe == via_gray.loe);
}
