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
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rope/histogram.hpp"
#include "test_support.hpp"

using namespace rope;

namespace {

bool approx_equal(const std::vector<double> &a, const std::vector<double> &b,
                  double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("upper-triangle storage indexes and mirrors correctly") {
  CoOccurrenceHistogram h2(5);
  CHECK(h2.upper.size() == 10);
  // index must enumerate the triangle row-major without collisions.
  std::vector<bool> seen(10, false);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      const std::size_t idx = h2.index(i, j);
      REQUIRE(idx < seen.size());
      CHECK(!seen[idx]);
      seen[idx] = true;
    }
  }
  h2.at(1, 3) = 0.25;
  CHECK(h2.value(1, 3) == 0.25);
  CHECK(h2.value(3, 1) == 0.25);
  CHECK(h2.value(2, 2) == 0.0);
  CHECK(h2.sum() == 0.25);
}

TEST_CASE("rope 2D histogram: single pair self-normalizes") {
  GrayImage img(2, 1);
  img.data = {3, 5};
  ReflectanceMap refl(2, 1);
  refl.data = {0.0, 0.2};
  const auto h2 = build_2d_histogram_rope(img, refl, 3, 8);
  REQUIRE(h2.has_value());
  CHECK(h2->value(3, 5) == 1.0);
  CHECK(h2->sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rope 2D histogram: constant image signals degenerate") {
  GrayImage img(4, 4, 77);
  ReflectanceMap refl(4, 4, 0.31);
  CHECK(!build_2d_histogram_rope(img, refl, 3).has_value());
}

TEST_CASE("rope 2D histogram: constant reflectance signals degenerate") {
  // Intensities differ but every reflectance difference is zero, so the
  // total weight is zero.
  std::mt19937 rng(5);
  const GrayImage img = testing::random_gray(rng, 6, 6, 64);
  ReflectanceMap refl(6, 6, -0.5);
  CHECK(!build_2d_histogram_rope(img, refl, 5, 64).has_value());
}

TEST_CASE("rope 2D histogram matches the ordered-pair brute force") {
  std::mt19937 rng(6);
  for (int rep = 0; rep < 30; ++rep) {
    const int k = 16;
    const GrayImage img = testing::random_gray(rng, 3, 3, k);
    const ReflectanceMap refl = testing::random_reflectance(rng, 3, 3);
    const auto h2 = build_2d_histogram_rope(img, refl, 3, k);
    const auto dense = testing::brute_force_pairs(
        img, 3, k, [&](int x, int y, int nx, int ny) {
          return std::abs(refl.at(x, y) - refl.at(nx, ny));
        });
    if (!h2.has_value()) {
      // Only possible if every in-window pair had equal intensity.
      double total = 0.0;
      for (const auto &row : dense)
        for (double v : row) total += v;
      CHECK(total == 0.0);
      continue;
    }
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        CHECK(h2->value(i, j) ==
              doctest::Approx(dense[i][j] + dense[j][i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("cvc 2D histogram: single pair and brute force") {
  GrayImage pair_img(2, 1);
  pair_img.data = {0, 4};
  const auto single = build_2d_histogram_cvc(pair_img, 3, 8);
  REQUIRE(single.has_value());
  CHECK(single->value(0, 4) == 1.0);

  std::mt19937 rng(7);
  for (int rep = 0; rep < 30; ++rep) {
    const int k = 16;
    const GrayImage img = testing::random_gray(rng, 3, 3, k);
    const auto h2 = build_2d_histogram_cvc(img, 3, k);
    const auto dense = testing::brute_force_pairs(
        img, 3, k, [&](int x, int y, int nx, int ny) {
          return std::abs(static_cast<double>(img.at(x, y)) - img.at(nx, ny));
        });
    if (!h2.has_value()) continue;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        CHECK(h2->value(i, j) ==
              doctest::Approx(dense[i][j] + dense[j][i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("2D histogram window larger than the image clips to the frame") {
  std::mt19937 rng(8);
  const GrayImage img = testing::random_gray(rng, 4, 3, 32);
  const auto big = build_2d_histogram_cvc(img, 99, 32);
  // Window 99 covers the whole frame from every center; equivalent to the
  // all-pairs histogram.
  CoOccurrenceHistogram expect(32);
  double total = 0.0;
  for (std::size_t q = 0; q < img.data.size(); ++q) {
    for (std::size_t r = 0; r < img.data.size(); ++r) {
      if (q == r || img.data[q] == img.data[r]) continue;
      const double w = std::abs(static_cast<double>(img.data[q]) - img.data[r]);
      expect.at(std::min(img.data[q], img.data[r]),
                std::max(img.data[q], img.data[r])) += w;
      total += w;
    }
  }
  REQUIRE(big.has_value());
  for (std::size_t i = 0; i < expect.upper.size(); ++i) {
    CHECK(big->upper[i] == doctest::Approx(expect.upper[i] / total).epsilon(1e-12));
  }
}

TEST_CASE("2D histogram argument validation") {
  GrayImage img(4, 4, 10);
  ReflectanceMap refl(4, 4, 0.0);
  ReflectanceMap wrong(3, 4, 0.0);
  CHECK_THROWS_AS(build_2d_histogram_rope(img, wrong, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_2d_histogram_cvc(img, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_2d_histogram_cvc(img, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_2d_histogram_cvc(img, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_2d_histogram_cvc(img, 3, 10), std::invalid_argument);
  CHECK_THROWS_AS(build_2d_histogram_cvc(img, 3, 257), std::invalid_argument);
}

TEST_CASE("marginalize: worked K=4 examples") {
  CoOccurrenceHistogram h2(4);
  h2.at(0, 2) = 1.0;

  SUBCASE("uniform significance splits equally") {
    const Histogram1D p = marginalize(h2, SignificanceVector::uniform(4));
    CHECK(approx_equal(p.p, {0.0, 0.5, 0.5, 0.0}, 1e-12));
  }

  SUBCASE("weighted significance splits proportionally") {
    SignificanceVector s{{0.1, 0.75, 0.25, 0.9}};
    const Histogram1D p = marginalize(h2, s);
    CHECK(approx_equal(p.p, {0.0, 0.75, 0.25, 0.0}, 1e-12));
  }

  SUBCASE("zero range-sum falls back to a uniform split") {
    SignificanceVector s{{1.0, 0.0, 0.0, 1.0}};
    const Histogram1D p = marginalize(h2, s);
    CHECK(approx_equal(p.p, {0.0, 0.5, 0.5, 0.0}, 1e-12));
  }
}

TEST_CASE("marginalize agrees with the naive triple loop") {
  std::mt19937 rng(9);
  for (int k : {4, 8, 16, 32}) {
    for (int rep = 0; rep < 50; ++rep) {
      const CoOccurrenceHistogram h2 = testing::random_h2(rng, k);
      const SignificanceVector s =
          testing::random_significance(rng, k, rep % 3 == 0 ? 0.3 : 0.0);
      const Histogram1D fast = marginalize(h2, s);
      const Histogram1D slow = marginalize_naive(h2, s);
      CHECK(approx_equal(fast.p, slow.p, 1e-12));
      CHECK(fast.sum() == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("marginalize conditional mass lands entirely inside (i, j]") {
  // With a single occupied pair the output is exactly the conditional
  // weight table for that pair.
  std::mt19937 rng(10);
  const int k = 8;
  for (int i = 0; i < k - 1; ++i) {
    for (int j = i + 1; j < k; ++j) {
      CoOccurrenceHistogram h2(k);
      h2.at(i, j) = 1.0;
      const SignificanceVector s = testing::random_significance(rng, k);
      const Histogram1D p = marginalize(h2, s);

      double inside = 0.0, range = 0.0;
      for (int t = i + 1; t <= j; ++t) range += s.s[t];
      for (int t = 0; t < k; ++t) {
        if (t > i && t <= j) {
          inside += p.p[t];
          CHECK(p.p[t] == doctest::Approx(s.s[t] / range).epsilon(1e-12));
        } else {
          CHECK(p.p[t] == 0.0);
        }
      }
      CHECK(inside == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("marginalize output is zero outside the support span") {
  std::mt19937 rng(11);
  const int k = 32, lo = 9, hi = 21;
  CoOccurrenceHistogram h2(k);
  std::uniform_int_distribution<int> pick(lo, hi);
  std::uniform_real_distribution<double> mass(0.1, 1.0);
  for (int n = 0; n < 40; ++n) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    h2.at(std::min(i, j), std::max(i, j)) += mass(rng);
  }
  double total = h2.sum();
  REQUIRE(total > 0.0);
  for (double &v : h2.upper) v /= total;

  const Histogram1D p = marginalize(h2, testing::random_significance(rng, k));
  for (int t = 0; t <= lo; ++t) CHECK(p.p[t] == 0.0);
  for (int t = hi + 1; t < k; ++t) CHECK(std::abs(p.p[t]) < 1e-12);
}

TEST_CASE("iterate_histogram: tau=1 equals uniform marginalization") {
  std::mt19937 rng(12);
  const CoOccurrenceHistogram h2 = testing::random_h2(rng, 16);
  const Histogram1D once = iterate_histogram(h2, 1);
  const Histogram1D direct = marginalize(h2, SignificanceVector::uniform(16));
  CHECK(once.p == direct.p);
}

TEST_CASE("iterate_histogram: K=4 worked example is a fixed point") {
  CoOccurrenceHistogram h2(4);
  h2.at(0, 2) = 1.0;
  const Histogram1D p1 = iterate_histogram(h2, 1);
  CHECK(approx_equal(p1.p, {0.0, 0.5, 0.5, 0.0}, 1e-12));
  const Histogram1D p2 = iterate_histogram(h2, 2);
  CHECK(approx_equal(p2.p, {0.0, 0.5, 0.5, 0.0}, 1e-12));
  const Histogram1D p5 = iterate_histogram(h2, 5);
  CHECK(approx_equal(p5.p, {0.0, 0.5, 0.5, 0.0}, 1e-12));
}

TEST_CASE("iteration 1 output is positive wherever later rounds divide") {
  std::mt19937 rng(13);
  for (int k : {8, 16, 32}) {
    for (int rep = 0; rep < 20; ++rep) {
      const CoOccurrenceHistogram h2 = testing::random_h2(rng, k, 0.8);
      const Histogram1D p1 = marginalize(h2, SignificanceVector::uniform(k));
      for (int i = 0; i < k - 1; ++i) {
        for (int j = i + 1; j < k; ++j) {
          if (h2.at(i, j) == 0.0) continue;
          double range = 0.0;
          for (int t = i + 1; t <= j; ++t) {
            CHECK(p1.p[t] > 0.0);
            range += p1.p[t];
          }
          CHECK(range > 0.0);  // tau=2 denominators are positive
        }
      }
    }
  }
}

TEST_CASE("iterate_histogram rejects tau < 1") {
  CoOccurrenceHistogram h2(4);
  h2.at(0, 1) = 1.0;
  CHECK_THROWS_AS(iterate_histogram(h2, 0), std::invalid_argument);
}

TEST_CASE("voting schemes: Fig. 1 single-pair semantics") {
  CoOccurrenceHistogram h2(4);
  h2.at(0, 2) = 1.0;
  const Histogram1D cvc = vote_cvc(h2);
  CHECK(cvc.p == std::vector<double>{0.0, 0.0, 1.0, 0.0});
  const Histogram1D cache = vote_cache(h2);
  CHECK(cache.p == std::vector<double>{0.5, 0.0, 0.5, 0.0});
}

TEST_CASE("voting schemes normalize and differ from marginalization") {
  std::mt19937 rng(14);
  const CoOccurrenceHistogram h2 = testing::random_h2(rng, 16, 0.2);
  const Histogram1D cvc = vote_cvc(h2);
  const Histogram1D cache = vote_cache(h2);
  const Histogram1D marg = marginalize(h2, SignificanceVector::uniform(16));
  CHECK(cvc.sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cache.sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(!approx_equal(cvc.p, marg.p, 1e-9));
  CHECK(!approx_equal(cache.p, marg.p, 1e-9));
}

TEST_CASE("on adjacent-pair support vote_cvc equals marginalize") {
  std::mt19937 rng(15);
  const int k = 16;
  CoOccurrenceHistogram h2(k);
  std::uniform_real_distribution<double> mass(0.1, 1.0);
  for (int i = 0; i + 1 < k; i += 2) h2.at(i, i + 1) = mass(rng);
  double total = h2.sum();
  for (double &v : h2.upper) v /= total;

  const Histogram1D cvc = vote_cvc(h2);
  const Histogram1D marg = marginalize(h2, testing::random_significance(rng, k));
  CHECK(approx_equal(cvc.p, marg.p, 1e-12));
}

TEST_CASE("frequency_histogram counts intensities") {
  GrayImage img(4, 1);
  img.data = {0, 2, 2, 3};
  const Histogram1D h = frequency_histogram(img, 4);
  CHECK(h.p == std::vector<double>{0.25, 0.0, 0.5, 0.25});
  CHECK_THROWS_AS(frequency_histogram(GrayImage{}, 4), std::invalid_argument);
}

TEST_CASE("build_mapping: worked K=4 examples") {
  SUBCASE("uniform density maps to identity") {
    Histogram1D h1(4);
    h1.p = {0.25, 0.25, 0.25, 0.25};
    const MappingFunction t = build_mapping(h1);
    CHECK(t.table == std::vector<std::uint8_t>{0, 1, 2, 3});
    CHECK(t.is_identity());
  }

  SUBCASE("all mass at zero clamps high") {
    Histogram1D h1(4);
    h1.p = {1.0, 0.0, 0.0, 0.0};
    const MappingFunction t = build_mapping(h1);
    CHECK(t.table == std::vector<std::uint8_t>{3, 3, 3, 3});
  }

  SUBCASE("leading zero mass clamps the -1 code to 0") {
    Histogram1D h1(4);
    h1.p = {0.0, 0.5, 0.0, 0.5};
    const MappingFunction t = build_mapping(h1);
    CHECK(t.table == std::vector<std::uint8_t>{0, 1, 1, 3});
  }
}

TEST_CASE("build_mapping output is always nondecreasing") {
  std::mt19937 rng(16);
  std::uniform_real_distribution<double> mass(0.0, 1.0);
  for (int k : {4, 16, 256}) {
    for (int rep = 0; rep < 200; ++rep) {
      Histogram1D h1(k);
      double total = 0.0;
      for (double &v : h1.p) {
        v = mass(rng) < 0.4 ? 0.0 : mass(rng);
        total += v;
      }
      if (total == 0.0) {
        h1.p[0] = 1.0;
        total = 1.0;
      }
      for (double &v : h1.p) v /= total;
      const MappingFunction t = build_mapping(h1);
      CHECK(t.nondecreasing());
      CHECK(*std::max_element(t.table.begin(), t.table.end()) <= k - 1);
    }
  }
}

TEST_CASE("apply_mapping is a pure pixelwise lookup") {
  std::mt19937 rng(17);
  const GrayImage img = testing::random_gray(rng, 9, 6, 32);

  SUBCASE("identity table returns the input") {
    CHECK(apply_mapping(img, MappingFunction::identity(32)) == img);
  }

  SUBCASE("constant table floods the output") {
    MappingFunction t;
    t.table.assign(32, 7);
    const GrayImage out = apply_mapping(img, t);
    CHECK(std::all_of(out.data.begin(), out.data.end(),
                      [](std::uint8_t v) { return v == 7; }));
  }

  SUBCASE("random monotone table equals the oracle loop") {
    std::uniform_int_distribution<int> step(0, 2);
    MappingFunction t;
    t.table.resize(32);
    int code = 0;
    for (auto &v : t.table) {
      code = std::min(31, code + step(rng));
      v = static_cast<std::uint8_t>(code);
    }
    const GrayImage out = apply_mapping(img, t);
    for (std::size_t q = 0; q < img.data.size(); ++q) {
      CHECK(out.data[q] == t.table[img.data[q]]);
    }
  }

  SUBCASE("intensities beyond the table throw") {
    CHECK_THROWS_AS(apply_mapping(img, MappingFunction::identity(16)),
                    std::invalid_argument);
  }
}
