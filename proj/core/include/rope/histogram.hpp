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

#ifndef ROPE_HISTOGRAM_HPP_
#define ROPE_HISTOGRAM_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "rope/image.hpp"

namespace rope {

/// Normalized density over unordered intensity pairs (i, j), i < j. By
/// convention the value is symmetric and the diagonal carries no mass, so
/// only the upper triangle is stored.
struct CoOccurrenceHistogram {
  int k = 0;
  std::vector<double> upper;  // row-major over i < j

  CoOccurrenceHistogram() = default;
  explicit CoOccurrenceHistogram(int levels)
      : k(levels), upper(upper_size(levels), 0.0) {}

  static std::size_t upper_size(int levels) {
    return static_cast<std::size_t>(levels) * (levels - 1) / 2;
  }

  /// Flat index of pair (i, j) with 0 <= i < j < k.
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * (2 * k - i - 1) / 2 + (j - i - 1);
  }

  double &at(int i, int j) { return upper[index(i, j)]; }
  double at(int i, int j) const { return upper[index(i, j)]; }

  /// Symmetric accessor: value(i, j) = value(j, i), value(i, i) = 0.
  double value(int i, int j) const {
    if (i == j) return 0.0;
    return i < j ? upper[index(i, j)] : upper[index(j, i)];
  }

  double sum() const;
};

/// K-bin intensity density.
struct Histogram1D {
  int k = 0;
  std::vector<double> p;

  Histogram1D() = default;
  explicit Histogram1D(int levels) : k(levels), p(levels, 0.0) {}

  double sum() const;
};

/// Per-intensity weights that steer how a pair's mass is split across the
/// intensities it spans. Never all zero.
struct SignificanceVector {
  std::vector<double> s;

  static SignificanceVector uniform(int levels);
};

/// Monotone nondecreasing intensity lookup table with entries in [0, k).
struct MappingFunction {
  std::vector<std::uint8_t> table;

  static MappingFunction identity(int levels);
  bool is_identity() const;
  bool nondecreasing() const;
};

/// Accumulates |r(q) - r(q')| over every ordered pixel pair (q, q') with q'
/// inside the window centered on q, into the unordered intensity bin
/// (a(q), a(q')), then normalizes the upper triangle to sum 1. Pairs of equal
/// intensity contribute nothing. Window positions outside the frame are
/// skipped. Returns nullopt when the total weight is zero (constant image or
/// constant reflectance), the signal for the identity-mapping path.
std::optional<CoOccurrenceHistogram> build_2d_histogram_rope(
    const GrayImage &a_in, const ReflectanceMap &refl, int window,
    int k = kIntensityLevels);

/// Same accumulation with per-pair weight |a(q) - a(q')| instead of the
/// reflectance difference.
std::optional<CoOccurrenceHistogram> build_2d_histogram_cvc(
    const GrayImage &a_in, int window, int k = kIntensityLevels);

/// Derives the 1D histogram as the marginal of h2: each pair (i, j) hands its
/// mass to the bins k in (i, j], split proportionally to s_k. Pairs whose
/// significance range-sum is zero split uniformly over (i, j]. The result is
/// renormalized to sum 1. Runs in O(K^2) via a difference array.
Histogram1D marginalize(const CoOccurrenceHistogram &h2,
                        const SignificanceVector &s);

/// Literal triple-loop evaluation of the same marginal. Testing oracle; use
/// only for small k.
Histogram1D marginalize_naive(const CoOccurrenceHistogram &h2,
                              const SignificanceVector &s);

/// Runs tau rounds of marginalization: the first with uniform significance,
/// each later round reusing the previous 1D histogram as the significance.
Histogram1D iterate_histogram(const CoOccurrenceHistogram &h2, int tau);

/// Votes each pair's mass into the bin of its larger intensity.
Histogram1D vote_cvc(const CoOccurrenceHistogram &h2);

/// Votes each pair's mass half into each endpoint bin.
Histogram1D vote_cache(const CoOccurrenceHistogram &h2);

/// Plain frequency histogram of the image intensities.
Histogram1D frequency_histogram(const GrayImage &img, int k = kIntensityLevels);

/// Equalization mapping T(v) = clamp(round(k * P(v) - 1), 0, k-1) where P is
/// the cumulative distribution of h1. Monotone by construction.
MappingFunction build_mapping(const Histogram1D &h1);

/// Per-pixel lookup through the mapping table.
GrayImage apply_mapping(const GrayImage &a_in, const MappingFunction &t);

}  // namespace rope

#endif  // ROPE_HISTOGRAM_HPP_
