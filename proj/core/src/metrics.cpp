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

#include "rope/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rope {

namespace {

constexpr double kEmeEpsilon = 1e-4;  // floor for zero codes on [0, 255]

std::vector<std::uint64_t> intensity_counts(const GrayImage &img, int k) {
  if (k < 2 || k > kIntensityLevels) {
    throw std::invalid_argument("bin count must be in [2, 256]");
  }
  std::vector<std::uint64_t> counts(k, 0);
  for (std::uint8_t v : img.data) {
    if (v >= k) {
      throw std::invalid_argument("intensity code out of range for bin count");
    }
    ++counts[v];
  }
  return counts;
}

// Distinct lattice coordinates floor(i * n / grid); exhaustive when grid >= n.
std::vector<int> lattice(int n, int grid) {
  std::vector<int> idx;
  idx.reserve(std::min(n, grid));
  int last = -1;
  for (int i = 0; i < grid; ++i) {
    const int v = static_cast<int>(static_cast<std::int64_t>(i) * n / grid);
    if (v != last) {
      idx.push_back(v);
      last = v;
    }
  }
  return idx;
}

}  // namespace

double discrete_entropy(const GrayImage &img, int k) {
  const auto counts = intensity_counts(img, k);
  const double n = static_cast<double>(img.pixel_count());
  if (n == 0.0) return 0.0;
  double bits = 0.0;
  for (std::uint64_t c : counts) {
    if (c == 0) continue;
    const double f = c / n;
    bits -= f * std::log2(f);
  }
  return bits;
}

double eme(const GrayImage &img, int block) {
  if (block < 2) {
    throw std::invalid_argument("eme: block must be >= 2");
  }
  double acc = 0.0;
  int tiles = 0;
  for (int y0 = 0; y0 < img.height; y0 += block) {
    const int y1 = std::min(img.height, y0 + block);
    for (int x0 = 0; x0 < img.width; x0 += block) {
      const int x1 = std::min(img.width, x0 + block);
      std::uint8_t lo = 255, hi = 0;
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
          const std::uint8_t v = img.at(x, y);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      acc += 20.0 * std::log10(std::max<double>(hi, kEmeEpsilon) /
                               std::max<double>(lo, kEmeEpsilon));
      ++tiles;
    }
  }
  return tiles > 0 ? acc / tiles : 0.0;
}

double pixel_distance(const GrayImage &img, int k) {
  const auto counts = intensity_counts(img, k);
  const double n = static_cast<double>(img.pixel_count());
  if (n == 0.0) return 0.0;
  // Integer pair sum keeps the histogram route bit-equal to the literal
  // all-pairs loop.
  std::uint64_t pair_sum = 0;
  for (int i = 0; i < k - 1; ++i) {
    if (counts[i] == 0) continue;
    for (int j = i + 1; j < k; ++j) {
      pair_sum += counts[i] * counts[j] * static_cast<std::uint64_t>(j - i);
    }
  }
  return 2.0 * static_cast<double>(pair_sum) / (n * n);
}

double loe(const GrayImage &a_in, const GrayImage &a_out, int grid) {
  if (a_in.width != a_out.width || a_in.height != a_out.height) {
    throw std::invalid_argument("loe: dimension mismatch");
  }
  if (grid < 2) {
    throw std::invalid_argument("loe: grid must be >= 2");
  }
  const auto rows = lattice(a_in.height, grid);
  const auto cols = lattice(a_in.width, grid);
  std::vector<std::uint8_t> vin, vout;
  vin.reserve(rows.size() * cols.size());
  vout.reserve(rows.size() * cols.size());
  for (int y : rows) {
    for (int x : cols) {
      vin.push_back(a_in.at(x, y));
      vout.push_back(a_out.at(x, y));
    }
  }
  const std::size_t m = vin.size();
  std::uint64_t disagreements = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const bool u_in = vin[a] >= vin[b];
      const bool u_out = vout[a] >= vout[b];
      disagreements += u_in != u_out;
    }
  }
  return m > 0 ? static_cast<double>(disagreements) / static_cast<double>(m)
               : 0.0;
}

MetricsReport compute_metrics(const GrayImage &reference,
                              const GrayImage &enhanced,
                              const MetricsParams &params) {
  MetricsReport r;
  r.de = discrete_entropy(enhanced);
  r.eme = eme(enhanced, params.eme_block);
  r.pd = pixel_distance(enhanced);
  r.loe = loe(reference, enhanced, params.loe_grid);
  return r;
}

MetricsReport compute_metrics(const ColorImage &reference,
                              const ColorImage &enhanced,
                              const MetricsParams &params) {
  return compute_metrics(to_grayscale(reference), to_grayscale(enhanced),
                         params);
}

}  // namespace rope
