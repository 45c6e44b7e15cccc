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

#include "rope/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rope {

namespace {

void check_levels(int k) {
  if (k < 2 || k > kIntensityLevels) {
    throw std::invalid_argument("bin count must be in [2, 256]");
  }
}

void check_window(int window) {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("window must be odd and >= 3");
  }
}

void check_intensities(const GrayImage &img, int k) {
  for (std::uint8_t v : img.data) {
    if (v >= k) {
      throw std::invalid_argument("intensity code out of range for bin count");
    }
  }
}

// Shared accumulation loop over ordered in-window pixel pairs. WeightFn maps
// (pixel index q, pixel index q') to the pair weight.
template <typename WeightFn>
std::optional<CoOccurrenceHistogram> accumulate_pairs(const GrayImage &a_in,
                                                      int window, int k,
                                                      WeightFn &&weight) {
  check_levels(k);
  check_window(window);
  check_intensities(a_in, k);

  CoOccurrenceHistogram h2(k);
  const int half = window / 2;
  const int w = a_in.width, h = a_in.height;
  double total = 0.0;

  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - half), y1 = std::min(h - 1, y + half);
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - half), x1 = std::min(w - 1, x + half);
      const std::size_t q = static_cast<std::size_t>(y) * w + x;
      const int ai = a_in.data[q];
      for (int ny = y0; ny <= y1; ++ny) {
        const std::size_t row = static_cast<std::size_t>(ny) * w;
        for (int nx = x0; nx <= x1; ++nx) {
          const std::size_t qn = row + nx;
          if (qn == q) continue;
          const int aj = a_in.data[qn];
          if (aj == ai) continue;
          const double wgt = weight(q, qn);
          h2.upper[h2.index(std::min(ai, aj), std::max(ai, aj))] += wgt;
          total += wgt;
        }
      }
    }
  }

  if (!(total > 0.0)) return std::nullopt;
  for (double &v : h2.upper) v /= total;
  return h2;
}

Histogram1D renormalized(Histogram1D h) {
  const double total = h.sum();
  if (total > 0.0) {
    for (double &v : h.p) v /= total;
  }
  return h;
}

}  // namespace

double CoOccurrenceHistogram::sum() const {
  return std::accumulate(upper.begin(), upper.end(), 0.0);
}

double Histogram1D::sum() const {
  return std::accumulate(p.begin(), p.end(), 0.0);
}

SignificanceVector SignificanceVector::uniform(int levels) {
  check_levels(levels);
  return SignificanceVector{std::vector<double>(levels, 1.0 / levels)};
}

MappingFunction MappingFunction::identity(int levels) {
  check_levels(levels);
  MappingFunction t;
  t.table.resize(levels);
  std::iota(t.table.begin(), t.table.end(), std::uint8_t{0});
  return t;
}

bool MappingFunction::is_identity() const {
  for (std::size_t v = 0; v < table.size(); ++v) {
    if (table[v] != v) return false;
  }
  return true;
}

bool MappingFunction::nondecreasing() const {
  for (std::size_t v = 1; v < table.size(); ++v) {
    if (table[v] < table[v - 1]) return false;
  }
  return true;
}

std::optional<CoOccurrenceHistogram> build_2d_histogram_rope(
    const GrayImage &a_in, const ReflectanceMap &refl, int window, int k) {
  if (refl.width != a_in.width || refl.height != a_in.height) {
    throw std::invalid_argument("build_2d_histogram_rope: dimension mismatch");
  }
  return accumulate_pairs(a_in, window, k, [&](std::size_t q, std::size_t qn) {
    return std::abs(refl.data[q] - refl.data[qn]);
  });
}

std::optional<CoOccurrenceHistogram> build_2d_histogram_cvc(
    const GrayImage &a_in, int window, int k) {
  return accumulate_pairs(a_in, window, k, [&](std::size_t q, std::size_t qn) {
    return std::abs(static_cast<double>(a_in.data[q]) - a_in.data[qn]);
  });
}

Histogram1D marginalize(const CoOccurrenceHistogram &h2,
                        const SignificanceVector &s) {
  const int k = h2.k;
  check_levels(k);
  if (static_cast<int>(s.s.size()) != k) {
    throw std::invalid_argument("marginalize: significance size mismatch");
  }

  // Prefix sums of s so a pair's range-sum over (i, j] is one subtraction.
  std::vector<double> s_prefix(k + 1, 0.0);
  for (int t = 0; t < k; ++t) s_prefix[t + 1] = s_prefix[t] + s.s[t];

  // Each pair adds a constant m/S over the bins (i, j]; accumulate those
  // constants as a difference array, prefix-sum once, then scale by s_k.
  // Pairs with zero range-sum split uniformly and bypass the s_k scaling.
  std::vector<double> scaled(k + 1, 0.0);
  std::vector<double> flat(k + 1, 0.0);
  std::size_t idx = 0;
  for (int i = 0; i < k - 1; ++i) {
    for (int j = i + 1; j < k; ++j, ++idx) {
      const double m = h2.upper[idx];
      if (m == 0.0) continue;
      const double range_sum = s_prefix[j + 1] - s_prefix[i + 1];
      if (range_sum > 0.0) {
        const double c = m / range_sum;
        scaled[i + 1] += c;
        scaled[j + 1] -= c;
      } else {
        const double c = m / (j - i);
        flat[i + 1] += c;
        flat[j + 1] -= c;
      }
    }
  }

  Histogram1D out(k);
  double run_scaled = 0.0, run_flat = 0.0;
  for (int t = 0; t < k; ++t) {
    run_scaled += scaled[t];
    run_flat += flat[t];
    out.p[t] = s.s[t] * run_scaled + run_flat;
  }
  return renormalized(std::move(out));
}

Histogram1D marginalize_naive(const CoOccurrenceHistogram &h2,
                              const SignificanceVector &s) {
  const int k = h2.k;
  check_levels(k);
  if (static_cast<int>(s.s.size()) != k) {
    throw std::invalid_argument("marginalize_naive: significance size mismatch");
  }

  Histogram1D out(k);
  for (int i = 0; i < k - 1; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const double m = h2.at(i, j);
      if (m == 0.0) continue;
      double range_sum = 0.0;
      for (int t = i + 1; t <= j; ++t) range_sum += s.s[t];
      if (range_sum > 0.0) {
        for (int t = i + 1; t <= j; ++t) out.p[t] += m * s.s[t] / range_sum;
      } else {
        for (int t = i + 1; t <= j; ++t) out.p[t] += m / (j - i);
      }
    }
  }
  return renormalized(std::move(out));
}

Histogram1D iterate_histogram(const CoOccurrenceHistogram &h2, int tau) {
  if (tau < 1) {
    throw std::invalid_argument("iterate_histogram: tau must be >= 1");
  }
  SignificanceVector s = SignificanceVector::uniform(h2.k);
  Histogram1D p = marginalize(h2, s);
  for (int t = 2; t <= tau; ++t) {
    s.s = p.p;
    p = marginalize(h2, s);
  }
  return p;
}

Histogram1D vote_cvc(const CoOccurrenceHistogram &h2) {
  Histogram1D out(h2.k);
  std::size_t idx = 0;
  for (int i = 0; i < h2.k - 1; ++i) {
    for (int j = i + 1; j < h2.k; ++j, ++idx) {
      out.p[j] += h2.upper[idx];
    }
  }
  return renormalized(std::move(out));
}

Histogram1D vote_cache(const CoOccurrenceHistogram &h2) {
  Histogram1D out(h2.k);
  std::size_t idx = 0;
  for (int i = 0; i < h2.k - 1; ++i) {
    for (int j = i + 1; j < h2.k; ++j, ++idx) {
      const double half = h2.upper[idx] * 0.5;
      out.p[i] += half;
      out.p[j] += half;
    }
  }
  return renormalized(std::move(out));
}

Histogram1D frequency_histogram(const GrayImage &img, int k) {
  check_levels(k);
  check_intensities(img, k);
  if (img.pixel_count() == 0) {
    throw std::invalid_argument("frequency_histogram: empty image");
  }
  Histogram1D out(k);
  for (std::uint8_t v : img.data) out.p[v] += 1.0;
  for (double &v : out.p) v /= static_cast<double>(img.pixel_count());
  return out;
}

MappingFunction build_mapping(const Histogram1D &h1) {
  check_levels(h1.k);
  MappingFunction t;
  t.table.resize(h1.k);
  double cum = 0.0;
  for (int v = 0; v < h1.k; ++v) {
    cum += h1.p[v];
    const long code = std::lround(h1.k * cum - 1.0);
    t.table[v] =
        static_cast<std::uint8_t>(std::clamp(code, 0L, static_cast<long>(h1.k - 1)));
  }
  return t;
}

GrayImage apply_mapping(const GrayImage &a_in, const MappingFunction &t) {
  check_intensities(a_in, static_cast<int>(t.table.size()));
  GrayImage out(a_in.width, a_in.height);
  for (std::size_t q = 0; q < a_in.data.size(); ++q) {
    out.data[q] = t.table[a_in.data[q]];
  }
  return out;
}

}  // namespace rope
