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

#ifndef ROPE_METRICS_HPP_
#define ROPE_METRICS_HPP_

#include "rope/image.hpp"

namespace rope {

struct MetricsParams {
  int eme_block = 8;
  int loe_grid = 50;
};

/// Per-image quality summary. All four metrics are evaluated on the
/// grayscale (max-RGB) channel.
struct MetricsReport {
  double de = 0.0;   // bits
  double eme = 0.0;  // dB-like local contrast
  double pd = 0.0;   // intensity codes
  double loe = 0.0;  // lightness-order disagreements per sampled pixel
};

/// Shannon entropy of the intensity frequencies, in bits. 0 log 0 = 0.
double discrete_entropy(const GrayImage &img, int k = kIntensityLevels);

/// Mean over non-overlapping block x block tiles (ragged edge tiles
/// included) of 20 log10(tile max / tile min), with zero codes floored at a
/// small epsilon.
double eme(const GrayImage &img, int block = 8);

/// Mean absolute intensity difference over all ordered pixel pairs,
/// evaluated exactly from the histogram in O(K^2).
double pixel_distance(const GrayImage &img, int k = kIntensityLevels);

/// Lightness order error: sample a grid x grid lattice of pixels and count,
/// per sampled pixel, how many sampled partners flip the relation
/// (in(x) >= in(y)) versus (out(x) >= out(y)). Returns the mean count.
/// Choosing grid >= the image sides makes the sample exhaustive.
double loe(const GrayImage &a_in, const GrayImage &a_out, int grid = 50);

MetricsReport compute_metrics(const GrayImage &reference,
                              const GrayImage &enhanced,
                              const MetricsParams &params = {});
MetricsReport compute_metrics(const ColorImage &reference,
                              const ColorImage &enhanced,
                              const MetricsParams &params = {});

}  // namespace rope

#endif  // ROPE_METRICS_HPP_
