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

#ifndef ROPE_IMAGE_HPP_
#define ROPE_IMAGE_HPP_

#include <cstdint>
#include <vector>

namespace rope {

/// Number of representable intensity codes per channel.
inline constexpr int kIntensityLevels = 256;

/// 8-bit single-channel raster, row-major, values in [0, kIntensityLevels).
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t &at(int x, int y) {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  std::size_t pixel_count() const { return data.size(); }

  bool operator==(const GrayImage &) const = default;
};

/// 8-bit RGB raster, interleaved row-major, values in [0, kIntensityLevels).
struct ColorImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // r,g,b per pixel

  ColorImage() = default;
  ColorImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

  std::uint8_t &channel(int x, int y, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  std::uint8_t channel(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

  bool operator==(const ColorImage &) const = default;
};

/// Per-pixel real-valued field, row-major.
struct ScalarField {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  ScalarField() = default;
  ScalarField(int w, int h, double fill = 0.0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  double &at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Smooth scene-lighting estimate, normalized scale, strictly positive.
struct IlluminationMap : ScalarField {
  using ScalarField::ScalarField;
};

/// Log-domain reflectance, finite everywhere, unbounded sign.
struct ReflectanceMap : ScalarField {
  using ScalarField::ScalarField;
};

/// Intensity channel: per-pixel max of R, G and B (the HSV value channel).
GrayImage to_grayscale(const ColorImage &img);

/// Rescales each channel of c_in by a_out/a_in per pixel. Arithmetic is done
/// in double and rounded half away from zero. Pixels with a_in = 0 (all
/// channels zero) come out as the neutral gray (a_out, a_out, a_out).
ColorImage recombine_color(const ColorImage &c_in, const GrayImage &a_in,
                           const GrayImage &a_out);

}  // namespace rope

#endif  // ROPE_IMAGE_HPP_
