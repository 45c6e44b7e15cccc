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

#include "rope/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rope {

GrayImage to_grayscale(const ColorImage &img) {
  if (img.width < 1 || img.height < 1) {
    throw std::invalid_argument("to_grayscale: empty image");
  }
  GrayImage out(img.width, img.height);
  const std::size_t n = img.pixel_count();
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint8_t r = img.data[q * 3];
    const std::uint8_t g = img.data[q * 3 + 1];
    const std::uint8_t b = img.data[q * 3 + 2];
    out.data[q] = std::max(r, std::max(g, b));
  }
  return out;
}

ColorImage recombine_color(const ColorImage &c_in, const GrayImage &a_in,
                           const GrayImage &a_out) {
  if (c_in.width != a_in.width || c_in.height != a_in.height ||
      c_in.width != a_out.width || c_in.height != a_out.height) {
    throw std::invalid_argument("recombine_color: dimension mismatch");
  }
  ColorImage out(c_in.width, c_in.height);
  const std::size_t n = c_in.pixel_count();
  for (std::size_t q = 0; q < n; ++q) {
    const double denom = a_in.data[q];
    const double target = a_out.data[q];
    for (int c = 0; c < 3; ++c) {
      // 0/0 ratio is taken as 1, giving a neutral gray pixel.
      const double ratio = denom > 0.0 ? c_in.data[q * 3 + c] / denom : 1.0;
      out.data[q * 3 + c] = static_cast<std::uint8_t>(std::lround(ratio * target));
    }
  }
  return out;
}

}  // namespace rope
