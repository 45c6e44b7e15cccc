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

#ifndef ROPE_ENHANCE_HPP_
#define ROPE_ENHANCE_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "rope/histogram.hpp"
#include "rope/image.hpp"
#include "rope/retinex.hpp"

namespace rope {

/// Enhancement back ends. rope marginalizes a reflectance-weighted pair
/// histogram; pe marginalizes the intensity-weighted one; cvc and cache vote
/// the intensity-weighted histogram into 1D; he equalizes the plain
/// frequency histogram.
enum class Method { kRope, kPe, kCvc, kCache, kHe };

inline constexpr Method kAllMethods[] = {Method::kRope, Method::kPe,
                                         Method::kCvc, Method::kCache,
                                         Method::kHe};

std::optional<Method> parse_method(std::string_view name);
std::string_view method_name(Method method);

struct RopeParams {
  int window = 7;  // odd side length of the co-occurrence window
  int tau = 2;     // significance iterations
  int k = kIntensityLevels;
  RtvParams retinex{};
  double eps_ref = 1e-3;
};

/// Intermediates captured during one enhancement run, for reports and
/// debug dumps.
struct EnhanceTrace {
  bool degenerate = false;  // no contrast information; identity mapping used
  MappingFunction mapping;
  std::optional<Histogram1D> histogram;  // absent when degenerate
  std::optional<CoOccurrenceHistogram> pair_histogram;
  std::optional<IlluminationMap> illumination;  // rope only
  std::optional<ReflectanceMap> reflectance;    // rope only
  std::vector<SolveStats> solves;
  GrayImage gray_in;
  GrayImage gray_out;
};

/// Enhances the intensity channel: builds the method's 1D histogram, derives
/// the equalization mapping and applies it. Degenerate inputs (no intensity
/// pairs, constant reflectance, or a single occupied bin for he) map through
/// the identity.
GrayImage enhance_gray(const GrayImage &a_in, const RopeParams &params,
                       Method method, EnhanceTrace *trace = nullptr);

/// Full pipeline: grayscale extraction, intensity enhancement, color
/// recombination. Deterministic for fixed inputs and parameters.
ColorImage enhance(const ColorImage &c_in, const RopeParams &params,
                   Method method, EnhanceTrace *trace = nullptr);

}  // namespace rope

#endif  // ROPE_ENHANCE_HPP_
