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

#include "rope/enhance.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace rope {

std::optional<Method> parse_method(std::string_view name) {
  if (name == "rope") return Method::kRope;
  if (name == "pe") return Method::kPe;
  if (name == "cvc") return Method::kCvc;
  if (name == "cache") return Method::kCache;
  if (name == "he") return Method::kHe;
  return std::nullopt;
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kRope:
      return "rope";
    case Method::kPe:
      return "pe";
    case Method::kCvc:
      return "cvc";
    case Method::kCache:
      return "cache";
    case Method::kHe:
      return "he";
  }
  return "unknown";
}

namespace {

void check_params(const RopeParams &p) {
  if (p.window < 3 || p.window % 2 == 0) {
    throw std::invalid_argument("window must be odd and >= 3");
  }
  if (p.tau < 1) {
    throw std::invalid_argument("tau must be >= 1");
  }
  if (p.k < 2 || p.k > kIntensityLevels) {
    throw std::invalid_argument("bin count must be in [2, 256]");
  }
  if (!(p.eps_ref > 0.0)) {
    throw std::invalid_argument("eps_ref must be > 0");
  }
}

}  // namespace

GrayImage enhance_gray(const GrayImage &a_in, const RopeParams &params,
                       Method method, EnhanceTrace *trace) {
  check_params(params);
  if (a_in.width < 1 || a_in.height < 1) {
    throw std::invalid_argument("enhance_gray: empty image");
  }

  std::optional<Histogram1D> h1;
  std::optional<CoOccurrenceHistogram> h2;
  std::optional<IlluminationMap> illum;
  std::optional<ReflectanceMap> refl;
  std::vector<SolveStats> solves;

  switch (method) {
    case Method::kRope: {
      illum = estimate_illumination(a_in, params.retinex,
                                    trace ? &solves : nullptr, params.k);
      refl = compute_reflectance(a_in, *illum, params.eps_ref, params.k);
      h2 = build_2d_histogram_rope(a_in, *refl, params.window, params.k);
      if (h2) h1 = iterate_histogram(*h2, params.tau);
      break;
    }
    case Method::kPe: {
      h2 = build_2d_histogram_cvc(a_in, params.window, params.k);
      if (h2) h1 = iterate_histogram(*h2, params.tau);
      break;
    }
    case Method::kCvc: {
      h2 = build_2d_histogram_cvc(a_in, params.window, params.k);
      if (h2) h1 = vote_cvc(*h2);
      break;
    }
    case Method::kCache: {
      h2 = build_2d_histogram_cvc(a_in, params.window, params.k);
      if (h2) h1 = vote_cache(*h2);
      break;
    }
    case Method::kHe: {
      Histogram1D freq = frequency_histogram(a_in, params.k);
      const int occupied =
          static_cast<int>(std::count_if(freq.p.begin(), freq.p.end(),
                                         [](double v) { return v > 0.0; }));
      if (occupied >= 2) h1 = std::move(freq);
      break;
    }
  }

  MappingFunction mapping =
      h1 ? build_mapping(*h1) : MappingFunction::identity(params.k);
  GrayImage a_out = apply_mapping(a_in, mapping);

  if (trace) {
    trace->degenerate = !h1.has_value();
    trace->mapping = std::move(mapping);
    trace->histogram = std::move(h1);
    trace->pair_histogram = std::move(h2);
    trace->illumination = std::move(illum);
    trace->reflectance = std::move(refl);
    trace->solves = std::move(solves);
    trace->gray_in = a_in;
    trace->gray_out = a_out;
  }
  return a_out;
}

ColorImage enhance(const ColorImage &c_in, const RopeParams &params,
                   Method method, EnhanceTrace *trace) {
  const GrayImage a_in = to_grayscale(c_in);
  const GrayImage a_out = enhance_gray(a_in, params, method, trace);
  return recombine_color(c_in, a_in, a_out);
}

}  // namespace rope
