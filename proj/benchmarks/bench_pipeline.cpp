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

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rope/enhance.hpp"
#include "rope/histogram.hpp"
#include "rope/metrics.hpp"
#include "rope/retinex.hpp"

namespace {

using namespace rope;

// Low-light scene with gradients, glows and texture; sized like the BSDS
// images the timing claims refer to (481 x 321).
ColorImage synthetic_scene(int w, int h) {
  ColorImage img(w, h);
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> noise(-6, 6);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double base = 15.0 + 50.0 * x / w + 20.0 * y / h;
      const double glow =
          130.0 * std::exp(-(std::pow(x - w / 3.0, 2) +
                             std::pow(y - h / 2.0, 2)) /
                           (0.01 * w * h));
      for (int c = 0; c < 3; ++c) {
        const double v = base * (0.7 + 0.15 * c) + glow + noise(rng);
        img.channel(x, y, c) =
            static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
      }
    }
  }
  return img;
}

CoOccurrenceHistogram random_h2(int k) {
  std::mt19937 rng(34);
  std::uniform_real_distribution<double> mass(0.0, 1.0);
  CoOccurrenceHistogram h2(k);
  double total = 0.0;
  for (auto &v : h2.upper) {
    v = mass(rng);
    total += v;
  }
  for (auto &v : h2.upper) v /= total;
  return h2;
}

SignificanceVector random_s(int k) {
  std::mt19937 rng(35);
  std::uniform_real_distribution<double> dist(1e-6, 1.0);
  SignificanceVector s;
  s.s.resize(k);
  for (auto &v : s.s) v = dist(rng);
  return s;
}

void BM_Marginalize(benchmark::State &state) {
  const int k = static_cast<int>(state.range(0));
  const CoOccurrenceHistogram h2 = random_h2(k);
  const SignificanceVector s = random_s(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(marginalize(h2, s));
  }
}
BENCHMARK(BM_Marginalize)->Arg(16)->Arg(64)->Arg(256);

void BM_MarginalizeNaive(benchmark::State &state) {
  const int k = static_cast<int>(state.range(0));
  const CoOccurrenceHistogram h2 = random_h2(k);
  const SignificanceVector s = random_s(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(marginalize_naive(h2, s));
  }
}
BENCHMARK(BM_MarginalizeNaive)->Arg(16)->Arg(64)->Arg(256);

void BM_Build2dHistogramRope(benchmark::State &state) {
  const ColorImage scene = synthetic_scene(128, 128);
  const GrayImage gray = to_grayscale(scene);
  const IlluminationMap illum = estimate_illumination(gray, {});
  const ReflectanceMap refl = compute_reflectance(gray, illum);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_2d_histogram_rope(gray, refl, 7));
  }
}
BENCHMARK(BM_Build2dHistogramRope);

void BM_Build2dHistogramCvc(benchmark::State &state) {
  const GrayImage gray = to_grayscale(synthetic_scene(128, 128));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_2d_histogram_cvc(gray, 7));
  }
}
BENCHMARK(BM_Build2dHistogramCvc);

void BM_EstimateIllumination(benchmark::State &state) {
  const int side = static_cast<int>(state.range(0));
  const GrayImage gray = to_grayscale(synthetic_scene(side, side));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_illumination(gray, {}));
  }
}
BENCHMARK(BM_EstimateIllumination)->Arg(64)->Arg(128)->Arg(256);

void BM_EnhanceFull(benchmark::State &state) {
  const Method method = static_cast<Method>(state.range(0));
  const ColorImage scene = synthetic_scene(481, 321);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enhance(scene, {}, method));
  }
  state.SetLabel(std::string(method_name(method)));
}
BENCHMARK(BM_EnhanceFull)
    ->Arg(static_cast<int>(Method::kRope))
    ->Arg(static_cast<int>(Method::kHe));

void BM_ComputeMetrics(benchmark::State &state) {
  const ColorImage scene = synthetic_scene(481, 321);
  const ColorImage out = enhance(scene, {}, Method::kHe);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_metrics(scene, out));
  }
}
BENCHMARK(BM_ComputeMetrics);

}  // namespace

BENCHMARK_MAIN();
