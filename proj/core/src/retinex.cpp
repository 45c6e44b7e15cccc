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

#include "rope/retinex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rope/errors.hpp"

namespace rope {

namespace {

void check_params(const RtvParams &p) {
  if (!(p.lambda > 0.0) || !(p.sigma > 0.0) || !(p.eps_rtv > 0.0) ||
      p.iterations < 1 || !(p.solver_tol > 0.0) || p.solver_max_steps < 1) {
    throw std::invalid_argument("estimate_illumination: invalid RtvParams");
  }
}

// Separable Gaussian with replicate padding.
void gaussian_blur(std::vector<double> &field, int w, int h, double sigma,
                   std::vector<double> &scratch) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(radius + 1);
  double norm = 0.0;
  for (int i = 0; i <= radius; ++i) {
    kernel[i] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    norm += i == 0 ? kernel[i] : 2.0 * kernel[i];
  }
  for (double &v : kernel) v /= norm;

  scratch.resize(field.size());
  // horizontal pass
  for (int y = 0; y < h; ++y) {
    const double *row = field.data() + static_cast<std::size_t>(y) * w;
    double *out = scratch.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      double acc = kernel[0] * row[x];
      for (int i = 1; i <= radius; ++i) {
        acc += kernel[i] * (row[std::max(0, x - i)] + row[std::min(w - 1, x + i)]);
      }
      out[x] = acc;
    }
  }
  // vertical pass
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      double acc = kernel[0] * scratch[static_cast<std::size_t>(y) * w + x];
      for (int i = 1; i <= radius; ++i) {
        const int yl = std::max(0, y - i), yu = std::min(h - 1, y + i);
        acc += kernel[i] * (scratch[static_cast<std::size_t>(yl) * w + x] +
                            scratch[static_cast<std::size_t>(yu) * w + x]);
      }
      field[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
}

// Per-edge weights of the 4-neighbor graph. wx couples (x, y)-(x+1, y) and is
// zero in the last column; wy likewise for rows.
struct EdgeWeights {
  int w = 0, h = 0;
  std::vector<double> wx, wy;
};

EdgeWeights build_weights(const std::vector<double> &s, int w, int h,
                          double sigma, double eps) {
  EdgeWeights e;
  e.w = w;
  e.h = h;
  const std::size_t n = s.size();
  std::vector<double> gx(n, 0.0), gy(n, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t q = static_cast<std::size_t>(y) * w + x;
      if (x + 1 < w) gx[q] = s[q + 1] - s[q];
      if (y + 1 < h) gy[q] = s[q + w] - s[q];
    }
  }
  std::vector<double> lx = gx, ly = gy, scratch;
  gaussian_blur(lx, w, h, sigma, scratch);
  gaussian_blur(ly, w, h, sigma, scratch);

  e.wx.assign(n, 0.0);
  e.wy.assign(n, 0.0);
  for (std::size_t q = 0; q < n; ++q) {
    e.wx[q] = 1.0 / ((std::abs(lx[q]) + eps) * (std::abs(gx[q]) + eps));
    e.wy[q] = 1.0 / ((std::abs(ly[q]) + eps) * (std::abs(gy[q]) + eps));
  }
  // no edges past the frame
  for (int y = 0; y < h; ++y) e.wx[static_cast<std::size_t>(y) * w + (w - 1)] = 0.0;
  for (int x = 0; x < w; ++x) e.wy[static_cast<std::size_t>(h - 1) * w + x] = 0.0;
  return e;
}

// out = (Id + lambda * L_w) v
void apply_system(const EdgeWeights &e, double lambda,
                  const std::vector<double> &v, std::vector<double> &out) {
  const int w = e.w, h = e.h;
  out.assign(v.begin(), v.end());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t q = static_cast<std::size_t>(y) * w + x;
      if (x + 1 < w) {
        const double c = lambda * e.wx[q] * (v[q] - v[q + 1]);
        out[q] += c;
        out[q + 1] -= c;
      }
      if (y + 1 < h) {
        const double c = lambda * e.wy[q] * (v[q] - v[q + w]);
        out[q] += c;
        out[q + w] -= c;
      }
    }
  }
}

double dot(const std::vector<double> &a, const std::vector<double> &b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Jacobi-preconditioned CG for (Id + lambda * L_w) x = b, warm-started at b.
SolveStats solve_system(const EdgeWeights &e, double lambda,
                        const std::vector<double> &b, std::vector<double> &x,
                        double tol, int max_steps) {
  const std::size_t n = b.size();
  const double b_norm = std::sqrt(dot(b, b));
  x = b;
  if (b_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }

  std::vector<double> diag(n, 1.0);
  for (std::size_t q = 0; q < n; ++q) {
    const double c = lambda * (e.wx[q] + e.wy[q]);
    diag[q] += c;
    if (q % e.w > 0) diag[q] += lambda * e.wx[q - 1];
    if (q >= static_cast<std::size_t>(e.w)) diag[q] += lambda * e.wy[q - e.w];
  }

  std::vector<double> r(n), z(n), p(n), ap(n);
  apply_system(e, lambda, x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];

  double res = std::sqrt(dot(r, r)) / b_norm;
  int step = 0;
  if (res > tol) {
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    p = z;
    double rz = dot(r, z);
    for (step = 1; step <= max_steps; ++step) {
      apply_system(e, lambda, p, ap);
      const double alpha = rz / dot(p, ap);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      res = std::sqrt(dot(r, r)) / b_norm;
      if (res <= tol) break;
      for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
  }

  // report the true residual, not the recurrence's estimate
  apply_system(e, lambda, x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  res = std::sqrt(dot(r, r)) / b_norm;
  if (res > tol) {
    throw SolverError("illumination solve missed tolerance " +
                          std::to_string(tol) + ", residual " +
                          std::to_string(res),
                      res, std::min(step, max_steps));
  }
  return {std::min(step, max_steps), res};
}

}  // namespace

IlluminationMap estimate_illumination(const GrayImage &a_in,
                                      const RtvParams &params,
                                      std::vector<SolveStats> *stats, int k) {
  check_params(params);
  if (a_in.width < 1 || a_in.height < 1) {
    throw std::invalid_argument("estimate_illumination: empty image");
  }

  const int w = a_in.width, h = a_in.height;
  const double scale = 1.0 / (k - 1);
  std::vector<double> b(a_in.pixel_count());
  for (std::size_t q = 0; q < b.size(); ++q) b[q] = a_in.data[q] * scale;

  std::vector<double> x = b;
  if (w > 1 || h > 1) {
    for (int it = 0; it < params.iterations; ++it) {
      const EdgeWeights e =
          build_weights(x, w, h, params.sigma, params.eps_rtv);
      const SolveStats st = solve_system(e, params.lambda, b, x,
                                         params.solver_tol,
                                         params.solver_max_steps);
      if (stats) stats->push_back(st);
    }
  }

  IlluminationMap illum(w, h);
  const double floor = scale;
  for (std::size_t q = 0; q < x.size(); ++q) {
    illum.data[q] = std::clamp(x[q], floor, 1.0);
  }
  return illum;
}

ReflectanceMap compute_reflectance(const GrayImage &a_in,
                                   const IlluminationMap &illum,
                                   double eps_ref, int k) {
  if (illum.width != a_in.width || illum.height != a_in.height) {
    throw std::invalid_argument("compute_reflectance: dimension mismatch");
  }
  if (!(eps_ref > 0.0)) {
    throw std::invalid_argument("compute_reflectance: eps_ref must be > 0");
  }
  ReflectanceMap refl(a_in.width, a_in.height);
  const double scale = 1.0 / (k - 1);
  for (std::size_t q = 0; q < refl.data.size(); ++q) {
    refl.data[q] =
        std::log((a_in.data[q] * scale + eps_ref) / (illum.data[q] + eps_ref));
  }
  return refl;
}

}  // namespace rope
