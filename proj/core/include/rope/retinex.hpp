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

#ifndef ROPE_RETINEX_HPP_
#define ROPE_RETINEX_HPP_

#include <vector>

#include "rope/image.hpp"

namespace rope {

/// Relative-total-variation smoothing parameters.
struct RtvParams {
  double lambda = 0.01;       // smoothing strength
  double sigma = 3.0;         // spatial scale of the local-variation Gaussian
  double eps_rtv = 1e-3;      // weight stabilizer
  int iterations = 4;         // reweighting rounds
  double solver_tol = 1e-5;   // relative residual target
  int solver_max_steps = 2000;
};

/// One linear solve's exit state.
struct SolveStats {
  int steps = 0;
  double residual = 0.0;
};

/// Edge-preserving smoothed estimate of scene lighting. Intensities are
/// normalized to [0, 1] internally; each reweighting round builds per-edge
/// weights 1/(L + eps) * 1/(|dS| + eps), with L the Gaussian-smoothed local
/// variation, and solves (Id + lambda * L_w) I = A by diagonally
/// preconditioned conjugate gradient on the 4-neighbor weighted Laplacian
/// L_w. The result is clamped to [1/(k-1), 1].
///
/// Throws SolverError if a solve misses solver_tol within solver_max_steps.
/// When stats is non-null, one SolveStats entry is appended per solve.
IlluminationMap estimate_illumination(const GrayImage &a_in,
                                      const RtvParams &params,
                                      std::vector<SolveStats> *stats = nullptr,
                                      int k = kIntensityLevels);

/// Log-domain reflectance r(q) = ln((a(q)/(k-1) + eps) / (I(q) + eps)).
/// The stabilizer keeps every output finite and maps 0/0 pixels to 0.
ReflectanceMap compute_reflectance(const GrayImage &a_in,
                                   const IlluminationMap &illum,
                                   double eps_ref = 1e-3,
                                   int k = kIntensityLevels);

}  // namespace rope

#endif  // ROPE_RETINEX_HPP_
