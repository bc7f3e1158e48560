// Copyright 2026 The Shadowrem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "shadowrem/sampling.hpp"

#include <cstdint>
#include <span>

namespace shadowrem {

/// One random frame with its per-qubit +-1 outcomes.
struct ShotRecord {
  MeasurementFrame frame;
  std::vector<std::int8_t> outcomes;
};

struct EstimateResult {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_shots = 0;
  SamplerKind kind = SamplerKind::Spherical;
};

/// Single-measurement estimator of Tr[rho P]: the product over qubits of
/// (1 if identity else 3 m n.axis), with every factor additionally
/// multiplied by the frame weight for pole-concentrated sampling.
double single_shot(const ShotRecord& shot, const PauliString& p, SamplerKind kind);

/// Per-qubit estimator factor; identity positions contribute the weight
/// only. Exposed for correlation analysis and the tensor calibration.
double single_shot_factor(const FrameEntry& entry, std::int8_t outcome, Pauli label,
                          SamplerKind kind);

/// Sample mean of single-shot estimators with its standard error
/// (sample standard deviation / sqrt(N), pairwise-summed). Needs >= 2 shots.
EstimateResult mean_estimate(std::span<const ShotRecord> shots, const Observable& o,
                             SamplerKind kind);

/// Seminorm governing the spherical (and 2-design) variance bound:
/// sqrt(sum over non-identity string pairs of 3^r Delta |c_i||c_k|).
double seminorm_spherical(const Observable& o);

/// Pole-concentrated seminorm built from the per-qubit second-moment
/// constants; identity terms participate.
double seminorm_pole(const Observable& o);

/// seminorm^2 / N with the kind-matching seminorm.
double variance_bound(const Observable& o, SamplerKind kind, std::size_t n);

/// Second moment <R[sigma_r] R[sigma_s]> of the single-qubit single-shot
/// estimators, evaluated by Gauss-Legendre quadrature of the defining
/// integral (discrete average for the tetrahedral kind). When exactly one
/// index is the identity the result is state dependent; the caller supplies
/// Tr[rho sigma_s] (default 1).
double second_moment_oracle(Pauli r, Pauli s, SamplerKind kind, double tr_rho_sigma = 1.0);

/// Deterministic fixed-tree pairwise sum.
double pairwise_sum(std::span<const double> values);

}  // namespace shadowrem
