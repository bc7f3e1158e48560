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

#include "shadowrem/simulator.hpp"

#include <map>

namespace shadowrem {

struct TermEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_shots = 0;

  double variance() const { return std_error * std_error; }
};

enum class SuppressionMode { PerMask, TensorProduct };

/// Calibrated suppression estimates: either one entry per distinct mask or
/// one per-qubit factor multiplied on lookup.
class SuppressionTable {
 public:
  static SuppressionTable per_mask(std::map<Mask, TermEstimate> entries);
  static SuppressionTable tensor_product(std::map<int, TermEstimate> factors, int qubits);

  SuppressionMode mode() const { return mode_; }
  const std::map<Mask, TermEstimate>& mask_entries() const { return per_mask_; }
  const std::map<int, TermEstimate>& qubit_factors() const { return per_qubit_; }

  /// Suppression estimate for a mask. Tensor mode multiplies the per-qubit
  /// factors over masked positions (variance by first-order propagation).
  TermEstimate lookup(const Mask& mask) const;

 private:
  SuppressionMode mode_ = SuppressionMode::PerMask;
  std::map<Mask, TermEstimate> per_mask_;
  std::map<int, TermEstimate> per_qubit_;
  int qubits_ = 0;
};

class UnmitigableTermError : public std::runtime_error {
 public:
  UnmitigableTermError(const PauliString& term, double suppression);
  const PauliString& term() const { return term_; }
  double suppression() const { return suppression_; }

 private:
  PauliString term_;
  double suppression_;
};

/// Sample means of the per-term single-shot estimators over main batches.
std::map<PauliString, TermEstimate> estimate_noisy_terms(std::span<const ShotBatch> batches,
                                                         std::span<const PauliString> terms,
                                                         SamplerKind kind);

/// Per-mask suppression estimates from calibration batches (all-zeros
/// state): the estimator of the mask's Z string.
SuppressionTable estimate_suppression(std::span<const ShotBatch> batches,
                                      std::span<const Mask> masks, SamplerKind kind);

/// Per-qubit suppression factors from the single-qubit Z estimators of the
/// same calibration data; mask lookups multiply over masked qubits.
SuppressionTable estimate_suppression_tensor(std::span<const ShotBatch> batches,
                                             std::span<const int> qubits, SamplerKind kind);

struct MitigationOptions {
  /// Suppression magnitudes below this floor abort the term instead of
  /// amplifying noise without bound.
  double suppression_floor = 0.01;
};

struct MitigatedTerm {
  double value = 0.0;
  double std_error = 0.0;
  double raw = 0.0;
  double suppression = 1.0;
};

struct ShotBudget {
  std::size_t n_main = 0;
  std::size_t n_cal = 0;
  double ratio = 0.0;
};

struct MitigationResult {
  std::map<PauliString, MitigatedTerm> per_term;
  double value = 0.0;
  double std_error = 0.0;
  SuppressionMode mode = SuppressionMode::PerMask;
  ShotBudget budget;
};

/// Ratio mitigation: each term's noisy estimate divided by its calibrated
/// suppression, recombined with the observable coefficients.
MitigationResult mitigate(const std::map<PauliString, TermEstimate>& noisy,
                          const SuppressionTable& table, const Observable& o,
                          const MitigationOptions& options = {});

struct ValueVariance {
  double value = 0.0;
  double variance = 0.0;
};

/// Second-order variance of the ratio estimator f_noisy / f_supp.
double ratio_variance(const ValueVariance& f_noisy, const ValueVariance& f_supp);

/// Optimal calibration-to-main shot ratio b for one Pauli term given a
/// prior on Tr[rho P]; clamped below by min_ratio.
double optimal_shot_ratio(const PauliString& p, double expected, SamplerKind kind,
                          double min_ratio = 0.05);

/// Total shot budget meeting a target standard error at the optimal split.
std::size_t total_shots(double epsilon, const PauliString& p, double suppression, double b,
                        SamplerKind kind);

}  // namespace shadowrem
