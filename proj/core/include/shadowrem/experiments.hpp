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

#include "shadowrem/config.hpp"

namespace shadowrem {

/// Pairwise readout correlations of one measurement method.
struct CorrelationReport {
  std::string method;        // direct | pole | tetrahedral
  Eigen::MatrixXd pearson;   // Q x Q, symmetric, unit diagonal
  std::size_t n_shots = 0;
  double null_band = 0.0;    // 2 sigma for a true zero correlation, 2/sqrt(N)
  std::vector<double> hist_edges;
  std::vector<std::size_t> hist_counts;  // off-diagonal pairs, outliers clamped
};

/// Measures |0...0> under the configured error model with direct readout,
/// pole-concentrated, and tetrahedral randomization; correlates the raw
/// bits (direct) or the per-qubit single-shot Z estimators.
std::vector<CorrelationReport> run_correlations(const ExperimentConfig& cfg);

/// Four-level three-wave interaction Hamiltonian on the conserved sector,
/// in the two-qubit binary basis |00>, |01>, |10>, |11>.
Matrix three_wave_hamiltonian(double g);

struct ThreewaveRow {
  double t = 0.0;
  int state = 0;
  double exact = 0.0;
  double direct = 0.0;
  double mitigated = 0.0;
  double std_error = 0.0;
};

std::vector<ThreewaveRow> run_threewave(const ExperimentConfig& cfg);

struct EstimateReportRow {
  std::string term;
  double raw = 0.0;
  double suppression = 1.0;
  double mitigated = 0.0;
  double std_error = 0.0;
};

struct EstimateReport {
  std::vector<EstimateReportRow> rows;
  double total = 0.0;
  double total_std_error = 0.0;
  ShotBudget budget;
  /// Shot-budget suggestions when a target precision is configured:
  /// per term (b, N_total at suppression 1 prior).
  std::vector<std::tuple<std::string, double, std::size_t>> budget_suggestions;
};

EstimateReport run_estimate(const ExperimentConfig& cfg);

struct AuditRow {
  std::string check;
  double computed = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Deterministic oracle suite: quadrature second moments, the 2-design
/// identity, group closure, suppression-factor identities, and the
/// twirl-vs-readout comparison.
std::vector<AuditRow> run_audit();

/// First K frames of the configured main plan, for replay verification.
struct FrameDumpRow {
  std::size_t shot = 0;
  int qubit = 0;
  FrameEntry entry;
};
std::vector<FrameDumpRow> dump_frames(const ExperimentConfig& cfg, std::size_t count);

}  // namespace shadowrem
