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

#include "shadowrem/channel.hpp"
#include "shadowrem/estimator.hpp"
#include "shadowrem/rng.hpp"

#include <optional>
#include <variant>

namespace shadowrem {

/// Gate applied to a contiguous qubit slice of |0...0> during preparation.
struct GateOp {
  int first_qubit = 0;
  Matrix unitary;
};

/// Tensor product of single-qubit density matrices; kept factored so the
/// measurement path can skip the 2^Q rotation.
struct ProductState {
  std::vector<Eigen::Matrix2cd> factors;
};

using StatePrep = std::variant<DensityMatrix, ProductState, std::vector<GateOp>>;

StatePrep all_zeros_state(int qubits);
StatePrep all_plus_state(int qubits);
DensityMatrix realize_state(const StatePrep& state, int qubits);

enum class BatchOrigin { Main, Calibration };

struct ShotBatch {
  std::vector<ShotRecord> records;
  std::size_t batch_index = 0;
  BatchOrigin origin = BatchOrigin::Main;
  double drift_time = 0.0;
};

struct DriftSpec {
  double rate = 0.0;
};

struct ExperimentPlan {
  StatePrep state;
  int qubits = 1;
  std::size_t n_shots = 1;
  SamplerKind sampler = SamplerKind::Spherical;
  ReadoutErrorModel error_model;
  std::vector<std::uint32_t> frame_seeds;  // one nonzero seed per qubit
  std::uint64_t outcome_seed = 1;
  std::size_t batch_size = 10000;
  DriftSpec drift;
  BatchOrigin origin = BatchOrigin::Main;
  /// Optional preparation-error knob: symmetric bit flip applied to the
  /// prepared state before the frame rotations.
  double prep_flip_probability = 0.0;

  void validate() const;
  std::size_t n_batches() const;
};

/// Per-qubit seeds derived from one base seed (all nonzero).
std::vector<std::uint32_t> derive_frame_seeds(std::uint64_t base, int qubits);

struct RunOptions {
  int threads = 1;
};

/// Rotates by the frame's reconstructed gates, applies the channel, then
/// samples a computational-basis outcome. Throws if any probability leaves
/// [-1e-9, 1 + 1e-9].
std::vector<std::int8_t> noisy_measure(const DensityMatrix& rho, const MeasurementFrame& frame,
                                       const QuantumChannel& e, RngStream& rng);

std::vector<ShotBatch> run_plan(const ExperimentPlan& plan, const RunOptions& opts = {});

/// Same execution with an explicit Kraus channel instead of the plan's
/// readout model (drift does not apply).
std::vector<ShotBatch> run_plan_with_channel(const ExperimentPlan& plan, const QuantumChannel& e,
                                             const RunOptions& opts = {});

/// Executes the plan with fixed +z frames on every shot (no randomization);
/// the plan's sampler and frame seeds are ignored.
std::vector<ShotBatch> run_plan_direct(const ExperimentPlan& plan, const RunOptions& opts = {});

enum class SchedulePolicy { Interleaved, CalibrationFirst };

/// Executes both plans on a shared drift clock. Interleaved scheduling
/// alternates batches ratio-preservingly; CalibrationFirst runs every
/// calibration batch before the main batches.
std::vector<ShotBatch> merge_plans(const ExperimentPlan& main_plan,
                                   const ExperimentPlan& cal_plan, SchedulePolicy policy,
                                   const RunOptions& opts = {});

std::vector<ShotBatch> interleave(const ExperimentPlan& main_plan,
                                  const ExperimentPlan& cal_plan, const RunOptions& opts = {});

/// Ratio-preserving round-robin order; true marks a main slot.
std::vector<bool> interleave_pattern(std::size_t n_main, std::size_t n_cal);

EstimateResult mean_estimate(std::span<const ShotBatch> batches, const Observable& o,
                             SamplerKind kind, BatchOrigin origin = BatchOrigin::Main);

}  // namespace shadowrem
