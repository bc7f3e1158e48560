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

#include "shadowrem/mitigation.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace shadowrem {

enum class ExperimentKind { Correlations, Threewave, Estimate, Audit };

const char* experiment_name(ExperimentKind kind);

struct ShotSpec {
  std::size_t main = 100000;
  std::size_t calibration = 950000;
  std::size_t direct = 10000;
};

struct OutputSpec {
  std::string directory = "out";
  bool plots = false;
  bool clip = false;
  int hist_bins = 50;
  double hist_range = 0.01;
  std::size_t dump_frames = 0;
};

struct ThreewaveSpec {
  double coupling = 1.0;
  double t_max = 3.0;
  int points = 20;
};

struct ObservableTermSpec {
  double coeff = 1.0;
  std::string pauli;
};

struct EstimateSpec {
  std::string state = "zeros";  // zeros | plus | ghz | bitstring
  std::string bits;             // for state == bitstring
  std::vector<ObservableTermSpec> observable;
  SuppressionMode mode = SuppressionMode::PerMask;
  std::optional<double> epsilon;
};

/// Versioned experiment description parsed from a JSON config file.
struct ExperimentConfig {
  int version = 1;
  ExperimentKind experiment = ExperimentKind::Audit;
  int qubits = 2;
  SamplerKind sampler = SamplerKind::Tetrahedral;
  ReadoutErrorModel error_model;
  ShotSpec shots;
  std::uint64_t base_seed = 1;
  std::optional<std::vector<std::uint32_t>> per_qubit_seeds;
  std::uint64_t outcome_seed = 1;
  std::size_t batch_size = 10000;
  bool interleaved = true;
  double drift_rate = 0.0;
  OutputSpec output;
  ThreewaveSpec threewave;
  EstimateSpec estimate;
  int threads = 1;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  /// FNV-1a hash of the canonical JSON dump; names the run directory.
  std::string config_hash() const;

  std::vector<std::uint32_t> frame_seeds_for(std::uint64_t stream_tag) const;
  void validate() const;
};

SamplerKind sampler_from_name(const std::string& name);
ReadoutErrorModel error_model_from_json(const nlohmann::json& j);
nlohmann::json error_model_to_json(const ReadoutErrorModel& model);

}  // namespace shadowrem
