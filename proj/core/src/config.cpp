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

#include "shadowrem/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace shadowrem {

using nlohmann::json;

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Correlations: return "correlations";
    case ExperimentKind::Threewave: return "threewave";
    case ExperimentKind::Estimate: return "estimate";
    case ExperimentKind::Audit: return "audit";
  }
  return "?";
}

SamplerKind sampler_from_name(const std::string& name) {
  if (name == "spherical") return SamplerKind::Spherical;
  if (name == "pole" || name == "pole_concentrated") return SamplerKind::PoleConcentrated;
  if (name == "tetrahedral") return SamplerKind::Tetrahedral;
  throw std::invalid_argument("unknown sampler '" + name + "'");
}

namespace {

ExperimentKind experiment_from_name(const std::string& name) {
  if (name == "correlations") return ExperimentKind::Correlations;
  if (name == "threewave") return ExperimentKind::Threewave;
  if (name == "estimate") return ExperimentKind::Estimate;
  if (name == "audit") return ExperimentKind::Audit;
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace

ReadoutErrorModel error_model_from_json(const json& j) {
  const std::string kind = j.value("kind", "none");
  if (kind == "none") return ReadoutErrorModel::none();
  if (kind == "tensor_flip") {
    return ReadoutErrorModel::tensor_flip(j.at("p").get<std::vector<double>>());
  }
  if (kind == "confusion") {
    const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd t(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != n) {
        throw std::invalid_argument("confusion matrix rows must be square");
      }
      for (Eigen::Index c = 0; c < n; ++c) {
        t(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      }
    }
    return ReadoutErrorModel::confusion(std::move(t));
  }
  if (kind == "confusion_per_qubit") {
    std::vector<std::pair<double, double>> rates;
    for (const auto& pair : j.at("rates")) {
      rates.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    return ReadoutErrorModel::confusion_per_qubit(rates);
  }
  if (kind == "correlated_flip") {
    const auto pair = j.at("pair").get<std::vector<int>>();
    if (pair.size() != 2) throw std::invalid_argument("correlated_flip pair needs two qubits");
    return ReadoutErrorModel::correlated_flip(pair[0], pair[1], j.value("joint", 0.0),
                                              j.value("p01", 0.0), j.value("p10", 0.0));
  }
  if (kind == "coherent") {
    return ReadoutErrorModel::coherent(j.at("angles").get<std::vector<double>>());
  }
  throw std::invalid_argument("unknown error model '" + kind + "'");
}

json error_model_to_json(const ReadoutErrorModel& model) {
  json j;
  std::visit(
      [&j](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NoError>) {
          j["kind"] = "none";
        } else if constexpr (std::is_same_v<T, Confusion>) {
          j["kind"] = "confusion";
          std::vector<std::vector<double>> rows;
          for (Eigen::Index r = 0; r < m.matrix.rows(); ++r) {
            std::vector<double> row;
            for (Eigen::Index c = 0; c < m.matrix.cols(); ++c) row.push_back(m.matrix(r, c));
            rows.push_back(std::move(row));
          }
          j["matrix"] = rows;
        } else if constexpr (std::is_same_v<T, TensorFlip>) {
          j["kind"] = "tensor_flip";
          j["p"] = m.p;
        } else if constexpr (std::is_same_v<T, CorrelatedFlip>) {
          j["kind"] = "correlated_flip";
          j["pair"] = {m.qubit_a, m.qubit_b};
          j["joint"] = m.joint;
          j["p01"] = m.p01;
          j["p10"] = m.p10;
        } else {
          j["kind"] = "coherent";
          j["angles"] = m.angles;
        }
      },
      model.variant());
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.version = j.value("version", 1);
  if (cfg.version != 1) throw std::invalid_argument("unsupported config version");
  cfg.experiment = experiment_from_name(j.at("experiment").get<std::string>());
  cfg.qubits = j.value("qubits", 2);
  cfg.sampler = sampler_from_name(j.value("sampler", std::string("tetrahedral")));
  if (j.contains("error_model")) cfg.error_model = error_model_from_json(j.at("error_model"));
  if (j.contains("shots")) {
    const json& s = j.at("shots");
    cfg.shots.main = s.value("main", cfg.shots.main);
    cfg.shots.calibration = s.value("calibration", cfg.shots.calibration);
    cfg.shots.direct = s.value("direct", cfg.shots.direct);
  }
  if (j.contains("seeds")) {
    const json& s = j.at("seeds");
    cfg.base_seed = s.value("base", cfg.base_seed);
    cfg.outcome_seed = s.value("outcome", cfg.base_seed);
    if (s.contains("per_qubit")) {
      cfg.per_qubit_seeds = s.at("per_qubit").get<std::vector<std::uint32_t>>();
    }
  } else {
    cfg.outcome_seed = cfg.base_seed;
  }
  if (j.contains("batch")) {
    const json& b = j.at("batch");
    cfg.batch_size = b.value("size", cfg.batch_size);
    cfg.interleaved = b.value("interleave", cfg.interleaved);
  }
  if (j.contains("drift")) cfg.drift_rate = j.at("drift").value("rate", 0.0);
  if (j.contains("output")) {
    const json& o = j.at("output");
    cfg.output.directory = o.value("directory", cfg.output.directory);
    cfg.output.plots = o.value("plots", cfg.output.plots);
    cfg.output.clip = o.value("clip", cfg.output.clip);
    cfg.output.hist_bins = o.value("hist_bins", cfg.output.hist_bins);
    cfg.output.hist_range = o.value("hist_range", cfg.output.hist_range);
    cfg.output.dump_frames = o.value("dump_frames", cfg.output.dump_frames);
  }
  if (j.contains("threewave")) {
    const json& t = j.at("threewave");
    cfg.threewave.coupling = t.value("coupling", cfg.threewave.coupling);
    cfg.threewave.t_max = t.value("t_max", cfg.threewave.t_max);
    cfg.threewave.points = t.value("points", cfg.threewave.points);
  }
  if (j.contains("estimate")) {
    const json& e = j.at("estimate");
    cfg.estimate.state = e.value("state", cfg.estimate.state);
    cfg.estimate.bits = e.value("bits", cfg.estimate.bits);
    if (e.contains("observable")) {
      for (const json& term : e.at("observable")) {
        cfg.estimate.observable.push_back(
            {term.value("coeff", 1.0), term.at("pauli").get<std::string>()});
      }
    }
    const std::string mode = e.value("mode", std::string("per_mask"));
    if (mode == "per_mask") {
      cfg.estimate.mode = SuppressionMode::PerMask;
    } else if (mode == "tensor") {
      cfg.estimate.mode = SuppressionMode::TensorProduct;
    } else {
      throw std::invalid_argument("unknown suppression mode '" + mode + "'");
    }
    if (e.contains("epsilon")) cfg.estimate.epsilon = e.at("epsilon").get<double>();
  }
  cfg.threads = j.value("threads", 1);
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  json j;
  in >> j;
  return from_json(j);
}

json ExperimentConfig::to_json() const {
  json j;
  j["version"] = version;
  j["experiment"] = experiment_name(experiment);
  j["qubits"] = qubits;
  j["sampler"] = sampler_name(sampler);
  j["error_model"] = error_model_to_json(error_model);
  j["shots"] = {{"main", shots.main}, {"calibration", shots.calibration}, {"direct", shots.direct}};
  json seeds = {{"base", base_seed}, {"outcome", outcome_seed}};
  if (per_qubit_seeds) seeds["per_qubit"] = *per_qubit_seeds;
  j["seeds"] = seeds;
  j["batch"] = {{"size", batch_size}, {"interleave", interleaved}};
  j["drift"] = {{"rate", drift_rate}};
  j["output"] = {{"directory", output.directory}, {"plots", output.plots},
                 {"clip", output.clip},           {"hist_bins", output.hist_bins},
                 {"hist_range", output.hist_range}, {"dump_frames", output.dump_frames}};
  j["threewave"] = {{"coupling", threewave.coupling},
                    {"t_max", threewave.t_max},
                    {"points", threewave.points}};
  json est;
  est["state"] = estimate.state;
  if (!estimate.bits.empty()) est["bits"] = estimate.bits;
  json terms = json::array();
  for (const ObservableTermSpec& t : estimate.observable) {
    terms.push_back({{"coeff", t.coeff}, {"pauli", t.pauli}});
  }
  est["observable"] = terms;
  est["mode"] = estimate.mode == SuppressionMode::PerMask ? "per_mask" : "tensor";
  if (estimate.epsilon) est["epsilon"] = *estimate.epsilon;
  j["estimate"] = est;
  j["threads"] = threads;
  return j;
}

std::string ExperimentConfig::config_hash() const {
  // Output paths and thread counts do not change results, so they stay out
  // of the hash.
  json j = to_json();
  j.erase("output");
  j.erase("threads");
  const std::uint64_t h = fnv1a(j.dump());
  std::ostringstream os;
  os << std::hex << h;
  std::string s = os.str();
  while (s.size() < 12) s.insert(s.begin(), '0');
  return s.substr(0, 12);
}

std::vector<std::uint32_t> ExperimentConfig::frame_seeds_for(std::uint64_t stream_tag) const {
  if (per_qubit_seeds) {
    if (static_cast<int>(per_qubit_seeds->size()) != qubits) {
      throw std::invalid_argument("per_qubit seeds must match the qubit count");
    }
    if (stream_tag == 0) return *per_qubit_seeds;
    std::vector<std::uint32_t> seeds = *per_qubit_seeds;
    for (std::uint32_t& s : seeds) {
      s = static_cast<std::uint32_t>(mix_seed(s, stream_tag) & 0xFFFF);
      if (s == 0) s = 1;
    }
    return seeds;
  }
  return derive_frame_seeds(mix_seed(base_seed, stream_tag), qubits);
}

void ExperimentConfig::validate() const {
  if (qubits < 1 || qubits > kMaxDenseQubits) {
    throw std::invalid_argument("config: qubits out of range");
  }
  if (shots.main < 1 || shots.calibration < 1 || shots.direct < 1) {
    throw std::invalid_argument("config: shot counts must be >= 1");
  }
  if (batch_size < 1) throw std::invalid_argument("config: batch size must be >= 1");
  if (threewave.points < 1) throw std::invalid_argument("config: threewave points must be >= 1");
  if (threewave.t_max <= 0.0) throw std::invalid_argument("config: threewave t_max must be > 0");
  if (threewave.coupling <= 0.0) {
    throw std::invalid_argument("config: threewave coupling must be > 0");
  }
  if (output.hist_bins < 1 || output.hist_range <= 0.0) {
    throw std::invalid_argument("config: invalid histogram spec");
  }
  error_model.validate(qubits);
  if (experiment == ExperimentKind::Estimate && estimate.observable.empty()) {
    throw std::invalid_argument("config: estimate experiment needs an observable");
  }
}

}  // namespace shadowrem
