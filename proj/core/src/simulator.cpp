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

#include "shadowrem/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace shadowrem {

namespace {

constexpr double kProbTol = 1e-9;

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& chunk_fn) {
  int n_threads = threads;
  if (n_threads <= 0) n_threads = static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads <= 1 || n < 2) {
    chunk_fn(0, n);
    return;
  }
  n_threads = std::min<int>(n_threads, static_cast<int>(n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  const std::size_t per = (n + static_cast<std::size_t>(n_threads) - 1) / static_cast<std::size_t>(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    const std::size_t begin = static_cast<std::size_t>(t) * per;
    const std::size_t end = std::min(n, begin + per);
    if (begin >= end) break;
    pool.emplace_back(chunk_fn, begin, end);
  }
  for (std::thread& t : pool) t.join();
}

// Kronecker chain of per-qubit 2x2 matrices into a preallocated buffer.
void kron_chain(const std::vector<Eigen::Matrix2cd>& factors, Matrix& out, Matrix& scratch) {
  const std::size_t q = factors.size();
  out.resize(2, 2);
  out = factors[0];
  Eigen::Index dim = 2;
  for (std::size_t j = 1; j < q; ++j) {
    scratch.resize(dim * 2, dim * 2);
    const Eigen::Matrix2cd& f = factors[j];
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        const Complex v = out(r, c);
        scratch(2 * r, 2 * c) = v * f(0, 0);
        scratch(2 * r, 2 * c + 1) = v * f(0, 1);
        scratch(2 * r + 1, 2 * c) = v * f(1, 0);
        scratch(2 * r + 1, 2 * c + 1) = v * f(1, 1);
      }
    }
    dim *= 2;
    out.swap(scratch);
  }
}

/// Measurement engine for one (state, error model or channel) pair.
/// measure() is const and thread-safe given one Workspace per thread.
class ShotSimulator {
 public:
  struct Workspace {
    std::vector<Eigen::Matrix2cd> gates;
    Matrix v, scratch, rotated;
    Eigen::VectorXd probs;
    std::vector<Eigen::Matrix2cd> qubit_rho;
  };

  ShotSimulator(const StatePrep& state, int qubits, const ReadoutErrorModel& model)
      : qubits_(qubits), dim_(Eigen::Index(1) << qubits), map_(outcome_map(model, qubits)) {
    if (const auto* prod = std::get_if<ProductState>(&state)) {
      product_factors_ = prod->factors;
    } else {
      rho_ = realize_state(state, qubits).matrix();
    }
  }

  ShotSimulator(const StatePrep& state, int qubits, const QuantumChannel& channel)
      : qubits_(qubits), dim_(Eigen::Index(1) << qubits) {
    if (channel.qubits() != qubits) {
      throw std::invalid_argument("simulator channel dimension mismatch");
    }
    rho_ = realize_state(state, qubits).matrix();
    // Adjoint images E^dag(|b><b|) turn the per-shot Kraus sum into one
    // Hilbert-Schmidt inner product per outcome.
    adjoint_images_.reserve(static_cast<std::size_t>(dim_));
    for (Eigen::Index b = 0; b < dim_; ++b) {
      Matrix proj = Matrix::Zero(dim_, dim_);
      proj(b, b) = 1.0;
      adjoint_images_.push_back(channel.apply_adjoint_raw(proj));
    }
  }

  void apply_prep_flip(double p) {
    if (p <= 0.0) return;
    if (!product_factors_.empty()) {
      for (Eigen::Matrix2cd& f : product_factors_) {
        f = (1.0 - p) * f + p * (pauli_matrix_1q(Pauli::X) * f * pauli_matrix_1q(Pauli::X)).eval();
      }
      return;
    }
    for (int q = 0; q < qubits_; ++q) {
      Matrix x = Matrix::Identity(1, 1);
      for (int j = 0; j < qubits_; ++j) {
        x = kron(x, pauli_matrix_1q(j == q ? Pauli::X : Pauli::I));
      }
      rho_ = (1.0 - p) * rho_ + p * (x * rho_ * x).eval();
    }
  }

  void measure(const MeasurementFrame& frame, RngStream& rng, Workspace& ws,
               std::vector<std::int8_t>& outcomes) const {
    compute_probabilities(frame, ws);
    double total = 0.0;
    for (Eigen::Index b = 0; b < dim_; ++b) {
      double p = ws.probs(b);
      if (p < -kProbTol || p > 1.0 + kProbTol) {
        throw std::runtime_error("measurement probability outside [0, 1]: broken channel");
      }
      if (p < 0.0) p = 0.0;
      ws.probs(b) = p;
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
      throw std::runtime_error("measurement probabilities do not sum to 1");
    }
    const double u = rng.next_unit() * total;
    double acc = 0.0;
    Eigen::Index picked = dim_ - 1;
    for (Eigen::Index b = 0; b < dim_; ++b) {
      acc += ws.probs(b);
      if (u < acc) {
        picked = b;
        break;
      }
    }
    outcomes.resize(static_cast<std::size_t>(qubits_));
    for (int j = 0; j < qubits_; ++j) {
      const int bit = static_cast<int>((picked >> (qubits_ - 1 - j)) & 1);
      outcomes[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(bit == 0 ? 1 : -1);
    }
  }

 private:
  void compute_probabilities(const MeasurementFrame& frame, Workspace& ws) const {
    ws.gates.resize(static_cast<std::size_t>(qubits_));
    for (int j = 0; j < qubits_; ++j) {
      ws.gates[static_cast<std::size_t>(j)] = frame.premeasurement_unitary(j);
      if (!map_.pre_rotations.empty()) {
        ws.gates[static_cast<std::size_t>(j)] =
            map_.pre_rotations[static_cast<std::size_t>(j)] * ws.gates[static_cast<std::size_t>(j)];
      }
    }
    ws.probs.resize(dim_);
    if (!product_factors_.empty()) {
      // Rotate each 2x2 factor and kron the diagonals into the outcome grid.
      ws.qubit_rho.resize(static_cast<std::size_t>(qubits_));
      ws.probs.setOnes();
      for (int j = 0; j < qubits_; ++j) {
        const Eigen::Matrix2cd& g = ws.gates[static_cast<std::size_t>(j)];
        const Eigen::Matrix2cd r = g * product_factors_[static_cast<std::size_t>(j)] * g.adjoint();
        const double p0 = r(0, 0).real();
        const double p1 = r(1, 1).real();
        const Eigen::Index stride = Eigen::Index(1) << (qubits_ - 1 - j);
        for (Eigen::Index b = 0; b < dim_; ++b) {
          ws.probs(b) *= ((b & stride) == 0) ? p0 : p1;
        }
      }
    } else {
      kron_chain(ws.gates, ws.v, ws.scratch);
      ws.rotated.resize(dim_, dim_);
      ws.scratch.resize(dim_, dim_);
      ws.scratch.noalias() = ws.v * rho_;
      ws.rotated.noalias() = ws.scratch * ws.v.adjoint();
      if (!adjoint_images_.empty()) {
        for (Eigen::Index b = 0; b < dim_; ++b) {
          const Matrix& a = adjoint_images_[static_cast<std::size_t>(b)];
          Complex s = 0.0;
          for (Eigen::Index c = 0; c < dim_; ++c) {
            for (Eigen::Index r = 0; r < dim_; ++r) s += a(r, c) * ws.rotated(c, r);
          }
          ws.probs(b) = s.real();
        }
        return;
      }
      for (Eigen::Index b = 0; b < dim_; ++b) ws.probs(b) = ws.rotated(b, b).real();
    }
    map_.apply(ws.probs, qubits_);
  }

  int qubits_;
  Eigen::Index dim_;
  OutcomeMap map_;
  Matrix rho_;
  std::vector<Eigen::Matrix2cd> product_factors_;
  std::vector<Matrix> adjoint_images_;
};

std::uint64_t outcome_stream_seed(const ExperimentPlan& plan, std::size_t batch,
                                  std::size_t shot_in_batch) {
  std::uint64_t s = mix_seed(plan.outcome_seed, plan.origin == BatchOrigin::Main ? 0x6D61696Eull : 0x63616Cull);
  s = mix_seed(s, batch);
  return mix_seed(s, shot_in_batch);
}

std::vector<MeasurementFrame> generate_frames(const ExperimentPlan& plan, bool direct_frames) {
  std::vector<MeasurementFrame> frames;
  frames.reserve(plan.n_shots);
  if (direct_frames) {
    const MeasurementFrame fixed = MeasurementFrame::direct(plan.qubits);
    frames.assign(plan.n_shots, fixed);
    return frames;
  }
  std::vector<Lfsr> streams;
  streams.reserve(plan.frame_seeds.size());
  for (std::uint32_t seed : plan.frame_seeds) streams.emplace_back(seed);
  for (std::size_t s = 0; s < plan.n_shots; ++s) {
    frames.push_back(sample_frame(plan.sampler, streams));
  }
  return frames;
}

double batch_time(std::size_t index, std::size_t n_batches) {
  return n_batches <= 1 ? 0.0 : static_cast<double>(index) / static_cast<double>(n_batches - 1);
}

void execute_plan_stream(const ExperimentPlan& plan, const QuantumChannel* explicit_channel,
                         const RunOptions& opts, const std::vector<double>* slot_times,
                         bool direct_frames, const std::function<void(ShotBatch&&)>& sink) {
  plan.validate();
  const std::size_t n_batches = plan.n_batches();

  std::vector<Lfsr> streams;
  std::optional<MeasurementFrame> fixed_frame;
  if (direct_frames) {
    fixed_frame = MeasurementFrame::direct(plan.qubits);
  } else {
    streams.reserve(plan.frame_seeds.size());
    for (std::uint32_t seed : plan.frame_seeds) streams.emplace_back(seed);
  }

  // Hoist the engine when the channel cannot change between batches.
  std::optional<ShotSimulator> static_engine;
  if (explicit_channel != nullptr) {
    static_engine.emplace(plan.state, plan.qubits, *explicit_channel);
  } else if (plan.drift.rate == 0.0) {
    static_engine.emplace(plan.state, plan.qubits, plan.error_model);
  }
  if (static_engine) static_engine->apply_prep_flip(plan.prep_flip_probability);

  std::size_t offset = 0;
  for (std::size_t b = 0; b < n_batches; ++b) {
    const std::size_t count = std::min(plan.batch_size, plan.n_shots - offset);
    const double t = slot_times != nullptr ? (*slot_times)[b] : batch_time(b, n_batches);

    std::optional<ShotSimulator> drifted_engine;
    const ShotSimulator* engine = nullptr;
    if (static_engine) {
      engine = &*static_engine;
    } else {
      drifted_engine.emplace(plan.state, plan.qubits,
                             plan.error_model.at_time(t, plan.drift.rate));
      drifted_engine->apply_prep_flip(plan.prep_flip_probability);
      engine = &*drifted_engine;
    }

    ShotBatch batch;
    batch.batch_index = b;
    batch.origin = plan.origin;
    batch.drift_time = t;
    batch.records.resize(count);
    for (std::size_t s = 0; s < count; ++s) {
      batch.records[s].frame = direct_frames ? *fixed_frame : sample_frame(plan.sampler, streams);
    }
    parallel_for(count, opts.threads, [&](std::size_t begin, std::size_t end) {
      ShotSimulator::Workspace ws;
      for (std::size_t s = begin; s < end; ++s) {
        RngStream rng(outcome_stream_seed(plan, b, s));
        engine->measure(batch.records[s].frame, rng, ws, batch.records[s].outcomes);
      }
    });
    sink(std::move(batch));
    offset += count;
  }
}

std::vector<ShotBatch> execute_plan(const ExperimentPlan& plan,
                                    const QuantumChannel* explicit_channel,
                                    const RunOptions& opts,
                                    const std::vector<double>* slot_times,
                                    bool direct_frames = false) {
  std::vector<ShotBatch> batches;
  batches.reserve(plan.n_batches());
  execute_plan_stream(plan, explicit_channel, opts, slot_times, direct_frames,
                      [&batches](ShotBatch&& b) { batches.push_back(std::move(b)); });
  return batches;
}

}  // namespace

StatePrep all_zeros_state(int qubits) {
  ProductState s;
  Eigen::Matrix2cd zero;
  zero << 1, 0, 0, 0;
  s.factors.assign(static_cast<std::size_t>(qubits), zero);
  return s;
}

StatePrep all_plus_state(int qubits) {
  ProductState s;
  Eigen::Matrix2cd plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  s.factors.assign(static_cast<std::size_t>(qubits), plus);
  return s;
}

DensityMatrix realize_state(const StatePrep& state, int qubits) {
  if (const auto* dm = std::get_if<DensityMatrix>(&state)) {
    if (dm->qubits() != qubits) throw std::invalid_argument("state qubit count mismatch");
    return *dm;
  }
  if (const auto* prod = std::get_if<ProductState>(&state)) {
    if (static_cast<int>(prod->factors.size()) != qubits) {
      throw std::invalid_argument("state qubit count mismatch");
    }
    return DensityMatrix::product(prod->factors);
  }
  const auto& gates = std::get<std::vector<GateOp>>(state);
  const Eigen::Index dim = Eigen::Index(1) << qubits;
  Vector psi = Vector::Zero(dim);
  psi(0) = 1.0;
  Matrix rho = psi * psi.adjoint();
  for (const GateOp& g : gates) {
    const int gq = qubits_for_dim(g.unitary.rows());
    if (g.first_qubit < 0 || g.first_qubit + gq > qubits) {
      throw std::invalid_argument("gate acts outside the register");
    }
    const Eigen::Index left = Eigen::Index(1) << g.first_qubit;
    const Eigen::Index right = Eigen::Index(1) << (qubits - g.first_qubit - gq);
    Matrix full = kron(kron(Matrix::Identity(left, left), g.unitary),
                       Matrix::Identity(right, right));
    rho = (full * rho * full.adjoint()).eval();
  }
  return DensityMatrix(std::move(rho));
}

void ExperimentPlan::validate() const {
  if (qubits < 1 || qubits > kMaxDenseQubits) {
    throw std::invalid_argument("plan qubit count out of range");
  }
  if (n_shots < 1) throw std::invalid_argument("plan needs n_shots >= 1");
  if (batch_size < 1) throw std::invalid_argument("plan needs batch_size >= 1");
  if (static_cast<int>(frame_seeds.size()) != qubits) {
    throw std::invalid_argument("plan needs one frame seed per qubit");
  }
  for (std::uint32_t s : frame_seeds) {
    if ((s & 0xFFFF) == 0) throw std::invalid_argument("frame seeds must be nonzero");
  }
  if (prep_flip_probability < 0.0 || prep_flip_probability > 1.0) {
    throw std::invalid_argument("prep_flip_probability must lie in [0, 1]");
  }
  error_model.validate(qubits);
}

std::size_t ExperimentPlan::n_batches() const {
  return (n_shots + batch_size - 1) / batch_size;
}

std::vector<std::uint32_t> derive_frame_seeds(std::uint64_t base, int qubits) {
  std::vector<std::uint32_t> seeds;
  seeds.reserve(static_cast<std::size_t>(qubits));
  std::uint64_t counter = 0;
  for (int q = 0; q < qubits; ++q) {
    std::uint32_t s = 0;
    while ((s & 0xFFFF) == 0) {
      s = static_cast<std::uint32_t>(mix_seed(base, 0x5EEDull + counter) & 0xFFFF);
      ++counter;
    }
    seeds.push_back(s);
  }
  return seeds;
}

std::vector<std::int8_t> noisy_measure(const DensityMatrix& rho, const MeasurementFrame& frame,
                                       const QuantumChannel& e, RngStream& rng) {
  if (rho.qubits() != frame.qubits() || rho.qubits() != e.qubits()) {
    throw std::invalid_argument("noisy_measure: dimension mismatch");
  }
  ShotSimulator engine(StatePrep(rho), rho.qubits(), e);
  ShotSimulator::Workspace ws;
  std::vector<std::int8_t> outcomes;
  engine.measure(frame, rng, ws, outcomes);
  return outcomes;
}

std::vector<ShotBatch> run_plan(const ExperimentPlan& plan, const RunOptions& opts) {
  return execute_plan(plan, nullptr, opts, nullptr);
}

std::vector<ShotBatch> run_plan_with_channel(const ExperimentPlan& plan, const QuantumChannel& e,
                                             const RunOptions& opts) {
  if (e.qubits() != plan.qubits) {
    throw std::invalid_argument("run_plan_with_channel: channel dimension mismatch");
  }
  return execute_plan(plan, &e, opts, nullptr);
}

std::vector<ShotBatch> run_plan_direct(const ExperimentPlan& plan, const RunOptions& opts) {
  return execute_plan(plan, nullptr, opts, nullptr, /*direct_frames=*/true);
}

std::vector<bool> interleave_pattern(std::size_t n_main, std::size_t n_cal) {
  std::vector<bool> pattern;
  pattern.reserve(n_main + n_cal);
  std::size_t em = 0, ec = 0;
  while (em < n_main || ec < n_cal) {
    const bool take_main =
        ec >= n_cal || (em < n_main && (em + 1) * n_cal <= (ec + 1) * n_main);
    pattern.push_back(take_main);
    if (take_main) {
      ++em;
    } else {
      ++ec;
    }
  }
  return pattern;
}

std::vector<ShotBatch> merge_plans(const ExperimentPlan& main_plan,
                                   const ExperimentPlan& cal_plan, SchedulePolicy policy,
                                   const RunOptions& opts) {
  if (main_plan.qubits != cal_plan.qubits || main_plan.sampler != cal_plan.sampler) {
    throw std::invalid_argument("merge_plans: plans are incompatible");
  }
  ExperimentPlan main_copy = main_plan;
  main_copy.origin = BatchOrigin::Main;
  ExperimentPlan cal_copy = cal_plan;
  cal_copy.origin = BatchOrigin::Calibration;

  const std::size_t nm = main_copy.n_batches();
  const std::size_t nc = cal_copy.n_batches();
  std::vector<bool> pattern;
  if (policy == SchedulePolicy::Interleaved) {
    pattern = interleave_pattern(nm, nc);
  } else {
    pattern.assign(nc, false);
    pattern.insert(pattern.end(), nm, true);
  }
  const std::size_t total = pattern.size();
  std::vector<double> main_times(nm), cal_times(nc);
  std::size_t im = 0, ic = 0;
  for (std::size_t slot = 0; slot < total; ++slot) {
    const double t = total <= 1 ? 0.0 : static_cast<double>(slot) / static_cast<double>(total - 1);
    if (pattern[slot]) {
      main_times[im++] = t;
    } else {
      cal_times[ic++] = t;
    }
  }
  std::vector<ShotBatch> main_batches = execute_plan(main_copy, nullptr, opts, &main_times);
  std::vector<ShotBatch> cal_batches = execute_plan(cal_copy, nullptr, opts, &cal_times);

  std::vector<ShotBatch> merged;
  merged.reserve(total);
  im = ic = 0;
  for (std::size_t slot = 0; slot < total; ++slot) {
    if (pattern[slot]) {
      merged.push_back(std::move(main_batches[im++]));
    } else {
      merged.push_back(std::move(cal_batches[ic++]));
    }
  }
  return merged;
}

std::vector<ShotBatch> interleave(const ExperimentPlan& main_plan, const ExperimentPlan& cal_plan,
                                  const RunOptions& opts) {
  return merge_plans(main_plan, cal_plan, SchedulePolicy::Interleaved, opts);
}

EstimateResult mean_estimate(std::span<const ShotBatch> batches, const Observable& o,
                             SamplerKind kind, BatchOrigin origin) {
  std::size_t total = 0;
  for (const ShotBatch& b : batches) {
    if (b.origin == origin) total += b.records.size();
  }
  if (total < 2) throw std::invalid_argument("mean_estimate needs at least two shots");
  std::vector<double> values;
  values.reserve(total);
  for (const ShotBatch& b : batches) {
    if (b.origin != origin) continue;
    for (const ShotRecord& rec : b.records) {
      double v = 0.0;
      for (const auto& [p, c] : o.terms()) v += c * single_shot(rec, p, kind);
      values.push_back(v);
    }
  }
  const double n = static_cast<double>(values.size());
  const double mean = pairwise_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t a = 0; a < values.size(); ++a) {
    const double d = values[a] - mean;
    sq[a] = d * d;
  }
  const double var = pairwise_sum(sq) / (n - 1.0);
  EstimateResult r;
  r.value = mean;
  r.std_error = std::sqrt(std::max(0.0, var) / n);
  r.n_shots = values.size();
  r.kind = kind;
  return r;
}

}  // namespace shadowrem
