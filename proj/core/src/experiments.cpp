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

#include "shadowrem/experiments.hpp"

#include "shadowrem/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace shadowrem {

namespace {

constexpr double kPi = std::numbers::pi;

ExperimentPlan base_plan(const ExperimentConfig& cfg, std::uint64_t stream_tag,
                         std::size_t n_shots, StatePrep state, BatchOrigin origin) {
  ExperimentPlan plan;
  plan.state = std::move(state);
  plan.qubits = cfg.qubits;
  plan.n_shots = n_shots;
  plan.sampler = cfg.sampler;
  plan.error_model = cfg.error_model;
  plan.frame_seeds = cfg.frame_seeds_for(stream_tag);
  plan.outcome_seed = mix_seed(cfg.outcome_seed, stream_tag);
  plan.batch_size = cfg.batch_size;
  plan.drift.rate = cfg.drift_rate;
  plan.origin = origin;
  return plan;
}

// ---------------------------------------------------------------------------
// Correlations
// ---------------------------------------------------------------------------

struct PearsonAccumulator {
  Eigen::VectorXd sx;
  Eigen::MatrixXd sxy;
  std::size_t n = 0;

  explicit PearsonAccumulator(int q)
      : sx(Eigen::VectorXd::Zero(q)), sxy(Eigen::MatrixXd::Zero(q, q)) {}

  void add(const Eigen::VectorXd& x) {
    sx += x;
    sxy += x * x.transpose();
    ++n;
  }

  Eigen::MatrixXd pearson() const {
    const double nn = static_cast<double>(n);
    const Eigen::VectorXd mean = sx / nn;
    const Eigen::MatrixXd cov = sxy / nn - mean * mean.transpose();
    const int q = static_cast<int>(sx.size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Identity(q, q);
    for (int j = 0; j < q; ++j) {
      for (int k = 0; k < q; ++k) {
        if (j == k) continue;
        const double denom = std::sqrt(cov(j, j) * cov(k, k));
        c(j, k) = denom > 0.0 ? cov(j, k) / denom : 0.0;
      }
    }
    return c;
  }
};

CorrelationReport correlate_method(const ExperimentConfig& cfg, const std::string& method,
                                   std::uint64_t stream_tag) {
  const int q = cfg.qubits;
  const bool direct = method == "direct";
  ExperimentPlan plan = base_plan(cfg, stream_tag, cfg.shots.main, all_zeros_state(q),
                                  BatchOrigin::Main);
  if (method == "pole") plan.sampler = SamplerKind::PoleConcentrated;
  if (method == "tetrahedral") plan.sampler = SamplerKind::Tetrahedral;

  PearsonAccumulator acc(q);
  Eigen::VectorXd x(q);
  const RunOptions opts{cfg.threads};
  auto consume = [&](ShotBatch&& batch) {
    for (const ShotRecord& rec : batch.records) {
      for (int j = 0; j < q; ++j) {
        const auto& entry = rec.frame.entries[static_cast<std::size_t>(j)];
        const std::int8_t m = rec.outcomes[static_cast<std::size_t>(j)];
        x(j) = direct ? static_cast<double>(m)
                      : single_shot_factor(entry, m, Pauli::Z, plan.sampler);
      }
      acc.add(x);
    }
  };
  if (direct) {
    run_plan_stream_direct(plan, opts, consume);
  } else {
    run_plan_stream(plan, opts, consume);
  }

  CorrelationReport report;
  report.method = method;
  report.pearson = acc.pearson();
  report.n_shots = acc.n;
  report.null_band = 2.0 / std::sqrt(static_cast<double>(acc.n));

  const int bins = cfg.output.hist_bins;
  const double range = cfg.output.hist_range;
  report.hist_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) {
    report.hist_edges[static_cast<std::size_t>(b)] = -range + 2.0 * range * b / bins;
  }
  report.hist_counts.assign(static_cast<std::size_t>(bins), 0);
  for (int j = 0; j < q; ++j) {
    for (int k = j + 1; k < q; ++k) {
      const double v = report.pearson(j, k);
      int b = static_cast<int>(std::floor((v + range) / (2.0 * range) * bins));
      b = std::clamp(b, 0, bins - 1);
      ++report.hist_counts[static_cast<std::size_t>(b)];
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Three-wave
// ---------------------------------------------------------------------------

struct ExactEvolution {
  Eigen::SelfAdjointEigenSolver<Matrix> es;

  explicit ExactEvolution(const Matrix& h) : es(h) {}

  Vector evolve_from_zero(double t) const {
    const Eigen::Index dim = es.eigenvectors().rows();
    Vector phases(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * t));
    }
    Vector e0 = Vector::Zero(dim);
    e0(0) = 1.0;
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * e0;
  }
};

}  // namespace

Matrix three_wave_hamiltonian(double g) {
  if (!std::isfinite(g)) throw std::invalid_argument("coupling must be finite");
  Matrix h = Matrix::Zero(4, 4);
  // Level |k> holds mode occupations (3 - k, k, k); the interaction moves
  // one quantum between the pump mode and the daughter pair.
  for (int k = 1; k <= 3; ++k) {
    const double amp = g * k * std::sqrt(4.0 - k);
    h(k - 1, k) = Complex(0.0, amp);
    h(k, k - 1) = Complex(0.0, -amp);
  }
  return h;
}

std::vector<CorrelationReport> run_correlations(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::Correlations) {
    throw std::invalid_argument("config is not a correlations experiment");
  }
  std::vector<CorrelationReport> reports;
  reports.push_back(correlate_method(cfg, "direct", 1));
  reports.push_back(correlate_method(cfg, "pole", 2));
  reports.push_back(correlate_method(cfg, "tetrahedral", 3));
  return reports;
}

std::vector<ThreewaveRow> run_threewave(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::Threewave) {
    throw std::invalid_argument("config is not a threewave experiment");
  }
  if (cfg.qubits != 2) throw std::invalid_argument("threewave runs on two qubits");
  const Matrix h = three_wave_hamiltonian(cfg.threewave.coupling);
  const ExactEvolution evolution(h);

  // Basis projectors decomposed once; their strings drive the estimators.
  std::vector<Observable> projectors;
  std::vector<PauliString> strings;
  std::vector<Mask> masks;
  for (int k = 0; k < 4; ++k) {
    Matrix proj = Matrix::Zero(4, 4);
    proj(k, k) = 1.0;
    projectors.push_back(decompose(proj));
  }
  for (const auto& [p, c] : projectors[0].terms()) {
    strings.push_back(p);
    masks.push_back(Mask::of(p));
  }

  const RunOptions opts{cfg.threads};
  std::vector<ThreewaveRow> rows;
  for (int i = 0; i < cfg.threewave.points; ++i) {
    const double t = cfg.threewave.points == 1
                         ? cfg.threewave.t_max
                         : cfg.threewave.t_max * i / (cfg.threewave.points - 1);
    const Vector psi = evolution.evolve_from_zero(t);
    const DensityMatrix rho = DensityMatrix::pure(psi);

    const std::uint64_t tag = static_cast<std::uint64_t>(i) * 3;
    ExperimentPlan main_plan =
        base_plan(cfg, tag + 1, cfg.shots.main, StatePrep(rho), BatchOrigin::Main);
    ExperimentPlan cal_plan = base_plan(cfg, tag + 2, cfg.shots.calibration,
                                        all_zeros_state(2), BatchOrigin::Calibration);
    const SchedulePolicy policy =
        cfg.interleaved ? SchedulePolicy::Interleaved : SchedulePolicy::CalibrationFirst;
    const std::vector<ShotBatch> batches = merge_plans(main_plan, cal_plan, policy, opts);

    const auto noisy = estimate_noisy_terms(batches, strings, cfg.sampler);
    const SuppressionTable table = estimate_suppression(batches, masks, cfg.sampler);

    ExperimentPlan direct_plan =
        base_plan(cfg, tag + 3, cfg.shots.direct, StatePrep(rho), BatchOrigin::Main);
    const std::vector<ShotBatch> direct_batches = run_plan_direct(direct_plan, opts);
    Eigen::Vector4d direct_counts = Eigen::Vector4d::Zero();
    std::size_t n_direct = 0;
    for (const ShotBatch& b : direct_batches) {
      for (const ShotRecord& rec : b.records) {
        const int bit0 = rec.outcomes[0] > 0 ? 0 : 1;
        const int bit1 = rec.outcomes[1] > 0 ? 0 : 1;
        direct_counts(2 * bit0 + bit1) += 1.0;
        ++n_direct;
      }
    }
    direct_counts /= static_cast<double>(n_direct);

    for (int k = 0; k < 4; ++k) {
      const MitigationResult m = mitigate(noisy, table, projectors[k]);
      ThreewaveRow row;
      row.t = t;
      row.state = k;
      row.exact = std::norm(psi(k));
      row.direct = direct_counts(k);
      row.mitigated = cfg.output.clip ? std::clamp(m.value, 0.0, 1.0) : m.value;
      row.std_error = m.std_error;
      rows.push_back(row);
    }
  }
  return rows;
}

EstimateReport run_estimate(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::Estimate) {
    throw std::invalid_argument("config is not an estimate experiment");
  }
  Observable obs(cfg.qubits);
  for (const ObservableTermSpec& t : cfg.estimate.observable) {
    const PauliString p = PauliString::from_string(t.pauli);
    if (p.qubits() != cfg.qubits) {
      throw std::invalid_argument("observable term does not match the qubit count");
    }
    obs.add(p, t.coeff);
  }

  StatePrep state = all_zeros_state(cfg.qubits);
  if (cfg.estimate.state == "plus") {
    state = all_plus_state(cfg.qubits);
  } else if (cfg.estimate.state == "bitstring") {
    if (static_cast<int>(cfg.estimate.bits.size()) != cfg.qubits) {
      throw std::invalid_argument("bitstring length must match the qubit count");
    }
    std::uint64_t bits = 0;
    for (char c : cfg.estimate.bits) {
      if (c != '0' && c != '1') throw std::invalid_argument("bitstring must be 0/1");
      bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    }
    state = DensityMatrix::computational_basis(cfg.qubits, bits);
  } else if (cfg.estimate.state == "ghz") {
    const Eigen::Index dim = Eigen::Index(1) << cfg.qubits;
    Vector psi = Vector::Zero(dim);
    psi(0) = psi(dim - 1) = 1.0 / std::sqrt(2.0);
    state = DensityMatrix::pure(psi);
  } else if (cfg.estimate.state != "zeros") {
    throw std::invalid_argument("unknown state '" + cfg.estimate.state + "'");
  }

  ExperimentPlan main_plan = base_plan(cfg, 1, cfg.shots.main, std::move(state),
                                       BatchOrigin::Main);
  ExperimentPlan cal_plan = base_plan(cfg, 2, cfg.shots.calibration,
                                      all_zeros_state(cfg.qubits), BatchOrigin::Calibration);
  const SchedulePolicy policy =
      cfg.interleaved ? SchedulePolicy::Interleaved : SchedulePolicy::CalibrationFirst;
  const RunOptions opts{cfg.threads};
  const std::vector<ShotBatch> batches = merge_plans(main_plan, cal_plan, policy, opts);

  std::vector<PauliString> strings;
  for (const auto& [p, c] : obs.terms()) strings.push_back(p);
  const auto noisy = estimate_noisy_terms(batches, strings, cfg.sampler);

  SuppressionTable table = [&] {
    if (cfg.estimate.mode == SuppressionMode::TensorProduct) {
      std::vector<int> qubits;
      for (int q = 0; q < cfg.qubits; ++q) {
        for (const PauliString& p : strings) {
          if (p.label(q) != Pauli::I) {
            qubits.push_back(q);
            break;
          }
        }
      }
      if (qubits.empty()) qubits.push_back(0);
      return estimate_suppression_tensor(batches, qubits, cfg.sampler);
    }
    std::vector<Mask> masks;
    for (const PauliString& p : strings) {
      const Mask m = Mask::of(p);
      if (std::find(masks.begin(), masks.end(), m) == masks.end()) masks.push_back(m);
    }
    return estimate_suppression(batches, masks, cfg.sampler);
  }();

  const MitigationResult result = mitigate(noisy, table, obs);

  EstimateReport report;
  for (const auto& [p, m] : result.per_term) {
    report.rows.push_back({p.str(), m.raw, m.suppression, m.value, m.std_error});
  }
  report.total = result.value;
  report.total_std_error = result.std_error;
  report.budget = result.budget;
  if (cfg.estimate.epsilon) {
    for (const auto& [p, m] : result.per_term) {
      if (p.is_identity()) continue;
      const double b = optimal_shot_ratio(p, 1.0, cfg.sampler);
      const std::size_t n = total_shots(*cfg.estimate.epsilon, p, m.suppression, b, cfg.sampler);
      report.budget_suggestions.emplace_back(p.str(), b, n);
    }
  }
  return report;
}

std::vector<FrameDumpRow> dump_frames(const ExperimentConfig& cfg, std::size_t count) {
  std::vector<Lfsr> streams;
  for (std::uint32_t s : cfg.frame_seeds_for(1)) streams.emplace_back(s);
  std::vector<FrameDumpRow> rows;
  rows.reserve(count * static_cast<std::size_t>(cfg.qubits));
  for (std::size_t shot = 0; shot < count; ++shot) {
    const MeasurementFrame frame = sample_frame(cfg.sampler, streams);
    for (int q = 0; q < cfg.qubits; ++q) {
      rows.push_back({shot, q, frame.entries[static_cast<std::size_t>(q)]});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Audit
// ---------------------------------------------------------------------------

namespace {

AuditRow make_row(std::string name, double computed, double reference, double tol) {
  AuditRow row;
  row.check = std::move(name);
  row.computed = computed;
  row.reference = reference;
  row.tolerance = tol;
  row.pass = std::abs(computed - reference) <= tol;
  return row;
}

AuditRow make_exceeds_row(std::string name, double computed, double threshold) {
  AuditRow row;
  row.check = std::move(name);
  row.computed = computed;
  row.reference = threshold;
  row.tolerance = 0.0;
  row.pass = computed > threshold;
  return row;
}

double tetra_closure_deviation() {
  const auto& group = tetrahedral_group();
  double worst = 0.0;
  for (const TetraElement& a : group) {
    for (const TetraElement& b : group) {
      const Eigen::Matrix2cd prod = a.unitary * b.unitary;
      double best = 1e9;
      for (const TetraElement& c : group) {
        const Eigen::Matrix2cd m = prod * c.unitary.adjoint();
        const Complex tr = m.trace() / 2.0;
        if (std::abs(tr) < 1e-6) continue;
        const Complex phase = tr / std::abs(tr);
        best = std::min(best,
                        (m - phase * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff());
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

// Two-copy Haar average via the elementwise fourth-moment identity, used as
// the reference for the 2-design check.
Matrix haar_two_copy_twirl(const Matrix& a) {
  const double c1 = 1.0 / 3.0;   // 1/(d^2-1) at d = 2
  const double c2 = 1.0 / 6.0;   // 1/(d(d^2-1))
  Matrix out = Matrix::Zero(4, 4);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int i1p = 0; i1p < 2; ++i1p)
        for (int i2p = 0; i2p < 2; ++i2p) {
          Complex val = 0.0;
          for (int j1 = 0; j1 < 2; ++j1)
            for (int j2 = 0; j2 < 2; ++j2)
              for (int j1p = 0; j1p < 2; ++j1p)
                for (int j2p = 0; j2p < 2; ++j2p) {
                  const double w =
                      c1 * ((i1 == i1p && i2 == i2p && j1 == j1p && j2 == j2p ? 1.0 : 0.0) +
                            (i1 == i2p && i2 == i1p && j1 == j2p && j2 == j1p ? 1.0 : 0.0)) -
                      c2 * ((i1 == i1p && i2 == i2p && j1 == j2p && j2 == j1p ? 1.0 : 0.0) +
                            (i1 == i2p && i2 == i1p && j1 == j1p && j2 == j2p ? 1.0 : 0.0));
                  if (w != 0.0) val += w * a(2 * j1 + j2, 2 * j1p + j2p);
                }
          out(2 * i1 + i2, 2 * i1p + i2p) = val;
        }
  return out;
}

double tetra_two_design_deviation() {
  RngStream rng(20260809);
  const auto& group = tetrahedral_group();
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    Matrix avg = Matrix::Zero(4, 4);
    for (const TetraElement& el : group) {
      const Matrix u2 = kron(el.unitary, el.unitary);
      avg += u2 * rho.matrix() * u2.adjoint();
    }
    avg /= 12.0;
    const Matrix ref = haar_two_copy_twirl(rho.matrix());
    worst = std::max(worst, (avg - ref).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

std::vector<AuditRow> run_audit() {
  std::vector<AuditRow> rows;

  // Second moments by quadrature against the closed forms.
  const double pi2 = kPi * kPi;
  rows.push_back(make_row("spherical_second_moment_xx",
                          second_moment_oracle(Pauli::X, Pauli::X, SamplerKind::Spherical), 3.0,
                          1e-6));
  rows.push_back(make_row("spherical_second_moment_zz",
                          second_moment_oracle(Pauli::Z, Pauli::Z, SamplerKind::Spherical), 3.0,
                          1e-6));
  rows.push_back(make_row("spherical_second_moment_xz",
                          second_moment_oracle(Pauli::X, Pauli::Z, SamplerKind::Spherical), 0.0,
                          1e-6));
  rows.push_back(make_row("tetrahedral_second_moment_yy",
                          second_moment_oracle(Pauli::Y, Pauli::Y, SamplerKind::Tetrahedral), 3.0,
                          1e-9));
  rows.push_back(make_row("pole_second_moment_zz",
                          second_moment_oracle(Pauli::Z, Pauli::Z, SamplerKind::PoleConcentrated),
                          9.0 * pi2 / 32.0, 1e-6));
  rows.push_back(make_row("pole_second_moment_xx",
                          second_moment_oracle(Pauli::X, Pauli::X, SamplerKind::PoleConcentrated),
                          27.0 * pi2 / 64.0, 1e-6));
  rows.push_back(make_row("pole_second_moment_yy",
                          second_moment_oracle(Pauli::Y, Pauli::Y, SamplerKind::PoleConcentrated),
                          27.0 * pi2 / 64.0, 1e-6));
  rows.push_back(make_row("pole_second_moment_ii",
                          second_moment_oracle(Pauli::I, Pauli::I, SamplerKind::PoleConcentrated),
                          pi2 / 8.0, 1e-6));
  rows.push_back(make_row(
      "pole_second_moment_iz_aligned",
      second_moment_oracle(Pauli::I, Pauli::Z, SamplerKind::PoleConcentrated, 1.0),
      3.0 * pi2 / 32.0, 1e-6));
  rows.push_back(make_row(
      "pole_second_moment_ix_aligned",
      second_moment_oracle(Pauli::I, Pauli::X, SamplerKind::PoleConcentrated, 1.0),
      9.0 * pi2 / 64.0, 1e-6));

  rows.push_back(make_row("tetrahedral_closure", tetra_closure_deviation(), 0.0, 1e-10));
  rows.push_back(make_row("tetrahedral_two_design", tetra_two_design_deviation(), 0.0, 1e-9));

  // Suppression factor equals the PTM diagonal element of the mask string.
  {
    RngStream rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const int q = 1 + static_cast<int>(rng.next_u64() % 2);
      const QuantumChannel e = random_channel(q, 2 + static_cast<int>(rng.next_u64() % 3), rng);
      for (std::uint64_t bits = 0; bits < (1ull << q); ++bits) {
        std::vector<bool> mask_bits;
        for (int j = 0; j < q; ++j) mask_bits.push_back(((bits >> (q - 1 - j)) & 1) != 0);
        const Mask mask{mask_bits};
        const PauliString z = mask.z_string();
        worst = std::max(worst,
                         std::abs(suppression_factor(e, mask) - ptm_element(e, z, z)));
      }
    }
    rows.push_back(make_row("suppression_equals_ptm_diagonal", worst, 0.0, 1e-12));
  }

  // Tensor-product channels factorize into per-qubit suppressions.
  {
    RngStream rng(11);
    double worst = 0.0;
    std::vector<QuantumChannel> factors;
    std::vector<double> qubit_factors;
    for (int j = 0; j < 3; ++j) {
      factors.push_back(random_channel(1, 2, rng));
      qubit_factors.push_back(suppression_factor(factors.back(), Mask::single(1, 0)));
    }
    const QuantumChannel e = QuantumChannel::tensor(factors);
    for (std::uint64_t bits = 1; bits < 8; ++bits) {
      std::vector<bool> mask_bits;
      double expected = 1.0;
      for (int j = 0; j < 3; ++j) {
        const bool on = ((bits >> (2 - j)) & 1) != 0;
        mask_bits.push_back(on);
        if (on) expected *= qubit_factors[static_cast<std::size_t>(j)];
      }
      worst = std::max(worst,
                       std::abs(suppression_factor(e, Mask{mask_bits}) - expected));
    }
    rows.push_back(make_row("tensor_channel_factorization", worst, 0.0, 1e-9));
  }

  // Asymmetric single-qubit confusion: suppression is 1 - a - b.
  {
    Eigen::MatrixXd t(2, 2);
    const double a = 0.03, b = 0.05;
    t << 1.0 - a, b, a, 1.0 - b;
    const QuantumChannel e = as_channel(ReadoutErrorModel::confusion(t), 1);
    rows.push_back(make_row("confusion_suppression",
                            suppression_factor(e, Mask::single(1, 0)), 1.0 - a - b, 1e-12));
  }

  // Randomized readout vs twirling: equal for depolarizing channels,
  // different for channels with a non-constant PTM diagonal.
  {
    const QuantumChannel dep = QuantumChannel::depolarizing(0.2);
    const Mask m = Mask::single(1, 0);
    rows.push_back(make_row("twirl_matches_depolarizing",
                            std::abs(twirled_suppression(dep, m) - suppression_factor(dep, m)),
                            0.0, 1e-9));
    const QuantumChannel damp = QuantumChannel::amplitude_damping(0.3);
    rows.push_back(make_exceeds_row(
        "twirl_differs_amplitude_damping",
        std::abs(twirled_suppression(damp, m) - suppression_factor(damp, m)), 1e-2));
    const QuantumChannel pauli = QuantumChannel::pauli_channel(0.8, 0.2, 0.0, 0.0);
    const double tw = twirled_suppression(pauli, m);
    const double sp = suppression_factor(pauli, m);
    rows.push_back(make_row("pauli_channel_twirled_average", tw, (1.0 + 0.6 + 0.6) / 3.0, 1e-12));
    rows.push_back(make_row("pauli_channel_suppression", sp, 0.6, 1e-12));
  }

  // The pole seminorm's literal two-product form undercounts aligned
  // diagonal-cross pairs; the raw quadrature bound exceeds it on
  // O = ZZ + ZI at |00>. Recorded so the gap stays visible.
  {
    const Observable o = Observable::from_terms({{"ZZ", 1.0}, {"ZI", 1.0}});
    double raw = 0.0;
    for (const auto& [pi, ci] : o.terms()) {
      for (const auto& [pk, ck] : o.terms()) {
        double prod = 1.0;
        for (int j = 0; j < 2; ++j) {
          prod *= second_moment_oracle(pi.label(j), pk.label(j),
                                       SamplerKind::PoleConcentrated, 1.0);
        }
        raw += std::abs(ci) * std::abs(ck) * std::abs(prod);
      }
    }
    const double seminorm_sq = seminorm_pole(o) * seminorm_pole(o);
    rows.push_back(make_exceeds_row("pole_raw_bound_exceeds_seminorm_on_mixed_pair",
                                    raw - seminorm_sq, 0.0));
  }

  return rows;
}

}  // namespace shadowrem
