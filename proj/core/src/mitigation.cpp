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

#include "shadowrem/mitigation.hpp"

#include <cmath>
#include <stdexcept>

namespace shadowrem {

namespace {

TermEstimate summarize(std::span<const double> values, SamplerKind) {
  if (values.size() < 2) {
    throw std::invalid_argument("estimation needs at least two shots");
  }
  const double n = static_cast<double>(values.size());
  const double mean = pairwise_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / (n - 1.0);
  return {mean, std::sqrt(std::max(0.0, var) / n), values.size()};
}

std::size_t count_records(std::span<const ShotBatch> batches, BatchOrigin origin) {
  std::size_t total = 0;
  for (const ShotBatch& b : batches) {
    if (b.origin == origin) total += b.records.size();
  }
  return total;
}

}  // namespace

SuppressionTable SuppressionTable::per_mask(std::map<Mask, TermEstimate> entries) {
  if (entries.empty()) throw std::invalid_argument("empty suppression table");
  SuppressionTable t;
  t.mode_ = SuppressionMode::PerMask;
  t.qubits_ = entries.begin()->first.qubits();
  t.per_mask_ = std::move(entries);
  return t;
}

SuppressionTable SuppressionTable::tensor_product(std::map<int, TermEstimate> factors,
                                                  int qubits) {
  SuppressionTable t;
  t.mode_ = SuppressionMode::TensorProduct;
  t.qubits_ = qubits;
  t.per_qubit_ = std::move(factors);
  return t;
}

TermEstimate SuppressionTable::lookup(const Mask& mask) const {
  if (mode_ == SuppressionMode::PerMask) {
    auto it = per_mask_.find(mask);
    if (it == per_mask_.end()) {
      throw std::invalid_argument("mask " + mask.str() + " missing from the suppression table");
    }
    return it->second;
  }
  // Product over masked qubits; variance by first-order propagation.
  double value = 1.0;
  double rel_var = 0.0;
  std::size_t n = 0;
  for (int q = 0; q < mask.qubits(); ++q) {
    if (!mask.bit(q)) continue;
    auto it = per_qubit_.find(q);
    if (it == per_qubit_.end()) {
      throw std::invalid_argument("qubit factor missing from the suppression table");
    }
    const TermEstimate& f = it->second;
    value *= f.value;
    if (f.value != 0.0) rel_var += f.variance() / (f.value * f.value);
    n = n == 0 ? f.n_shots : std::min(n, f.n_shots);
  }
  TermEstimate out;
  out.value = value;
  out.std_error = std::abs(value) * std::sqrt(rel_var);
  out.n_shots = n;
  return out;
}

UnmitigableTermError::UnmitigableTermError(const PauliString& term, double suppression)
    : std::runtime_error("term " + term.str() + " is unmitigable: |suppression| = " +
                         std::to_string(std::abs(suppression)) + " below the floor"),
      term_(term),
      suppression_(suppression) {}

std::map<PauliString, TermEstimate> estimate_noisy_terms(std::span<const ShotBatch> batches,
                                                         std::span<const PauliString> terms,
                                                         SamplerKind kind) {
  if (terms.empty()) throw std::invalid_argument("no terms to estimate");
  const std::size_t total = count_records(batches, BatchOrigin::Main);
  if (total == 0) throw std::invalid_argument("no main batches to estimate from");
  std::vector<std::vector<double>> values(terms.size());
  for (auto& v : values) v.reserve(total);
  for (const ShotBatch& b : batches) {
    if (b.origin != BatchOrigin::Main) continue;
    for (const ShotRecord& rec : b.records) {
      for (std::size_t t = 0; t < terms.size(); ++t) {
        values[t].push_back(single_shot(rec, terms[t], kind));
      }
    }
  }
  std::map<PauliString, TermEstimate> out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    out[terms[t]] = summarize(values[t], kind);
  }
  return out;
}

SuppressionTable estimate_suppression(std::span<const ShotBatch> batches,
                                      std::span<const Mask> masks, SamplerKind kind) {
  if (masks.empty()) throw std::invalid_argument("no masks to calibrate");
  const std::size_t total = count_records(batches, BatchOrigin::Calibration);
  if (total == 0) throw std::invalid_argument("no calibration batches");
  std::vector<PauliString> strings;
  strings.reserve(masks.size());
  for (const Mask& m : masks) strings.push_back(m.z_string());
  std::vector<std::vector<double>> values(masks.size());
  for (auto& v : values) v.reserve(total);
  for (const ShotBatch& b : batches) {
    if (b.origin != BatchOrigin::Calibration) continue;
    for (const ShotRecord& rec : b.records) {
      for (std::size_t t = 0; t < strings.size(); ++t) {
        values[t].push_back(single_shot(rec, strings[t], kind));
      }
    }
  }
  std::map<Mask, TermEstimate> entries;
  for (std::size_t t = 0; t < masks.size(); ++t) {
    entries[masks[t]] = summarize(values[t], kind);
  }
  return SuppressionTable::per_mask(std::move(entries));
}

SuppressionTable estimate_suppression_tensor(std::span<const ShotBatch> batches,
                                             std::span<const int> qubits, SamplerKind kind) {
  if (qubits.empty()) throw std::invalid_argument("no qubits to calibrate");
  const std::size_t total = count_records(batches, BatchOrigin::Calibration);
  if (total == 0) throw std::invalid_argument("no calibration batches");
  std::vector<std::vector<double>> values(qubits.size());
  for (auto& v : values) v.reserve(total);
  int register_qubits = 0;
  for (const ShotBatch& b : batches) {
    if (b.origin != BatchOrigin::Calibration) continue;
    for (const ShotRecord& rec : b.records) {
      register_qubits = rec.frame.qubits();
      for (std::size_t t = 0; t < qubits.size(); ++t) {
        const int q = qubits[t];
        values[t].push_back(single_shot_factor(rec.frame.entries[static_cast<std::size_t>(q)],
                                               rec.outcomes[static_cast<std::size_t>(q)],
                                               Pauli::Z, kind));
      }
    }
  }
  std::map<int, TermEstimate> factors;
  for (std::size_t t = 0; t < qubits.size(); ++t) {
    factors[qubits[t]] = summarize(values[t], kind);
  }
  return SuppressionTable::tensor_product(std::move(factors), register_qubits);
}

double ratio_variance(const ValueVariance& f_noisy, const ValueVariance& f_supp) {
  if (f_supp.value == 0.0) throw std::invalid_argument("ratio_variance: zero suppression");
  const double s2 = f_supp.value * f_supp.value;
  // (f_n/f_s)^2 (var_n/f_n^2 + var_s/f_s^2), written so the f_n -> 0 limit
  // reduces to var_n / f_s^2.
  return f_noisy.variance / s2 + f_noisy.value * f_noisy.value * f_supp.variance / (s2 * s2);
}

MitigationResult mitigate(const std::map<PauliString, TermEstimate>& noisy,
                          const SuppressionTable& table, const Observable& o,
                          const MitigationOptions& options) {
  MitigationResult result;
  result.mode = table.mode();
  double total = 0.0;
  double total_var = 0.0;
  std::size_t n_main = 0, n_cal = 0;
  for (const auto& [term, coeff] : o.terms()) {
    auto it = noisy.find(term);
    if (it == noisy.end()) {
      throw std::invalid_argument("term " + term.str() + " missing from the noisy estimates");
    }
    const TermEstimate& f_n = it->second;
    const TermEstimate f_s = table.lookup(Mask::of(term));
    if (std::abs(f_s.value) < options.suppression_floor) {
      throw UnmitigableTermError(term, f_s.value);
    }
    MitigatedTerm m;
    m.raw = f_n.value;
    m.suppression = f_s.value;
    m.value = f_n.value / f_s.value;
    m.std_error = std::sqrt(
        ratio_variance({f_n.value, f_n.variance()}, {f_s.value, f_s.variance()}));
    result.per_term[term] = m;
    total += coeff * m.value;
    total_var += coeff * coeff * m.std_error * m.std_error;
    n_main = std::max(n_main, f_n.n_shots);
    n_cal = std::max(n_cal, f_s.n_shots);
  }
  result.value = total;
  result.std_error = std::sqrt(total_var);
  result.budget.n_main = n_main;
  result.budget.n_cal = n_cal;
  result.budget.ratio = n_main > 0 ? static_cast<double>(n_cal) / static_cast<double>(n_main) : 0.0;
  return result;
}

double optimal_shot_ratio(const PauliString& p, double expected, SamplerKind kind,
                          double min_ratio) {
  if (std::abs(expected) > 1.0) {
    throw std::invalid_argument("expected Tr[rho P] must lie in [-1, 1]");
  }
  Observable term(p.qubits());
  term.add(p, 1.0);
  Observable mask_term(p.qubits());
  mask_term.add(Mask::of(p).z_string(), 1.0);
  const bool pole = kind == SamplerKind::PoleConcentrated;
  const double norm_p = pole ? seminorm_pole(term) : seminorm_spherical(term);
  const double norm_m = pole ? seminorm_pole(mask_term) : seminorm_spherical(mask_term);
  if (norm_p == 0.0) {
    throw std::invalid_argument("optimal_shot_ratio: term has zero seminorm");
  }
  const double b = expected * expected * norm_m * norm_m / (norm_p * norm_p);
  return std::max(b, min_ratio);
}

std::size_t total_shots(double epsilon, const PauliString& p, double suppression, double b,
                        SamplerKind kind) {
  if (epsilon <= 0.0) throw std::invalid_argument("total_shots needs epsilon > 0");
  if (suppression == 0.0) throw std::invalid_argument("total_shots needs nonzero suppression");
  if (b < 0.0) throw std::invalid_argument("total_shots needs b >= 0");
  Observable term(p.qubits());
  term.add(p, 1.0);
  const bool pole = kind == SamplerKind::PoleConcentrated;
  const double norm_p = pole ? seminorm_pole(term) : seminorm_spherical(term);
  const double n = 2.0 * norm_p * norm_p * (1.0 + b) /
                   (epsilon * epsilon * suppression * suppression);
  if (!(n < 9e18)) throw std::overflow_error("total_shots: budget overflows");
  return static_cast<std::size_t>(std::ceil(n));
}

}  // namespace shadowrem
