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

#include "shadowrem/estimator.hpp"

#include "shadowrem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shadowrem {

namespace {

constexpr double kPi = std::numbers::pi;

int axis_of(Pauli p) { return static_cast<int>(p) - 1; }

// Per-qubit second-moment constants of the pole-concentrated estimator.
double pole_diag_constant(Pauli a, Pauli b) {
  if (a != b) return 0.0;
  switch (a) {
    case Pauli::I: return kPi * kPi / 8.0;
    case Pauli::X:
    case Pauli::Y: return 27.0 * kPi * kPi / 64.0;
    case Pauli::Z: return 9.0 * kPi * kPi / 32.0;
  }
  return 0.0;
}

double pole_cross_constant(Pauli a, Pauli b) {
  if ((a == Pauli::I) == (b == Pauli::I)) return 0.0;
  const Pauli other = a == Pauli::I ? b : a;
  switch (other) {
    case Pauli::X:
    case Pauli::Y: return 9.0 * kPi * kPi / 64.0;
    case Pauli::Z: return 3.0 * kPi * kPi / 32.0;
    default: return 0.0;
  }
}

}  // namespace

double single_shot_factor(const FrameEntry& entry, std::int8_t outcome, Pauli label,
                          SamplerKind kind) {
  double factor = 1.0;
  if (label != Pauli::I) {
    factor = 3.0 * static_cast<double>(outcome) * entry.direction(axis_of(label));
  }
  if (kind == SamplerKind::PoleConcentrated) factor *= entry.weight;
  return factor;
}

double single_shot(const ShotRecord& shot, const PauliString& p, SamplerKind kind) {
  const int q = p.qubits();
  if (shot.frame.qubits() != q || static_cast<int>(shot.outcomes.size()) != q) {
    throw std::invalid_argument("single_shot: qubit count mismatch");
  }
  double product = 1.0;
  for (int j = 0; j < q; ++j) {
    product *= single_shot_factor(shot.frame.entries[static_cast<std::size_t>(j)],
                                  shot.outcomes[static_cast<std::size_t>(j)], p.label(j), kind);
  }
  return product;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

EstimateResult mean_estimate(std::span<const ShotRecord> shots, const Observable& o,
                             SamplerKind kind) {
  if (shots.empty()) throw std::invalid_argument("mean_estimate: empty shot list");
  if (shots.size() < 2) throw std::invalid_argument("mean_estimate needs at least two shots");
  std::vector<double> values(shots.size());
  for (std::size_t a = 0; a < shots.size(); ++a) {
    double v = 0.0;
    for (const auto& [p, c] : o.terms()) v += c * single_shot(shots[a], p, kind);
    values[a] = v;
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

double seminorm_spherical(const Observable& o) {
  double total = 0.0;
  for (const auto& [pi, ci] : o.terms()) {
    if (pi.is_identity()) continue;
    for (const auto& [pk, ck] : o.terms()) {
      if (pk.is_identity()) continue;
      int overlap = 0;
      bool conflict = false;
      for (int j = 0; j < pi.qubits(); ++j) {
        const Pauli a = pi.label(j), b = pk.label(j);
        if (a != Pauli::I && b != Pauli::I) {
          if (a != b) {
            conflict = true;
            break;
          }
          ++overlap;
        }
      }
      if (conflict) continue;
      total += std::pow(3.0, overlap) * std::abs(ci) * std::abs(ck);
    }
  }
  return std::sqrt(total);
}

double seminorm_pole(const Observable& o) {
  double total = 0.0;
  for (const auto& [pi, ci] : o.terms()) {
    for (const auto& [pk, ck] : o.terms()) {
      double diag = 1.0, cross = 1.0;
      for (int j = 0; j < pi.qubits(); ++j) {
        diag *= pole_diag_constant(pi.label(j), pk.label(j));
        cross *= pole_cross_constant(pi.label(j), pk.label(j));
      }
      total += std::abs(ci) * std::abs(ck) * std::abs(diag + cross);
    }
  }
  return std::sqrt(total);
}

double variance_bound(const Observable& o, SamplerKind kind, std::size_t n) {
  if (n < 1) throw std::invalid_argument("variance_bound needs n >= 1");
  const double s = kind == SamplerKind::PoleConcentrated ? seminorm_pole(o) : seminorm_spherical(o);
  return s * s / static_cast<double>(n);
}

double second_moment_oracle(Pauli r, Pauli s, SamplerKind kind, double tr_rho_sigma) {
  // Integrand after summing the outcome m: with f_r = 1 (identity) or
  // 3 m n_r, and the state's Bloch vector t,
  //   both non-identity -> 9 n_r n_s
  //   exactly one identity -> 3 n_s (t . n)
  //   both identity -> 1
  // Pole-concentrated factors carry weight^2 = (pi/2 sin theta)^2.
  const bool ri = r == Pauli::I, si = s == Pauli::I;
  const Pauli nontrivial = ri ? s : r;
  auto outcome_summed = [&](const Eigen::Vector3d& n) {
    if (ri && si) return 1.0;
    if (!ri && !si) return 9.0 * n(axis_of(r)) * n(axis_of(s));
    // Only the sigma_s component of the state survives the angular average;
    // the caller supplies Tr[rho sigma_s] for the non-identity index.
    const double t_dot_n = tr_rho_sigma * n(axis_of(nontrivial));
    return 3.0 * n(axis_of(nontrivial)) * t_dot_n;
  };
  switch (kind) {
    case SamplerKind::Tetrahedral: {
      double sum = 0.0;
      for (const TetraElement& el : tetrahedral_group()) sum += outcome_summed(el.direction);
      return sum / 12.0;
    }
    case SamplerKind::Spherical: {
      return integrate2d(
                 [&](double z, double phi) {
                   const double sn = std::sqrt(std::max(0.0, 1.0 - z * z));
                   return outcome_summed({sn * std::cos(phi), sn * std::sin(phi), z});
                 },
                 -1.0, 1.0, 0.0, 2.0 * kPi, 200) /
             (4.0 * kPi);
    }
    case SamplerKind::PoleConcentrated: {
      return integrate2d(
                 [&](double theta, double phi) {
                   const double sn = std::sin(theta);
                   const double w2 = (kPi / 2.0) * sn * (kPi / 2.0) * sn;
                   return w2 * outcome_summed({sn * std::cos(phi), sn * std::sin(phi),
                                               std::cos(theta)});
                 },
                 0.0, kPi, 0.0, 2.0 * kPi, 200) /
             (2.0 * kPi * kPi);
    }
  }
  throw std::logic_error("unreachable sampler kind");
}

}  // namespace shadowrem
