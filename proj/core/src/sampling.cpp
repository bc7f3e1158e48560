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

#include "shadowrem/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shadowrem {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kImag(0.0, 1.0);

Eigen::Matrix2cd axis_rotation(const Eigen::Vector3d& axis, double angle) {
  const Eigen::Vector3d a = axis.normalized();
  Eigen::Matrix2cd h = a.x() * pauli_matrix_1q(Pauli::X) + a.y() * pauli_matrix_1q(Pauli::Y) +
                       a.z() * pauli_matrix_1q(Pauli::Z);
  return std::cos(angle / 2) * Eigen::Matrix2cd::Identity() - kImag * std::sin(angle / 2) * h;
}

Eigen::Vector3d rotated_z(const Eigen::Matrix2cd& u) {
  const Eigen::Matrix2cd m = u * pauli_matrix_1q(Pauli::Z) * u.adjoint();
  return {0.5 * (m * pauli_matrix_1q(Pauli::X)).trace().real(),
          0.5 * (m * pauli_matrix_1q(Pauli::Y)).trace().real(),
          0.5 * (m * pauli_matrix_1q(Pauli::Z)).trace().real()};
}

}  // namespace

const char* sampler_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Spherical: return "spherical";
    case SamplerKind::PoleConcentrated: return "pole";
    case SamplerKind::Tetrahedral: return "tetrahedral";
  }
  return "?";
}

Eigen::Matrix2cd rotation_x(double angle) {
  Eigen::Matrix2cd m;
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  m << c, -kImag * s, -kImag * s, c;
  return m;
}

Eigen::Matrix2cd rotation_z(double angle) {
  Eigen::Matrix2cd m;
  m << std::exp(-kImag * (angle / 2)), 0.0, 0.0, std::exp(kImag * (angle / 2));
  return m;
}

Eigen::Matrix2cd direction_unitary(const Eigen::Vector3d& n) {
  const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
  const double phi = std::atan2(n.y(), n.x());
  // Rz(phi) Ry(theta) sends |0> to the direction (theta, phi).
  Eigen::Matrix2cd ry;
  ry << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
  return rotation_z(phi) * ry;
}

VirtualZPhases virtual_z_decompose(const Eigen::Matrix2cd& v) {
  const Complex det = v.determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-9) {
    throw std::invalid_argument("virtual_z_decompose expects a unitary matrix");
  }
  const Eigen::Matrix2cd su = v / std::sqrt(det);
  // ZYZ Euler angles of su = Rz(phi) Ry(theta) Rz(lambda).
  const double theta = 2.0 * std::atan2(std::abs(su(1, 0)), std::abs(su(0, 0)));
  const double arg_sum = std::abs(su(1, 1)) > 1e-12 ? std::arg(su(1, 1)) : 0.0;
  const double arg_diff = std::abs(su(1, 0)) > 1e-12 ? std::arg(su(1, 0)) : 0.0;
  const double lambda = arg_sum - arg_diff;
  // v ~ Rz(phi + pi) Rx(pi/2) Rz(theta + pi) Rx(pi/2) Rz(lambda); the
  // leading Rz is the dropped gamma.
  return {lambda, theta + kPi};
}

Eigen::Matrix2cd virtual_z_unitary(const VirtualZPhases& phases) {
  static const Eigen::Matrix2cd x90 = rotation_x(kPi / 2);
  return x90 * rotation_z(phases.beta) * x90 * rotation_z(phases.alpha);
}

Eigen::Matrix2cd MeasurementFrame::premeasurement_unitary(int qubit) const {
  return virtual_z_unitary(entries[static_cast<std::size_t>(qubit)].phases);
}

MeasurementFrame MeasurementFrame::direct(int qubits) {
  MeasurementFrame frame;
  frame.kind = SamplerKind::Spherical;
  frame.entries.resize(static_cast<std::size_t>(qubits));
  for (FrameEntry& e : frame.entries) {
    e.phases = virtual_z_decompose(Eigen::Matrix2cd::Identity());
  }
  return frame;
}

const std::array<TetraElement, 12>& tetrahedral_group() {
  static const std::array<TetraElement, 12> group = [] {
    std::array<TetraElement, 12> g;
    std::size_t idx = 0;
    auto put = [&g, &idx](const Eigen::Matrix2cd& u) {
      g[idx].unitary = u;
      g[idx].direction = rotated_z(u);
      g[idx].phases = virtual_z_decompose(u.adjoint());
      ++idx;
    };
    put(Eigen::Matrix2cd::Identity());
    const Eigen::Vector3d diagonals[4] = {
        {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    for (const Eigen::Vector3d& d : diagonals) {
      put(axis_rotation(d, 2.0 * kPi / 3.0));
      put(axis_rotation(d, -2.0 * kPi / 3.0));
    }
    put(axis_rotation({1, 0, 0}, kPi));
    put(axis_rotation({0, 1, 0}, kPi));
    put(axis_rotation({0, 0, 1}, kPi));
    return g;
  }();
  return group;
}

MeasurementFrame sample_frame(SamplerKind kind, std::span<Lfsr> rngs) {
  if (rngs.empty()) throw std::invalid_argument("sample_frame needs at least one stream");
  MeasurementFrame frame;
  frame.kind = kind;
  frame.entries.resize(rngs.size());
  for (std::size_t q = 0; q < rngs.size(); ++q) {
    Lfsr& rng = rngs[q];
    FrameEntry& e = frame.entries[q];
    switch (kind) {
      case SamplerKind::Spherical: {
        const double z = 2.0 * rng.next_unit() - 1.0;
        const double phi = 2.0 * kPi * rng.next_unit();
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        e.direction = {s * std::cos(phi), s * std::sin(phi), z};
        e.theta = std::acos(std::clamp(z, -1.0, 1.0));
        e.phi = phi;
        e.weight = 1.0;
        e.phases = virtual_z_decompose(direction_unitary(e.direction).adjoint());
        break;
      }
      case SamplerKind::PoleConcentrated: {
        const double theta = kPi * rng.next_unit();
        const double phi = 2.0 * kPi * rng.next_unit();
        const double s = std::sin(theta);
        e.direction = {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
        e.theta = theta;
        e.phi = phi;
        e.weight = (kPi / 2.0) * s;
        e.phases = virtual_z_decompose(direction_unitary(e.direction).adjoint());
        break;
      }
      case SamplerKind::Tetrahedral: {
        // Reject words in the top partial block so the index is exactly
        // uniform over 0..11.
        const std::uint64_t range = rng.word_range();
        const std::uint64_t limit = range - (range % 12);
        std::uint32_t w = rng.next_word();
        while (w >= limit) w = rng.next_word();
        const int index = static_cast<int>(w % 12);
        const TetraElement& el = tetrahedral_group()[static_cast<std::size_t>(index)];
        e.direction = el.direction;
        e.theta = std::acos(std::clamp(el.direction.z(), -1.0, 1.0));
        e.phi = std::atan2(el.direction.y(), el.direction.x());
        e.weight = 1.0;
        e.tetra_index = index;
        e.phases = el.phases;
        break;
      }
    }
  }
  return frame;
}

}  // namespace shadowrem
