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

#include "shadowrem/lfsr.hpp"
#include "shadowrem/pauli.hpp"

#include <array>
#include <span>

namespace shadowrem {

enum class SamplerKind { Spherical, PoleConcentrated, Tetrahedral };

const char* sampler_name(SamplerKind kind);

/// The two retained phases of the ZXZXZ decomposition
/// U = Rz(gamma) Rx(pi/2) Rz(beta) Rx(pi/2) Rz(alpha); the final Rz(gamma)
/// cannot change Z-basis statistics and is dropped.
struct VirtualZPhases {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Per-qubit specification of one random measurement.
struct FrameEntry {
  Eigen::Vector3d direction{0.0, 0.0, 1.0};  // Bloch axis measured
  double theta = 0.0;                        // polar angle as drawn
  double phi = 0.0;                          // azimuth as drawn
  double weight = 1.0;                       // (pi/2) sin(theta) for pole sampling, else 1
  int tetra_index = -1;                      // group element, tetrahedral kind only
  VirtualZPhases phases;                     // of the pre-measurement rotation
};

struct MeasurementFrame {
  SamplerKind kind = SamplerKind::Spherical;
  std::vector<FrameEntry> entries;

  int qubits() const { return static_cast<int>(entries.size()); }
  /// Reconstructed gate Rx(pi/2) Rz(beta) Rx(pi/2) Rz(alpha) for one qubit.
  Eigen::Matrix2cd premeasurement_unitary(int qubit) const;

  /// Frame measuring +z on every qubit (direct readout).
  static MeasurementFrame direct(int qubits);
};

struct TetraElement {
  Eigen::Matrix2cd unitary;      // SU(2) lift of the rotation
  Eigen::Vector3d direction;     // rotation applied to +z
  VirtualZPhases phases;         // decomposition of unitary^dagger
};

/// The 12 rotations of the proper tetrahedral group lifted to SU(2):
/// identity, eight +-2pi/3 turns about the cube diagonals, three pi turns
/// about the coordinate axes. Element 0 is the identity (direction +z).
const std::array<TetraElement, 12>& tetrahedral_group();

Eigen::Matrix2cd rotation_x(double angle);
Eigen::Matrix2cd rotation_z(double angle);

/// Unitary mapping |0> onto the Bloch direction n (so U sigma_z U^dag = sigma.n).
Eigen::Matrix2cd direction_unitary(const Eigen::Vector3d& n);

/// Phases (alpha, beta) with Rx(pi/2) Rz(beta) Rx(pi/2) Rz(alpha) equal to v
/// up to a final Z rotation and global phase.
VirtualZPhases virtual_z_decompose(const Eigen::Matrix2cd& v);

Eigen::Matrix2cd virtual_z_unitary(const VirtualZPhases& phases);

/// Draws one frame, consuming one per-qubit pseudo-random stream each.
/// Spherical: cos(theta) and phi uniform. Pole-concentrated: theta and phi
/// uniform on their intervals, weight (pi/2) sin(theta). Tetrahedral:
/// uniform group index via rejection on the top partial block.
MeasurementFrame sample_frame(SamplerKind kind, std::span<Lfsr> rngs);

}  // namespace shadowrem
