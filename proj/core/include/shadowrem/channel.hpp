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

#include "shadowrem/pauli.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace shadowrem {

/// Completely positive trace-preserving map in Kraus form.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<Matrix> kraus_ops);

  static QuantumChannel identity(int qubits);
  static QuantumChannel unitary(Matrix u);
  static QuantumChannel bit_flip(double p);
  static QuantumChannel depolarizing(double p);
  static QuantumChannel amplitude_damping(double gamma);
  static QuantumChannel pauli_channel(double p_i, double p_x, double p_y, double p_z);
  /// Tensor product of single-qubit channels, qubit 0 leftmost. The Kraus
  /// set is the cross product, so this caps at 6 qubits.
  static QuantumChannel tensor(const std::vector<QuantumChannel>& factors);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return kraus_.front().rows(); }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply_raw(const Matrix& rho) const;
  /// Adjoint map E^dagger applied to an operator.
  Matrix apply_adjoint_raw(const Matrix& op) const;

 private:
  std::vector<Matrix> kraus_;
  int qubits_;
};

DensityMatrix apply(const QuantumChannel& e, const DensityMatrix& rho);

/// Marks the non-identity positions of a Pauli string.
class Mask {
 public:
  explicit Mask(std::vector<bool> bits);
  static Mask of(const PauliString& p);
  static Mask none(int qubits);
  static Mask single(int qubits, int qubit);

  int qubits() const { return static_cast<int>(bits_.size()); }
  bool bit(int qubit) const { return bits_[static_cast<std::size_t>(qubit)]; }
  int weight() const;
  bool any() const { return weight() > 0; }
  /// The Pauli string with Z on every masked position.
  PauliString z_string() const;
  std::string str() const;

  friend auto operator<=>(const Mask&, const Mask&) = default;

 private:
  std::vector<bool> bits_;
};

/// Diagonal +-1 operator with sigma_z on masked positions.
Matrix mask_operator(const Mask& mask);

/// PTM component Tr[P_row E(P_col)] / 2^Q.
double ptm_element(const QuantumChannel& e, const PauliString& row, const PauliString& col);

/// (1/2^Q) Tr[M E(M)] for the mask operator M.
double suppression_factor(const QuantumChannel& e, const Mask& mask);

/// Average PTM diagonal over the 3^w Pauli strings sharing the mask.
/// Rejects the all-false mask.
double twirled_suppression(const QuantumChannel& e, const Mask& mask);

// ---------------------------------------------------------------------------
// Readout error models
// ---------------------------------------------------------------------------

struct NoError {};

/// Column-stochastic transition matrix on computational-basis outcomes.
struct Confusion {
  Eigen::MatrixXd matrix;
};

/// Independent symmetric bit flips, one probability per qubit.
struct TensorFlip {
  std::vector<double> p;
};

/// Joint flip of a qubit pair with probability `joint`, then independent
/// asymmetric flips p01 (0 -> 1) and p10 (1 -> 0) on each pair qubit.
struct CorrelatedFlip {
  int qubit_a = 0;
  int qubit_b = 1;
  double joint = 0.0;
  double p01 = 0.0;
  double p10 = 0.0;
};

/// Per-qubit unitary y-rotation applied just before readout.
struct Coherent {
  std::vector<double> angles;
};

class ReadoutErrorModel {
 public:
  using Variant = std::variant<NoError, Confusion, TensorFlip, CorrelatedFlip, Coherent>;

  ReadoutErrorModel() : v_(NoError{}) {}
  explicit ReadoutErrorModel(Variant v);

  static ReadoutErrorModel none();
  static ReadoutErrorModel confusion(Eigen::MatrixXd t);
  /// Per-qubit asymmetric rates (a = p(0->1), b = p(1->0)) assembled into
  /// the tensor-product confusion matrix.
  static ReadoutErrorModel confusion_per_qubit(const std::vector<std::pair<double, double>>& rates);
  static ReadoutErrorModel tensor_flip(std::vector<double> p);
  static ReadoutErrorModel correlated_flip(int qubit_a, int qubit_b, double joint, double p01,
                                           double p10);
  static ReadoutErrorModel coherent(std::vector<double> angles);

  const Variant& variant() const { return v_; }
  void validate(int qubits) const;

  /// Model with every error parameter scaled by (1 + rate * t), clamped to
  /// its valid range. Piecewise-constant drift is applied per batch.
  ReadoutErrorModel at_time(double t, double rate) const;

  bool is_none() const { return std::holds_alternative<NoError>(v_); }

 private:
  Variant v_;
};

/// Kraus realization of a readout error model. Confusion-style variants
/// dephase in the computational basis before the classical stochastic map.
/// Caps at 6 qubits (the Kraus set grows with 2^Q); the simulator's
/// measurement path does not go through this form.
QuantumChannel as_channel(const ReadoutErrorModel& model, int qubits);

/// Classical outcome map of a model: probabilities transform as p -> T p,
/// factored as per-qubit 2x2 maps plus an optional dense or pair component.
struct OutcomeMap {
  std::vector<Eigen::Matrix2d> qubit_maps;        // empty entries mean identity
  std::optional<Eigen::MatrixXd> dense;           // full 2^Q map (confusion)
  std::optional<Eigen::Matrix4d> pair;            // correlated pair map
  int pair_a = 0, pair_b = 0;
  std::vector<Eigen::Matrix2cd> pre_rotations;    // coherent models
  bool trivial = true;

  void apply(Eigen::VectorXd& probs, int qubits) const;
};

OutcomeMap outcome_map(const ReadoutErrorModel& model, int qubits);

}  // namespace shadowrem
