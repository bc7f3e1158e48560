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

#include <Eigen/Dense>

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace shadowrem {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Single-qubit Pauli labels. Ordering matches the index convention
/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
const Eigen::Matrix2cd& pauli_matrix_1q(Pauli p);

/// Tensor product of single-qubit Paulis. Qubit 0 is the leftmost tensor
/// factor everywhere in this library; basis index bit 0 is the most
/// significant bit of the computational-basis index.
class PauliString {
 public:
  explicit PauliString(std::vector<Pauli> labels);
  static PauliString identity(int qubits);
  static PauliString single(int qubits, int qubit, Pauli p);
  /// Parses strings like "XZI" or "IIZY".
  static PauliString from_string(std::string_view s);

  int qubits() const { return static_cast<int>(labels_.size()); }
  Pauli label(int qubit) const { return labels_[static_cast<std::size_t>(qubit)]; }
  const std::vector<Pauli>& labels() const { return labels_; }

  /// Number of non-identity positions.
  int weight() const;
  bool is_identity() const { return weight() == 0; }
  std::string str() const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> labels_;
};

/// Real linear combination of Pauli strings on a common register.
class Observable {
 public:
  Observable() = default;
  explicit Observable(int qubits) : qubits_(qubits) {}

  /// Adds coeff * p, merging with an existing term for the same string.
  void add(const PauliString& p, double coeff);
  static Observable from_terms(std::initializer_list<std::pair<std::string_view, double>> terms);

  int qubits() const { return qubits_; }
  std::size_t n_terms() const { return terms_.size(); }
  const std::map<PauliString, double>& terms() const { return terms_; }
  double coefficient(const PauliString& p) const;

  Matrix to_matrix() const;

 private:
  int qubits_ = 0;
  std::map<PauliString, double> terms_;
};

/// Dense 2^Q x 2^Q density matrix. Construction checks hermiticity and
/// trace to 1e-10 and, for Q <= 8, eigenvalues >= -1e-9.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);

  static DensityMatrix pure(const Vector& state);
  static DensityMatrix computational_basis(int qubits, std::uint64_t bits);
  static DensityMatrix maximally_mixed(int qubits);
  /// Tensor product of single-qubit density matrices, qubit 0 leftmost.
  static DensityMatrix product(const std::vector<Eigen::Matrix2cd>& factors);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
  int qubits_;
};

/// Maximum qubit count for dense exact objects.
inline constexpr int kMaxDenseQubits = 12;

/// Dense matrix of a Pauli string (caps at kMaxDenseQubits).
Matrix pauli_matrix(const PauliString& p);

/// Tr[P * O] without materializing P; O must be 2^Q x 2^Q.
Complex pauli_trace_product(const PauliString& p, const Matrix& o);

/// Pauli decomposition of a Hermitian matrix, c = Tr[P O] / 2^Q.
/// Rejects non-Hermitian input (tolerance 1e-9). Caps at Q <= 8.
Observable decompose(const Matrix& o);

/// Tr[rho O]; checks the imaginary residue stays below 1e-9.
double expectation_exact(const DensityMatrix& rho, const Observable& o);
double expectation_exact(const DensityMatrix& rho, const PauliString& p);

/// A ⊗ B with A as the major (leftmost) factor.
Matrix kron(const Matrix& a, const Matrix& b);

int qubits_for_dim(Eigen::Index dim);

}  // namespace shadowrem
