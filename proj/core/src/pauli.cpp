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

#include "shadowrem/pauli.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace shadowrem {

namespace {

constexpr double kTypeTol = 1e-10;
constexpr double kOpTol = 1e-9;

Eigen::Matrix2cd make_pauli(Pauli p) {
  Eigen::Matrix2cd m;
  const Complex i(0.0, 1.0);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

const Eigen::Matrix2cd& pauli_matrix_1q(Pauli p) {
  static const Eigen::Matrix2cd mats[4] = {make_pauli(Pauli::I), make_pauli(Pauli::X),
                                           make_pauli(Pauli::Y), make_pauli(Pauli::Z)};
  return mats[static_cast<int>(p)];
}

PauliString::PauliString(std::vector<Pauli> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw std::invalid_argument("PauliString requires at least one qubit");
  }
}

PauliString PauliString::identity(int qubits) {
  return PauliString(std::vector<Pauli>(static_cast<std::size_t>(qubits), Pauli::I));
}

PauliString PauliString::single(int qubits, int qubit, Pauli p) {
  if (qubit < 0 || qubit >= qubits) {
    throw std::invalid_argument("PauliString::single: qubit index out of range");
  }
  std::vector<Pauli> labels(static_cast<std::size_t>(qubits), Pauli::I);
  labels[static_cast<std::size_t>(qubit)] = p;
  return PauliString(std::move(labels));
}

PauliString PauliString::from_string(std::string_view s) {
  std::vector<Pauli> labels;
  labels.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'I': case 'i': labels.push_back(Pauli::I); break;
      case 'X': case 'x': labels.push_back(Pauli::X); break;
      case 'Y': case 'y': labels.push_back(Pauli::Y); break;
      case 'Z': case 'z': labels.push_back(Pauli::Z); break;
      default:
        throw std::invalid_argument(std::string("invalid Pauli label '") + c + "'");
    }
  }
  return PauliString(std::move(labels));
}

int PauliString::weight() const {
  int w = 0;
  for (Pauli p : labels_) {
    if (p != Pauli::I) ++w;
  }
  return w;
}

std::string PauliString::str() const {
  std::string s;
  s.reserve(labels_.size());
  for (Pauli p : labels_) s.push_back(pauli_char(p));
  return s;
}

void Observable::add(const PauliString& p, double coeff) {
  if (!std::isfinite(coeff)) {
    throw std::invalid_argument("Observable coefficients must be finite");
  }
  if (qubits_ == 0) {
    qubits_ = p.qubits();
  } else if (p.qubits() != qubits_) {
    throw std::invalid_argument("Observable terms must share the qubit count");
  }
  auto [it, inserted] = terms_.emplace(p, coeff);
  if (!inserted) it->second += coeff;
}

Observable Observable::from_terms(
    std::initializer_list<std::pair<std::string_view, double>> terms) {
  Observable o;
  for (const auto& [s, c] : terms) o.add(PauliString::from_string(s), c);
  return o;
}

double Observable::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0.0 : it->second;
}

Matrix Observable::to_matrix() const {
  const Eigen::Index dim = Eigen::Index(1) << qubits_;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& [p, c] : terms_) m += c * pauli_matrix(p);
  return m;
}

int qubits_for_dim(Eigen::Index dim) {
  int q = 0;
  Eigen::Index d = 1;
  while (d < dim) {
    d <<= 1;
    ++q;
  }
  if (d != dim || q < 1) {
    throw std::invalid_argument("matrix dimension is not a power of two >= 2");
  }
  return q;
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw std::invalid_argument("DensityMatrix must be square");
  }
  qubits_ = qubits_for_dim(m_.rows());
  if (qubits_ > kMaxDenseQubits) {
    throw std::invalid_argument("DensityMatrix exceeds the dense qubit cap");
  }
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kTypeTol) {
    throw std::invalid_argument("DensityMatrix must be Hermitian");
  }
  if (std::abs(m_.trace().real() - 1.0) > kTypeTol || std::abs(m_.trace().imag()) > kTypeTol) {
    throw std::invalid_argument("DensityMatrix must have unit trace");
  }
  if (qubits_ <= 8) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9) {
      throw std::invalid_argument("DensityMatrix has a negative eigenvalue");
    }
  }
}

DensityMatrix DensityMatrix::pure(const Vector& state) {
  const double norm = state.norm();
  if (norm < 1e-12) throw std::invalid_argument("zero state vector");
  Vector psi = state / norm;
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::computational_basis(int qubits, std::uint64_t bits) {
  const Eigen::Index dim = Eigen::Index(1) << qubits;
  Vector psi = Vector::Zero(dim);
  psi(static_cast<Eigen::Index>(bits)) = 1.0;
  return pure(psi);
}

DensityMatrix DensityMatrix::maximally_mixed(int qubits) {
  const Eigen::Index dim = Eigen::Index(1) << qubits;
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::product(const std::vector<Eigen::Matrix2cd>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty product state");
  Matrix m = factors.front();
  for (std::size_t j = 1; j < factors.size(); ++j) m = kron(m, factors[j]);
  return DensityMatrix(std::move(m));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix pauli_matrix(const PauliString& p) {
  if (p.qubits() > kMaxDenseQubits) {
    throw std::invalid_argument("pauli_matrix exceeds the dense qubit cap");
  }
  Matrix m = pauli_matrix_1q(p.label(0));
  for (int j = 1; j < p.qubits(); ++j) m = kron(m, pauli_matrix_1q(p.label(j)));
  return m;
}

Complex pauli_trace_product(const PauliString& p, const Matrix& o) {
  const int q = p.qubits();
  const Eigen::Index dim = Eigen::Index(1) << q;
  if (o.rows() != dim || o.cols() != dim) {
    throw std::invalid_argument("pauli_trace_product: dimension mismatch");
  }
  // P has one nonzero entry per row; Tr[P O] = sum_r P(r, c(r)) O(c(r), r).
  Complex total = 0.0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    Eigen::Index c = r;
    Complex phase = 1.0;
    for (int j = 0; j < q; ++j) {
      const int shift = q - 1 - j;
      const int bit = static_cast<int>((r >> shift) & 1);
      switch (p.label(j)) {
        case Pauli::I:
          break;
        case Pauli::X:
          c ^= Eigen::Index(1) << shift;
          break;
        case Pauli::Y:
          c ^= Eigen::Index(1) << shift;
          phase *= bit ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
          break;
        case Pauli::Z:
          if (bit) phase = -phase;
          break;
      }
    }
    total += phase * o(c, r);
  }
  return total;
}

Observable decompose(const Matrix& o) {
  const int q = qubits_for_dim(o.rows());
  if (o.rows() != o.cols()) throw std::invalid_argument("decompose: matrix must be square");
  if (q > 8) throw std::invalid_argument("decompose caps at 8 qubits");
  if ((o - o.adjoint()).cwiseAbs().maxCoeff() > kOpTol) {
    throw std::invalid_argument("decompose: input must be Hermitian");
  }
  const double dim = static_cast<double>(Eigen::Index(1) << q);
  Observable result(q);
  std::vector<Pauli> labels(static_cast<std::size_t>(q), Pauli::I);
  const std::size_t n_strings = std::size_t(1) << (2 * q);
  for (std::size_t code = 0; code < n_strings; ++code) {
    std::size_t rem = code;
    for (int j = q - 1; j >= 0; --j) {
      labels[static_cast<std::size_t>(j)] = static_cast<Pauli>(rem & 3);
      rem >>= 2;
    }
    PauliString p(labels);
    const Complex tr = pauli_trace_product(p, o);
    const double c = tr.real() / dim;
    if (std::abs(tr.imag()) / dim > kOpTol) {
      throw std::runtime_error("decompose: non-real coefficient on Hermitian input");
    }
    if (std::abs(c) > 1e-14) result.add(p, c);
  }
  return result;
}

double expectation_exact(const DensityMatrix& rho, const PauliString& p) {
  if (p.qubits() != rho.qubits()) {
    throw std::invalid_argument("expectation_exact: dimension mismatch");
  }
  const Complex tr = pauli_trace_product(p, rho.matrix());
  if (std::abs(tr.imag()) > kOpTol) {
    throw std::runtime_error("expectation_exact: imaginary residue too large");
  }
  return tr.real();
}

double expectation_exact(const DensityMatrix& rho, const Observable& o) {
  if (o.qubits() != rho.qubits()) {
    throw std::invalid_argument("expectation_exact: dimension mismatch");
  }
  double total = 0.0;
  for (const auto& [p, c] : o.terms()) total += c * expectation_exact(rho, p);
  return total;
}

}  // namespace shadowrem
