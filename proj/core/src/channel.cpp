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

#include "shadowrem/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shadowrem {

namespace {

constexpr double kCptpTol = 1e-9;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

Eigen::Matrix2d flip_map(double p01, double p10) {
  Eigen::Matrix2d t;
  t << 1.0 - p01, p10, p01, 1.0 - p10;
  return t;
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus_ops) : kraus_(std::move(kraus_ops)) {
  if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
  const Eigen::Index d = kraus_.front().rows();
  for (const Matrix& k : kraus_) {
    if (k.rows() != d || k.cols() != d) {
      throw std::invalid_argument("Kraus operators must share a square dimension");
    }
  }
  qubits_ = qubits_for_dim(d);
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& k : kraus_) sum += k.adjoint() * k;
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kCptpTol) {
    throw std::invalid_argument("Kraus operators are not trace preserving");
  }
}

QuantumChannel QuantumChannel::identity(int qubits) {
  const Eigen::Index d = Eigen::Index(1) << qubits;
  return QuantumChannel({Matrix::Identity(d, d)});
}

QuantumChannel QuantumChannel::unitary(Matrix u) {
  const Eigen::Index d = u.rows();
  if ((u * u.adjoint() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kCptpTol) {
    throw std::invalid_argument("unitary channel requires a unitary matrix");
  }
  return QuantumChannel({std::move(u)});
}

QuantumChannel QuantumChannel::bit_flip(double p) {
  check_probability(p, "flip probability");
  std::vector<Matrix> ks;
  if (p < 1.0) ks.push_back(std::sqrt(1.0 - p) * pauli_matrix_1q(Pauli::I));
  if (p > 0.0) ks.push_back(std::sqrt(p) * pauli_matrix_1q(Pauli::X));
  return QuantumChannel(std::move(ks));
}

QuantumChannel QuantumChannel::depolarizing(double p) {
  check_probability(p, "depolarizing probability");
  return pauli_channel(1.0 - 3.0 * p / 4.0, p / 4.0, p / 4.0, p / 4.0);
}

QuantumChannel QuantumChannel::amplitude_damping(double gamma) {
  check_probability(gamma, "damping rate");
  Matrix k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  k1 << 0, std::sqrt(gamma), 0, 0;
  std::vector<Matrix> ks{k0};
  if (gamma > 0.0) ks.push_back(k1);
  return QuantumChannel(std::move(ks));
}

QuantumChannel QuantumChannel::pauli_channel(double p_i, double p_x, double p_y, double p_z) {
  const double probs[4] = {p_i, p_x, p_y, p_z};
  double sum = 0.0;
  for (double p : probs) {
    check_probability(p, "Pauli probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("Pauli channel probabilities must sum to 1");
  }
  std::vector<Matrix> ks;
  for (int j = 0; j < 4; ++j) {
    if (probs[j] > 0.0) {
      ks.push_back(std::sqrt(probs[j]) * pauli_matrix_1q(static_cast<Pauli>(j)));
    }
  }
  return QuantumChannel(std::move(ks));
}

QuantumChannel QuantumChannel::tensor(const std::vector<QuantumChannel>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty tensor channel");
  if (factors.size() > 6) throw std::invalid_argument("tensor channel caps at 6 qubits");
  std::vector<Matrix> ks{Matrix::Identity(1, 1)};
  for (const QuantumChannel& f : factors) {
    if (f.qubits() != 1) throw std::invalid_argument("tensor factors must be single-qubit");
    std::vector<Matrix> next;
    next.reserve(ks.size() * f.kraus().size());
    for (const Matrix& a : ks) {
      for (const Matrix& b : f.kraus()) next.push_back(kron(a, b));
    }
    ks = std::move(next);
  }
  return QuantumChannel(std::move(ks));
}

Matrix QuantumChannel::apply_raw(const Matrix& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim()) {
    throw std::invalid_argument("channel apply: dimension mismatch");
  }
  Matrix out = Matrix::Zero(dim(), dim());
  for (const Matrix& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

Matrix QuantumChannel::apply_adjoint_raw(const Matrix& op) const {
  if (op.rows() != dim() || op.cols() != dim()) {
    throw std::invalid_argument("channel adjoint apply: dimension mismatch");
  }
  Matrix out = Matrix::Zero(dim(), dim());
  for (const Matrix& k : kraus_) out.noalias() += k.adjoint() * op * k;
  return out;
}

DensityMatrix apply(const QuantumChannel& e, const DensityMatrix& rho) {
  return DensityMatrix(e.apply_raw(rho.matrix()));
}

Mask::Mask(std::vector<bool> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("Mask requires at least one qubit");
}

Mask Mask::of(const PauliString& p) {
  std::vector<bool> bits(static_cast<std::size_t>(p.qubits()));
  for (int j = 0; j < p.qubits(); ++j) bits[static_cast<std::size_t>(j)] = p.label(j) != Pauli::I;
  return Mask(std::move(bits));
}

Mask Mask::none(int qubits) { return Mask(std::vector<bool>(static_cast<std::size_t>(qubits), false)); }

Mask Mask::single(int qubits, int qubit) {
  std::vector<bool> bits(static_cast<std::size_t>(qubits), false);
  bits.at(static_cast<std::size_t>(qubit)) = true;
  return Mask(std::move(bits));
}

int Mask::weight() const {
  int w = 0;
  for (bool b : bits_) {
    if (b) ++w;
  }
  return w;
}

PauliString Mask::z_string() const {
  std::vector<Pauli> labels(bits_.size(), Pauli::I);
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (bits_[j]) labels[j] = Pauli::Z;
  }
  return PauliString(std::move(labels));
}

std::string Mask::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

Matrix mask_operator(const Mask& mask) { return pauli_matrix(mask.z_string()); }

double ptm_element(const QuantumChannel& e, const PauliString& row, const PauliString& col) {
  if (row.qubits() != e.qubits() || col.qubits() != e.qubits()) {
    throw std::invalid_argument("ptm_element: dimension mismatch");
  }
  const double dim = static_cast<double>(e.dim());
  const Matrix image = e.apply_raw(pauli_matrix(col));
  return pauli_trace_product(row, image).real() / dim;
}

double suppression_factor(const QuantumChannel& e, const Mask& mask) {
  if (mask.qubits() != e.qubits()) {
    throw std::invalid_argument("suppression_factor: dimension mismatch");
  }
  const PauliString z = mask.z_string();
  return ptm_element(e, z, z);
}

double twirled_suppression(const QuantumChannel& e, const Mask& mask) {
  if (mask.qubits() != e.qubits()) {
    throw std::invalid_argument("twirled_suppression: dimension mismatch");
  }
  const int w = mask.weight();
  if (w == 0) {
    throw std::invalid_argument("twirled_suppression needs a non-identity mask");
  }
  std::vector<int> positions;
  for (int j = 0; j < mask.qubits(); ++j) {
    if (mask.bit(j)) positions.push_back(j);
  }
  // Enumerate the 3^w strings with {X, Y, Z} on the masked positions.
  std::size_t count = 1;
  for (int j = 0; j < w; ++j) count *= 3;
  double sum = 0.0;
  std::vector<Pauli> labels(static_cast<std::size_t>(mask.qubits()), Pauli::I);
  for (std::size_t code = 0; code < count; ++code) {
    std::size_t rem = code;
    for (int pos : positions) {
      labels[static_cast<std::size_t>(pos)] = static_cast<Pauli>(1 + (rem % 3));
      rem /= 3;
    }
    PauliString p(labels);
    sum += ptm_element(e, p, p);
  }
  return sum / static_cast<double>(count);
}

// ---------------------------------------------------------------------------
// Readout error models
// ---------------------------------------------------------------------------

ReadoutErrorModel::ReadoutErrorModel(Variant v) : v_(std::move(v)) {}

ReadoutErrorModel ReadoutErrorModel::none() { return ReadoutErrorModel(NoError{}); }

ReadoutErrorModel ReadoutErrorModel::confusion(Eigen::MatrixXd t) {
  if (t.rows() != t.cols() || t.rows() < 2) {
    throw std::invalid_argument("confusion matrix must be square with dim >= 2");
  }
  for (Eigen::Index c = 0; c < t.cols(); ++c) {
    double colsum = 0.0;
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      if (t(r, c) < -1e-12 || t(r, c) > 1.0 + 1e-12) {
        throw std::invalid_argument("confusion matrix entries must lie in [0, 1]");
      }
      colsum += t(r, c);
    }
    if (std::abs(colsum - 1.0) > 1e-9) {
      throw std::invalid_argument("confusion matrix columns must sum to 1");
    }
  }
  return ReadoutErrorModel(Confusion{std::move(t)});
}

ReadoutErrorModel ReadoutErrorModel::confusion_per_qubit(
    const std::vector<std::pair<double, double>>& rates) {
  if (rates.empty()) throw std::invalid_argument("confusion_per_qubit needs at least one qubit");
  if (rates.size() > 12) throw std::invalid_argument("confusion_per_qubit caps at 12 qubits");
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(1, 1);
  for (const auto& [a, b] : rates) {
    check_probability(a, "confusion rate");
    check_probability(b, "confusion rate");
    const Eigen::Matrix2d f = flip_map(a, b);
    Eigen::MatrixXd next(t.rows() * 2, t.cols() * 2);
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        next.block(i * 2, j * 2, 2, 2) = t(i, j) * f;
      }
    }
    t = std::move(next);
  }
  return confusion(std::move(t));
}

ReadoutErrorModel ReadoutErrorModel::tensor_flip(std::vector<double> p) {
  if (p.empty()) throw std::invalid_argument("tensor_flip needs at least one qubit");
  for (double v : p) check_probability(v, "flip probability");
  return ReadoutErrorModel(TensorFlip{std::move(p)});
}

ReadoutErrorModel ReadoutErrorModel::correlated_flip(int qubit_a, int qubit_b, double joint,
                                                     double p01, double p10) {
  if (qubit_a == qubit_b || qubit_a < 0 || qubit_b < 0) {
    throw std::invalid_argument("correlated_flip needs two distinct qubits");
  }
  check_probability(joint, "joint flip probability");
  check_probability(p01, "flip probability");
  check_probability(p10, "flip probability");
  return ReadoutErrorModel(CorrelatedFlip{qubit_a, qubit_b, joint, p01, p10});
}

ReadoutErrorModel ReadoutErrorModel::coherent(std::vector<double> angles) {
  if (angles.empty()) throw std::invalid_argument("coherent model needs at least one qubit");
  return ReadoutErrorModel(Coherent{std::move(angles)});
}

void ReadoutErrorModel::validate(int qubits) const {
  std::visit(
      [qubits](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Confusion>) {
          if (m.matrix.rows() != Eigen::Index(1) << qubits) {
            throw std::invalid_argument("confusion matrix does not match the qubit count");
          }
        } else if constexpr (std::is_same_v<T, TensorFlip>) {
          if (static_cast<int>(m.p.size()) != qubits) {
            throw std::invalid_argument("tensor_flip probabilities do not match the qubit count");
          }
        } else if constexpr (std::is_same_v<T, CorrelatedFlip>) {
          if (m.qubit_a >= qubits || m.qubit_b >= qubits) {
            throw std::invalid_argument("correlated_flip pair out of range");
          }
        } else if constexpr (std::is_same_v<T, Coherent>) {
          if (static_cast<int>(m.angles.size()) != qubits) {
            throw std::invalid_argument("coherent angles do not match the qubit count");
          }
        }
      },
      v_);
}

ReadoutErrorModel ReadoutErrorModel::at_time(double t, double rate) const {
  if (rate == 0.0) return *this;
  const double scale = 1.0 + rate * t;
  return std::visit(
      [scale](const auto& m) -> ReadoutErrorModel {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NoError>) {
          return ReadoutErrorModel::none();
        } else if constexpr (std::is_same_v<T, Confusion>) {
          // Scale the off-diagonal (error) mass per column, renormalizing
          // the diagonal so columns stay stochastic.
          Eigen::MatrixXd t2 = m.matrix;
          for (Eigen::Index c = 0; c < t2.cols(); ++c) {
            double off = 0.0;
            for (Eigen::Index r = 0; r < t2.rows(); ++r) {
              if (r != c) {
                t2(r, c) = clamp01(t2(r, c) * scale);
                off += t2(r, c);
              }
            }
            if (off > 1.0) {
              for (Eigen::Index r = 0; r < t2.rows(); ++r) {
                if (r != c) t2(r, c) /= off;
              }
              off = 1.0;
            }
            t2(c, c) = 1.0 - off;
          }
          return ReadoutErrorModel::confusion(std::move(t2));
        } else if constexpr (std::is_same_v<T, TensorFlip>) {
          std::vector<double> p = m.p;
          for (double& v : p) v = clamp01(v * scale);
          return ReadoutErrorModel::tensor_flip(std::move(p));
        } else if constexpr (std::is_same_v<T, CorrelatedFlip>) {
          return ReadoutErrorModel::correlated_flip(m.qubit_a, m.qubit_b,
                                                    clamp01(m.joint * scale),
                                                    clamp01(m.p01 * scale),
                                                    clamp01(m.p10 * scale));
        } else {
          std::vector<double> angles = m.angles;
          for (double& a : angles) a *= scale;
          return ReadoutErrorModel::coherent(std::move(angles));
        }
      },
      v_);
}

namespace {

QuantumChannel classical_map_channel(const Eigen::MatrixXd& t) {
  // Dephase in the computational basis, then apply the stochastic map:
  // Kraus set { sqrt(T_{b'b}) |b'><b| }.
  const Eigen::Index d = t.rows();
  std::vector<Matrix> ks;
  for (Eigen::Index b = 0; b < d; ++b) {
    for (Eigen::Index bp = 0; bp < d; ++bp) {
      if (t(bp, b) > 0.0) {
        Matrix k = Matrix::Zero(d, d);
        k(bp, b) = std::sqrt(t(bp, b));
        ks.push_back(std::move(k));
      }
    }
  }
  return QuantumChannel(std::move(ks));
}

Eigen::Matrix4d correlated_pair_map(const CorrelatedFlip& m) {
  // Joint flip of both bits, then independent asymmetric per-qubit flips.
  Eigen::Matrix4d joint = (1.0 - m.joint) * Eigen::Matrix4d::Identity();
  Eigen::Matrix4d swap_both = Eigen::Matrix4d::Zero();
  swap_both(3, 0) = swap_both(2, 1) = swap_both(1, 2) = swap_both(0, 3) = 1.0;
  joint += m.joint * swap_both;
  const Eigen::Matrix2d a = flip_map(m.p01, m.p10);
  Eigen::Matrix4d indep;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) indep(2 * i + j, 2 * k + l) = a(i, k) * a(j, l);
  return indep * joint;
}

}  // namespace

QuantumChannel as_channel(const ReadoutErrorModel& model, int qubits) {
  model.validate(qubits);
  if (qubits > 6 && !model.is_none()) {
    throw std::invalid_argument("as_channel caps at 6 qubits");
  }
  return std::visit(
      [qubits](const auto& m) -> QuantumChannel {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NoError>) {
          return QuantumChannel::identity(qubits);
        } else if constexpr (std::is_same_v<T, Confusion>) {
          return classical_map_channel(m.matrix);
        } else if constexpr (std::is_same_v<T, TensorFlip>) {
          std::vector<QuantumChannel> factors;
          factors.reserve(m.p.size());
          for (double p : m.p) factors.push_back(QuantumChannel::bit_flip(p));
          return QuantumChannel::tensor(factors);
        } else if constexpr (std::is_same_v<T, CorrelatedFlip>) {
          const Eigen::Matrix4d pair_t = correlated_pair_map(m);
          const Eigen::Index d = Eigen::Index(1) << qubits;
          Eigen::MatrixXd t = Eigen::MatrixXd::Zero(d, d);
          const int sa = qubits - 1 - m.qubit_a;
          const int sb = qubits - 1 - m.qubit_b;
          for (Eigen::Index b = 0; b < d; ++b) {
            const int ia = static_cast<int>((b >> sa) & 1);
            const int ib = static_cast<int>((b >> sb) & 1);
            for (int oa = 0; oa < 2; ++oa) {
              for (int ob = 0; ob < 2; ++ob) {
                Eigen::Index bp = b;
                bp = (bp & ~(Eigen::Index(1) << sa)) | (Eigen::Index(oa) << sa);
                bp = (bp & ~(Eigen::Index(1) << sb)) | (Eigen::Index(ob) << sb);
                t(bp, b) += pair_t(2 * oa + ob, 2 * ia + ib);
              }
            }
          }
          return classical_map_channel(t);
        } else {
          Matrix u = Matrix::Identity(1, 1);
          for (double angle : m.angles) {
            Eigen::Matrix2cd ry;
            ry << std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2),
                std::cos(angle / 2);
            u = kron(u, ry);
          }
          return QuantumChannel::unitary(std::move(u));
        }
      },
      model.variant());
}

void OutcomeMap::apply(Eigen::VectorXd& probs, int qubits) const {
  if (trivial) return;
  const Eigen::Index d = probs.size();
  if (dense) {
    probs = (*dense) * probs;
    return;
  }
  for (int q = 0; q < static_cast<int>(qubit_maps.size()); ++q) {
    const Eigen::Matrix2d& t = qubit_maps[static_cast<std::size_t>(q)];
    if (t.isIdentity(0.0)) continue;
    const Eigen::Index stride = Eigen::Index(1) << (qubits - 1 - q);
    for (Eigen::Index base = 0; base < d; ++base) {
      if ((base & stride) != 0) continue;
      const double p0 = probs(base);
      const double p1 = probs(base | stride);
      probs(base) = t(0, 0) * p0 + t(0, 1) * p1;
      probs(base | stride) = t(1, 0) * p0 + t(1, 1) * p1;
    }
  }
  if (pair) {
    const Eigen::Index sa = Eigen::Index(1) << (qubits - 1 - pair_a);
    const Eigen::Index sb = Eigen::Index(1) << (qubits - 1 - pair_b);
    for (Eigen::Index base = 0; base < d; ++base) {
      if ((base & sa) != 0 || (base & sb) != 0) continue;
      Eigen::Vector4d v;
      v << probs(base), probs(base | sb), probs(base | sa), probs(base | sa | sb);
      v = (*pair) * v;
      probs(base) = v(0);
      probs(base | sb) = v(1);
      probs(base | sa) = v(2);
      probs(base | sa | sb) = v(3);
    }
  }
}

OutcomeMap outcome_map(const ReadoutErrorModel& model, int qubits) {
  model.validate(qubits);
  OutcomeMap out;
  std::visit(
      [&out, qubits](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Confusion>) {
          out.dense = m.matrix;
          out.trivial = false;
        } else if constexpr (std::is_same_v<T, TensorFlip>) {
          out.qubit_maps.assign(static_cast<std::size_t>(qubits), Eigen::Matrix2d::Identity());
          for (int q = 0; q < qubits; ++q) {
            out.qubit_maps[static_cast<std::size_t>(q)] =
                flip_map(m.p[static_cast<std::size_t>(q)], m.p[static_cast<std::size_t>(q)]);
          }
          out.trivial = false;
        } else if constexpr (std::is_same_v<T, CorrelatedFlip>) {
          out.pair = correlated_pair_map(m);
          out.pair_a = m.qubit_a;
          out.pair_b = m.qubit_b;
          out.trivial = false;
        } else if constexpr (std::is_same_v<T, Coherent>) {
          out.pre_rotations.reserve(m.angles.size());
          for (double angle : m.angles) {
            Eigen::Matrix2cd ry;
            ry << std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2),
                std::cos(angle / 2);
            out.pre_rotations.push_back(ry);
          }
          out.trivial = false;
        }
      },
      model.variant());
  return out;
}

}  // namespace shadowrem
