// Copyright 2026 The qbat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbat/qalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "qbat/errors.hpp"
#include "qbat/simd/kernels.hpp"

namespace qbat {
namespace {

void check_qubits(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ValidationError("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
  }
}

Eigen::Index dim_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

void check_square(int n_qubits, const Matrix& m) {
  check_qubits(n_qubits);
  if (m.rows() != dim_of(n_qubits) || m.cols() != dim_of(n_qubits)) {
    throw ValidationError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                          ", expected " + std::to_string(dim_of(n_qubits)) + " square");
  }
}

void check_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.n_qubits() != b.n_qubits()) {
    throw ValidationError(std::string(what) + ": operand dimensions differ (" +
                          std::to_string(a.n_qubits()) + " vs " + std::to_string(b.n_qubits()) +
                          " qubits)");
  }
}

double scaled_tol(double tol, const Matrix& m) { return tol * std::max(1.0, max_abs(m)); }

std::span<const cplx> view(const Matrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }
std::span<const cplx> view(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(int n_qubits, Matrix m, bool hermitian, bool unitary)
    : n_qubits_(n_qubits), m_(std::move(m)), hermitian_(hermitian), unitary_(unitary) {}

Operator Operator::general(int n_qubits, Matrix m) {
  check_square(n_qubits, m);
  return {n_qubits, std::move(m), false, false};
}

Operator Operator::hermitian(int n_qubits, Matrix m) {
  check_square(n_qubits, m);
  const double defect = max_abs(m - m.adjoint());
  if (defect > scaled_tol(kHermitianTol, m)) {
    throw ValidationError("operator flagged hermitian has ||A - A^dagger||_max = " + std::to_string(defect));
  }
  return {n_qubits, std::move(m), true, false};
}

Operator Operator::unitary(int n_qubits, Matrix m) {
  check_square(n_qubits, m);
  const double defect = max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()));
  if (defect > kUnitaryTol) {
    throw ValidationError("operator flagged unitary has ||U^dagger U - 1||_max = " + std::to_string(defect));
  }
  const bool herm = max_abs(m - m.adjoint()) <= scaled_tol(kHermitianTol, m);
  return {n_qubits, std::move(m), herm, true};
}

Operator Operator::identity(int n_qubits) {
  check_qubits(n_qubits);
  return {n_qubits, Matrix::Identity(dim_of(n_qubits), dim_of(n_qubits)), true, true};
}

Operator Operator::zero(int n_qubits) {
  check_qubits(n_qubits);
  return {n_qubits, Matrix::Zero(dim_of(n_qubits), dim_of(n_qubits)), true, false};
}

Operator Operator::adjoint() const { return {n_qubits_, m_.adjoint(), hermitian_, unitary_}; }

double Operator::hermiticity_defect() const { return max_abs(m_ - m_.adjoint()); }

Operator operator+(const Operator& a, const Operator& b) {
  check_same_dim(a, b, "operator+");
  return {a.n_qubits_, a.m_ + b.m_, a.hermitian_ && b.hermitian_, false};
}

Operator operator-(const Operator& a, const Operator& b) {
  check_same_dim(a, b, "operator-");
  return {a.n_qubits_, a.m_ - b.m_, a.hermitian_ && b.hermitian_, false};
}

Operator operator-(const Operator& a) { return {a.n_qubits_, -a.m_, a.hermitian_, a.unitary_}; }

Operator operator*(double s, const Operator& a) {
  return {a.n_qubits_, s * a.m_, a.hermitian_, a.unitary_ && std::abs(s) == 1.0};
}

Operator operator*(cplx s, const Operator& a) {
  if (s.imag() == 0.0) return s.real() * a;
  return {a.n_qubits_, s * a.m_, false, a.unitary_ && std::abs(s) == 1.0};
}

Operator operator*(const Operator& a, const Operator& b) {
  check_same_dim(a, b, "operator*");
  return {a.n_qubits_, a.m_ * b.m_, false, a.unitary_ && b.unitary_};
}

Operator kron(const Operator& a, const Operator& b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_qubits(n);
  const Eigen::Index db = b.dim();
  Matrix m(a.dim() * db, a.dim() * db);
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    for (Eigen::Index j = 0; j < a.dim(); ++j) m.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
  }
  if (a.is_unitary() && b.is_unitary()) return Operator::unitary(n, std::move(m));
  if (a.is_hermitian() && b.is_hermitian()) return Operator::hermitian(n, std::move(m));
  return Operator::general(n, std::move(m));
}

// ---------------------------------------------------------------------------
// States

PureState PureState::from_amplitudes(int n_qubits, Vector v) {
  check_qubits(n_qubits);
  if (v.size() != dim_of(n_qubits)) {
    throw ValidationError("state has " + std::to_string(v.size()) + " amplitudes, expected " +
                          std::to_string(dim_of(n_qubits)));
  }
  const double norm = std::sqrt(simd::norm_sq(view(v)));
  if (std::abs(norm - 1.0) > kNormTol) {
    throw ValidationError("state norm " + std::to_string(norm) + " is not 1");
  }
  return {n_qubits, std::move(v)};
}

PureState PureState::normalized(int n_qubits, Vector v) {
  check_qubits(n_qubits);
  if (v.size() != dim_of(n_qubits)) {
    throw ValidationError("state has " + std::to_string(v.size()) + " amplitudes, expected " +
                          std::to_string(dim_of(n_qubits)));
  }
  const double norm = std::sqrt(simd::norm_sq(view(v)));
  if (norm == 0.0 || !std::isfinite(norm)) throw ValidationError("cannot normalize a zero or non-finite vector");
  v /= norm;
  return {n_qubits, std::move(v)};
}

PureState PureState::basis(int n_qubits, std::uint64_t index) {
  check_qubits(n_qubits);
  if (index >= static_cast<std::uint64_t>(dim_of(n_qubits))) {
    throw ValidationError("basis index " + std::to_string(index) + " out of range");
  }
  Vector v = Vector::Zero(dim_of(n_qubits));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return {n_qubits, std::move(v)};
}

PureState PureState::basis(std::string_view bits) {
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ValidationError("basis label must be a 0/1 string");
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return basis(static_cast<int>(bits.size()), index);
}

PureState kron(const PureState& a, const PureState& b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_qubits(n);
  Vector v(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) v.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  return PureState::normalized(n, std::move(v));
}

cplx overlap(const PureState& a, const PureState& b) {
  if (a.n_qubits() != b.n_qubits()) throw ValidationError("overlap: dimension mismatch");
  return simd::dot(view(a.amplitudes()), view(b.amplitudes()));
}

double fidelity(const PureState& a, const PureState& b) { return std::norm(overlap(a, b)); }

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return {psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint()};
}

DensityMatrix DensityMatrix::from_matrix(int n_qubits, Matrix m) {
  check_square(n_qubits, m);
  const double defect = max_abs(m - m.adjoint());
  if (defect > kHermitianTol) {
    throw ValidationError("density matrix is not hermitian (defect " + std::to_string(defect) + ")");
  }
  const cplx tr = m.trace();
  if (std::abs(tr - 1.0) > 1e-12) throw ValidationError("density matrix trace " + std::to_string(tr.real()) + " is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw ValidationError("density matrix has negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }
  return {n_qubits, std::move(m)};
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  check_qubits(n_qubits);
  const Eigen::Index d = dim_of(n_qubits);
  return {n_qubits, Matrix::Identity(d, d) / static_cast<double>(d)};
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_qubits(n);
  const Eigen::Index db = b.dim();
  Matrix m(a.dim() * db, a.dim() * db);
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    for (Eigen::Index j = 0; j < a.dim(); ++j) m.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
  }
  return DensityMatrix::from_matrix(n, std::move(m));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.n_qubits() != b.n_qubits()) throw ValidationError("trace_distance: dimension mismatch");
  const Matrix diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Vector apply(const Operator& op, const PureState& psi) {
  if (op.n_qubits() != psi.n_qubits()) throw ValidationError("apply: dimension mismatch");
  Vector out(psi.dim());
  simd::matvec(view(op.matrix()), view(psi.amplitudes()), {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

PureState transform(const Operator& u, const PureState& psi) {
  if (!u.is_unitary()) throw ValidationError("transform requires a unitary-flagged operator");
  return PureState::normalized(psi.n_qubits(), apply(u, psi));
}

// ---------------------------------------------------------------------------
// Construction helpers

Operator pauli(PauliAxis axis) {
  using namespace std::complex_literals;
  Matrix m(2, 2);
  switch (axis) {
    case PauliAxis::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case PauliAxis::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case PauliAxis::Y: m << 0.0, -1i, 1i, 0.0; break;
    case PauliAxis::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return Operator::unitary(1, std::move(m));
}

Operator embed(const Operator& op, std::span<const int> target_sites, int n_total) {
  check_qubits(n_total);
  const int k = static_cast<int>(target_sites.size());
  if (k != op.n_qubits()) {
    throw ValidationError("embed: operator acts on " + std::to_string(op.n_qubits()) + " qubits but " +
                          std::to_string(k) + " sites given");
  }
  std::set<int> seen;
  for (int site : target_sites) {
    if (site < 0 || site >= n_total) throw ValidationError("embed: site " + std::to_string(site) + " out of range");
    if (!seen.insert(site).second) throw ValidationError("embed: duplicate site " + std::to_string(site));
  }

  // Bit position (from the least significant end) of each target site.
  std::vector<int> shift(k);
  Eigen::Index target_mask = 0;
  for (int q = 0; q < k; ++q) {
    shift[q] = n_total - 1 - target_sites[q];
    target_mask |= Eigen::Index{1} << shift[q];
  }
  auto sub_index = [&](Eigen::Index full) {
    Eigen::Index s = 0;
    for (int q = 0; q < k; ++q) s = (s << 1) | ((full >> shift[q]) & 1);
    return s;
  };
  auto with_sub = [&](Eigen::Index full, Eigen::Index s) {
    Eigen::Index r = full & ~target_mask;
    for (int q = k - 1; q >= 0; --q, s >>= 1) r |= (s & 1) << shift[q];
    return r;
  };

  const Eigen::Index d = dim_of(n_total);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index row = 0; row < d; ++row) {
    const Eigen::Index sr = sub_index(row);
    for (Eigen::Index sc = 0; sc < op.dim(); ++sc) m(row, with_sub(row, sc)) = op(sr, sc);
  }
  if (op.is_unitary()) return Operator::unitary(n_total, std::move(m));
  if (op.is_hermitian()) return Operator::hermitian(n_total, std::move(m));
  return Operator::general(n_total, std::move(m));
}

Operator embed(const Operator& op, std::initializer_list<int> target_sites, int n_total) {
  return embed(op, std::span<const int>(target_sites.begin(), target_sites.size()), n_total);
}

Operator commutator(const Operator& a, const Operator& b) {
  check_same_dim(a, b, "commutator");
  return Operator::general(a.n_qubits(), a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

namespace {

cplx checked(const Operator& op, cplx value) {
  if (op.is_hermitian() && std::abs(value.imag()) > scaled_tol(kExpectationImagTol, op.matrix())) {
    throw NumericalError("expectation of a hermitian operator has imaginary part " + std::to_string(value.imag()));
  }
  return value;
}

}  // namespace

cplx expectation(const Operator& op, const PureState& psi) {
  const Vector a_psi = apply(op, psi);
  return checked(op, simd::dot(view(psi.amplitudes()), view(a_psi)));
}

cplx expectation(const Operator& op, const DensityMatrix& rho) {
  if (op.n_qubits() != rho.n_qubits()) throw ValidationError("expectation: dimension mismatch");
  return checked(op, op.matrix().cwiseProduct(rho.matrix().transpose()).sum());
}

EigenSystem eigh(const Operator& op) {
  if (!op.is_hermitian()) throw ValidationError("eigh requires a hermitian-flagged operator");
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("eigh: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

// ---------------------------------------------------------------------------
// QubitLayout

QubitLayout::QubitLayout(std::vector<QubitRole> roles) : roles_(std::move(roles)) {
  check_qubits(static_cast<int>(roles_.size()));
  int max_cell = -1;
  for (std::size_t i = 0; i < roles_.size(); ++i) {
    const QubitRole& r = roles_[i];
    if (r.cell < 0) throw ValidationError("qubit layout: negative cell index");
    if (r.kind == QubitRole::Kind::Battery && r.slot != 1 && r.slot != 2) {
      throw ValidationError("qubit layout: battery slot must be 1 or 2");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (roles_[j] == r) throw ValidationError("qubit layout: duplicate role assignment");
    }
    max_cell = std::max(max_cell, r.cell);
  }
  n_cells_ = max_cell + 1;
  for (int c = 0; c < n_cells_; ++c) {
    if (find(QubitRole::battery(c, 1)) < 0 || find(QubitRole::battery(c, 2)) < 0 || find(QubitRole::hub(c)) < 0) {
      throw ValidationError("qubit layout: cell " + std::to_string(c) + " needs two battery qubits and one hub qubit");
    }
  }
  if (static_cast<int>(roles_.size()) != 3 * n_cells_) {
    throw ValidationError("qubit layout: unexpected extra qubits");
  }
}

QubitLayout QubitLayout::cells(int n_cells) {
  if (n_cells < 1 || 3 * n_cells > kMaxQubits) throw ValidationError("cell count out of range");
  std::vector<QubitRole> roles;
  for (int c = 0; c < n_cells; ++c) {
    roles.push_back(QubitRole::battery(c, 1));
    roles.push_back(QubitRole::battery(c, 2));
    roles.push_back(QubitRole::hub(c));
  }
  return QubitLayout(std::move(roles));
}

int QubitLayout::find(const QubitRole& role) const {
  const auto it = std::find(roles_.begin(), roles_.end(), role);
  return it == roles_.end() ? -1 : static_cast<int>(it - roles_.begin());
}

int QubitLayout::battery(int cell, int slot) const {
  const int q = find(QubitRole::battery(cell, slot));
  if (q < 0) throw ValidationError("no battery qubit for cell " + std::to_string(cell) + " slot " + std::to_string(slot));
  return q;
}

int QubitLayout::hub(int cell) const {
  const int q = find(QubitRole::hub(cell));
  if (q < 0) throw ValidationError("no hub qubit for cell " + std::to_string(cell));
  return q;
}

std::vector<int> QubitLayout::hubs() const {
  std::vector<int> out;
  for (int c = 0; c < n_cells_; ++c) out.push_back(hub(c));
  return out;
}

std::vector<int> QubitLayout::battery_qubits() const {
  std::vector<int> out;
  for (int c = 0; c < n_cells_; ++c) {
    out.push_back(battery(c, 1));
    out.push_back(battery(c, 2));
  }
  return out;
}

}  // namespace qbat
