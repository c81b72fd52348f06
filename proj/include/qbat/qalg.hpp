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

// Dense operator and state algebra on small multi-qubit Hilbert spaces.
//
// Basis convention: the index of a product state |b_0 b_1 ... b_{n-1}> is
// sum_k b_k 2^(n-1-k), i.e. qubit 0 is the most significant bit. Every
// constructor and file format in qbat uses this ordering.
//
// Units: hbar = 1 throughout.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qbat {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 12;

/// Absolute tolerance on ||A - A^dagger||_max for hermitian-flagged
/// operators, scaled by max(1, ||A||_max).
inline constexpr double kHermitianTol = 1e-12;
/// Tolerance on | ||psi|| - 1 | for pure states.
inline constexpr double kNormTol = 1e-12;
/// Tolerance on U^dagger U = 1 for unitary-flagged operators.
inline constexpr double kUnitaryTol = 1e-10;
/// Largest imaginary part tolerated in <A> for hermitian-flagged A, scaled
/// by max(1, ||A||_max).
inline constexpr double kExpectationImagTol = 1e-10;

/// Largest |entry| of a matrix.
double max_abs(const Matrix& m);

class PureState;
class DensityMatrix;

/// Dense complex operator on 2^n dimensions carrying hermitian/unitary
/// intent flags. Flagged constructors verify the property on entry.
class Operator {
 public:
  static Operator general(int n_qubits, Matrix m);
  static Operator hermitian(int n_qubits, Matrix m);
  static Operator unitary(int n_qubits, Matrix m);
  static Operator identity(int n_qubits);
  static Operator zero(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  bool is_hermitian() const { return hermitian_; }
  bool is_unitary() const { return unitary_; }
  cplx operator()(Eigen::Index row, Eigen::Index col) const { return m_(row, col); }

  Operator adjoint() const;
  /// ||A - A^dagger||_max
  double hermiticity_defect() const;

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a);
  friend Operator operator*(double s, const Operator& a);
  friend Operator operator*(cplx s, const Operator& a);
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Operator(int n_qubits, Matrix m, bool hermitian, bool unitary);

  int n_qubits_;
  Matrix m_;
  bool hermitian_;
  bool unitary_;
};

/// Tensor product a (x) b; a acts on the leading (more significant) qubits.
Operator kron(const Operator& a, const Operator& b);

/// Normalized state vector.
class PureState {
 public:
  /// Requires | ||v|| - 1 | <= kNormTol.
  static PureState from_amplitudes(int n_qubits, Vector v);
  /// Rescales v to unit norm; throws on a zero vector.
  static PureState normalized(int n_qubits, Vector v);
  static PureState basis(int n_qubits, std::uint64_t index);
  /// Basis state from a bit string such as "010" (qubit 0 first).
  static PureState basis(std::string_view bits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return v_.size(); }
  const Vector& amplitudes() const { return v_; }
  cplx operator[](Eigen::Index i) const { return v_(i); }

 private:
  PureState(int n_qubits, Vector v) : n_qubits_(n_qubits), v_(std::move(v)) {}

  int n_qubits_;
  Vector v_;
};

PureState kron(const PureState& a, const PureState& b);
/// <a|b>
cplx overlap(const PureState& a, const PureState& b);
/// |<a|b>|^2; insensitive to global phase.
double fidelity(const PureState& a, const PureState& b);

/// Unit-trace Hermitian positive semidefinite matrix.
class DensityMatrix {
 public:
  static DensityMatrix from_pure(const PureState& psi);
  /// Validates hermiticity (1e-12), unit trace (1e-12) and smallest
  /// eigenvalue >= -1e-10.
  static DensityMatrix from_matrix(int n_qubits, Matrix m);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(Eigen::Index row, Eigen::Index col) const { return m_(row, col); }

 private:
  DensityMatrix(int n_qubits, Matrix m) : n_qubits_(n_qubits), m_(std::move(m)) {}

  int n_qubits_;
  Matrix m_;
};

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);
/// (1/2) sum |eig(a - b)|
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// A |psi> (unnormalized for non-unitary A).
Vector apply(const Operator& op, const PureState& psi);
/// U |psi> for a unitary-flagged U.
PureState transform(const Operator& u, const PureState& psi);

enum class PauliAxis { I, X, Y, Z };

/// Single-qubit Pauli matrix in basis order (|0>, |1>); Z = diag(+1, -1).
Operator pauli(PauliAxis axis);

/// op (on k qubits) placed on target_sites of an n_total-qubit register,
/// identity elsewhere. target_sites[0] is the most significant qubit of op.
Operator embed(const Operator& op, std::span<const int> target_sites, int n_total);
Operator embed(const Operator& op, std::initializer_list<int> target_sites, int n_total);

/// ab - ba, no symmetrization.
Operator commutator(const Operator& a, const Operator& b);

/// <psi|A|psi>. For hermitian-flagged A the imaginary part is checked
/// against kExpectationImagTol and a NumericalError is thrown on excess.
cplx expectation(const Operator& op, const PureState& psi);
/// tr(A rho), same imaginary-part check.
cplx expectation(const Operator& op, const DensityMatrix& rho);

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // orthonormal columns
};

/// Eigendecomposition of a hermitian-flagged operator. Vectors inside a
/// degenerate eigenspace are an arbitrary orthonormal basis of it.
EigenSystem eigh(const Operator& op);

/// Role of one qubit inside a battery/hub register.
struct QubitRole {
  enum class Kind { Battery, Hub };
  Kind kind;
  int cell;
  int slot;  // 1 or 2 for battery qubits, 0 for the hub

  static QubitRole battery(int cell, int slot) { return {Kind::Battery, cell, slot}; }
  static QubitRole hub(int cell) { return {Kind::Hub, cell, 0}; }
  friend bool operator==(const QubitRole&, const QubitRole&) = default;
};

/// Assignment of register qubits to battery cells and hub qubits. Each cell
/// owns exactly two battery qubits and one hub qubit.
class QubitLayout {
 public:
  static constexpr std::string_view kBasisOrdering = "big-endian (qubit 0 most significant)";

  explicit QubitLayout(std::vector<QubitRole> roles);
  /// Cells laid out consecutively as (B1, B2, A), (B1, B2, A), ...
  static QubitLayout cells(int n_cells);

  int n_qubits() const { return static_cast<int>(roles_.size()); }
  int n_cells() const { return n_cells_; }
  const std::vector<QubitRole>& roles() const { return roles_; }
  int battery(int cell, int slot) const;
  int hub(int cell) const;
  std::vector<int> hubs() const;
  std::vector<int> battery_qubits() const;

 private:
  int find(const QubitRole& role) const;

  std::vector<QubitRole> roles_;
  int n_cells_ = 0;
};

}  // namespace qbat
