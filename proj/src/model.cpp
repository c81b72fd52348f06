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

#include "qbat/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbat/errors.hpp"

namespace qbat {

void SystemSpec::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("omega must be positive, got " + std::to_string(omega));
  if (!(j_coupling > 0.0) || !std::isfinite(j_coupling)) {
    throw ValidationError("j_coupling must be positive, got " + std::to_string(j_coupling));
  }
}

double full_charge(const SystemSpec& spec) { return 2.0 * spec.omega; }

double discharge_time(const SystemSpec& spec) {
  return std::numbers::pi / (4.0 * std::numbers::sqrt2 * spec.j_coupling);
}

Operator qubit_energy(double omega) {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 1) = omega;   // |1><1|
  m(0, 0) = -omega;  // -|0><0|
  return Operator::hermitian(1, std::move(m));
}

HamiltonianSet bare_hamiltonian(const SystemSpec& spec) {
  spec.validate();
  const int n = spec.layout.n_qubits();
  const Operator e = qubit_energy(spec.omega);
  Operator battery = Operator::zero(n);
  Operator hub = Operator::zero(n);
  for (int q : spec.layout.battery_qubits()) battery = battery + embed(e, {q}, n);
  for (int q : spec.layout.hubs()) hub = hub + embed(e, {q}, n);
  Operator total = battery + hub;
  const double e_empty = -spec.omega * static_cast<double>(spec.layout.n_cells());
  return {std::move(battery), std::move(hub), std::move(total), Operator::zero(n), e_empty};
}

Operator charging_hamiltonian(const SystemSpec& spec) {
  spec.validate();
  const QubitLayout& layout = spec.layout;
  const int n = layout.n_qubits();
  const Operator xx = kron(pauli(PauliAxis::X), pauli(PauliAxis::X));
  const Operator yy = kron(pauli(PauliAxis::Y), pauli(PauliAxis::Y));
  const Operator xy_pair = xx + yy;
  Operator h = Operator::zero(n);
  for (int c = 0; c < layout.n_cells(); ++c) {
    for (int slot : {1, 2}) h = h + embed(xy_pair, {layout.battery(c, slot), layout.hub(c)}, n);
  }
  return spec.j_coupling * h;
}

HamiltonianSet hamiltonians(const SystemSpec& spec) {
  HamiltonianSet hs = bare_hamiltonian(spec);
  hs.h_charging = charging_hamiltonian(spec);
  return hs;
}

Operator ec_operator(const Operator& h0_hub, const Operator& h_int) {
  using namespace std::complex_literals;
  const Operator c = commutator(h0_hub, h_int);
  Matrix p = -1i * c.matrix();
  const double defect = max_abs(p - p.adjoint());
  if (defect > kHermitianTol * std::max(1.0, max_abs(p))) {
    throw NumericalError("energy-current operator is not hermitian (defect " + std::to_string(defect) +
                         "); inputs must be hermitian");
  }
  // Remove the rounding-level antihermitian part so downstream
  // expectations are exactly real.
  p = 0.5 * (p + p.adjoint()).eval();
  return Operator::hermitian(c.n_qubits(), std::move(p));
}

double charge(const PureState& psi, const HamiltonianSet& hs) {
  return expectation(hs.h0_hub, psi).real() - hs.e_empty;
}

double charge(const DensityMatrix& rho, const HamiltonianSet& hs) {
  return expectation(hs.h0_hub, rho).real() - hs.e_empty;
}

std::vector<double> hub_charges(const PureState& psi, const SystemSpec& spec) {
  const int n = spec.layout.n_qubits();
  const Operator e = qubit_energy(spec.omega);
  std::vector<double> out;
  for (int q : spec.layout.hubs()) out.push_back(expectation(embed(e, {q}, n), psi).real() + spec.omega);
  return out;
}

DensityMatrix passive_state(const DensityMatrix& rho, const Operator& h) {
  if (!h.is_hermitian()) throw ValidationError("passive_state: reference Hamiltonian must be hermitian");
  if (rho.n_qubits() != h.n_qubits()) throw ValidationError("passive_state: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> rho_es(rho.matrix(), Eigen::EigenvaluesOnly);
  const EigenSystem h_es = eigh(h);
  const Eigen::Index d = rho.dim();
  // Populations descending onto energies ascending; ties in h pair in index
  // order, which leaves the energy unchanged.
  Matrix sigma = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double p = rho_es.eigenvalues()(d - 1 - k);
    sigma += p * h_es.vectors.col(k) * h_es.vectors.col(k).adjoint();
  }
  sigma = 0.5 * (sigma + sigma.adjoint()).eval();
  sigma /= sigma.trace().real();
  return DensityMatrix::from_matrix(rho.n_qubits(), std::move(sigma));
}

double ergotropy(const DensityMatrix& rho, const Operator& h) {
  if (!h.is_hermitian()) throw ValidationError("ergotropy: reference Hamiltonian must be hermitian");
  if (rho.n_qubits() != h.n_qubits()) throw ValidationError("ergotropy: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> rho_es(rho.matrix(), Eigen::EigenvaluesOnly);
  const EigenSystem h_es = eigh(h);
  const Eigen::Index d = rho.dim();
  double passive_energy = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) passive_energy += rho_es.eigenvalues()(d - 1 - k) * h_es.values(k);
  return expectation(h, rho).real() - passive_energy;
}

}  // namespace qbat
