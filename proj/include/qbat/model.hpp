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

// Physical objects of a battery-cell + consumption-hub register: bare and
// charging Hamiltonians, the energy-current operator, transferred charge,
// ergotropy and passive states.
//
// Units: hbar = 1. Energies are in units of hbar*omega where omega enters,
// couplings in hbar*J, times in 1/J.

#pragma once

#include <vector>

#include "qbat/qalg.hpp"

namespace qbat {

struct SystemSpec {
  double omega = 1.0;       // qubit splitting
  double j_coupling = 1.0;  // XY coupling strength
  QubitLayout layout = QubitLayout::cells(1);

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

struct HamiltonianSet {
  Operator h0_battery;
  Operator h0_hub;
  Operator h0_total;
  Operator h_charging;
  double e_empty;  // energy of the empty hub register, -omega per hub qubit
};

/// Full charge available in one Bell-state cell, 2*omega.
double full_charge(const SystemSpec& spec);
/// First full-discharge time of |beta_10>, pi / (4 sqrt(2) J).
double discharge_time(const SystemSpec& spec);

/// omega (|1><1| - |0><0|) on one qubit, built from projectors so |1> is the
/// excited level regardless of the Pauli sign convention.
Operator qubit_energy(double omega);

/// Bare parts only; h_charging is the zero operator.
HamiltonianSet bare_hamiltonian(const SystemSpec& spec);

/// J sum_{n=1,2} (X_Bn X_A + Y_Bn Y_A), summed over every cell of the
/// layout (cells do not couple to each other).
Operator charging_hamiltonian(const SystemSpec& spec);

/// bare_hamiltonian plus charging_hamiltonian.
HamiltonianSet hamiltonians(const SystemSpec& spec);

/// Energy-current operator -i [h0_hub, h_int]. Throws NumericalError if the
/// result is not hermitian, which signals non-hermitian inputs.
Operator ec_operator(const Operator& h0_hub, const Operator& h_int);

/// tr(H0_hub rho) - E_empty.
double charge(const PureState& psi, const HamiltonianSet& hs);
double charge(const DensityMatrix& rho, const HamiltonianSet& hs);

/// Charge held by each hub qubit of the layout, in cell order.
std::vector<double> hub_charges(const PureState& psi, const SystemSpec& spec);

/// Canonical passive state: eigen-populations of rho in descending order
/// placed on eigenvectors of h in ascending energy order.
DensityMatrix passive_state(const DensityMatrix& rho, const Operator& h);
/// tr(h rho) - tr(h passive_state(rho, h)).
double ergotropy(const DensityMatrix& rho, const Operator& h);

}  // namespace qbat
