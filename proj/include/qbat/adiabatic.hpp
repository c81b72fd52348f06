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

// Stable discharge by adiabatic interpolation between a battery-only XY
// Hamiltonian and an Ising-type final Hamiltonian whose ground space holds
// the discharged state.
//
// Qubits are (B1, B2, A) = (0, 1, 2).

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qbat/dynamics.hpp"
#include "qbat/qalg.hpp"

namespace qbat {

enum class Schedule { Linear, SinSquared, Smoothstep };

inline constexpr Schedule kAllSchedules[] = {Schedule::Linear, Schedule::SinSquared, Schedule::Smoothstep};

/// f(s) = s, sin^2(pi s / 2) or 3 s^2 - 2 s^3; f(0) = 0 and f(1) = 1 exactly.
double schedule_value(Schedule schedule, double s);
std::string to_string(Schedule schedule);
/// "linear", "sin2" or "smoothstep".
Schedule parse_schedule(const std::string& text);

struct AdiabaticSpec {
  double j_coupling = 1.0;
  double tau = 100.0;  // total time, units 1/J when j_coupling = 1
  Schedule schedule = Schedule::Linear;
  SteppingConfig stepping{};

  void validate() const;
  double jtau() const { return j_coupling * tau; }
};

/// J (X1 X2 + Y1 Y2)
Operator initial_hamiltonian(double j_coupling);
/// J (X1 X2 + Y1 Y2 + X2 XA + Y2 YA)
Operator middle_hamiltonian(double j_coupling);
/// J (Z1 ZA + Z2 ZA)
Operator final_hamiltonian(double j_coupling);

/// H(s) = (1 - f) H_i + (1 - f) f H_m + f H_f with the three pieces built
/// once. Also carries the EC operator -i [H0_A, H(s)], which is linear in
/// the pieces.
class AdiabaticHamiltonian {
 public:
  AdiabaticHamiltonian(double j_coupling, Schedule schedule, double omega = 1.0);

  Operator at(double s) const;
  Operator ec_at(double s) const;
  const Operator& h0_hub() const { return h0_hub_; }
  double omega() const { return omega_; }

 private:
  Schedule schedule_;
  double omega_;
  Operator hi_, hm_, hf_;
  Operator pi_, pm_, pf_;
  Operator h0_hub_;
};

/// Throws ValidationError for s outside [0, 1].
Operator build_ht(const AdiabaticSpec& spec, double s);

/// Z1 Z2 ZA
Operator parity_operator();

PureState adiabatic_initial_state();    // |beta_11> (x) |0>
PureState adiabatic_target_state();     // |00> (x) |1>
PureState adiabatic_forbidden_state();  // |11> (x) |0>

struct ParityReport {
  double max_commutator;  // max over s of ||[H(s), Pi_z]||_max
  double parity_initial;
  double parity_target;
  double parity_forbidden;
  int n_samples;

  /// Commutator below tol, initial and target parities equal, forbidden
  /// parity opposite.
  bool ok(double tol = 1e-12) const;
};

/// Samples n_samples uniform s in [0, 1].
ParityReport parity_check(const AdiabaticSpec& spec, int n_samples);
ParityReport parity_check(const AdiabaticSpec& spec, std::span<const double> s_values);

struct DischargeReport {
  double jtau;
  double final_charge;       // hbar omega
  double fidelity_target;
  double leakage_forbidden;
  double min_gap_sector;     // hbar J, occupied branch vs rest of the odd-parity sector
  double ec_tail;            // hbar omega J, max |<P>| over s >= 0.9
  double parity_drift;       // max |<Pi_z>(s) - <Pi_z>(0)|
};

/// Evolves |beta_11>|0> under H(s) for the full time tau.
DischargeReport run_discharge(const AdiabaticSpec& spec, double omega = 1.0);

/// Samples the same run at n_samples uniform s: charge and ec channels plus
/// "fidelity_target", "leakage_forbidden" and "parity".
TimeSeries adiabatic_trajectory(const AdiabaticSpec& spec, double omega = 1.0, int n_samples = 101);

/// Sudden limit: the initial state read out without evolution.
DischargeReport sudden_discharge(double omega = 1.0);

/// Minimum gap between the branch continuously connected to the odd-parity
/// ground state at s = 0 and the rest of the odd-parity sector.
double min_sector_gap(const AdiabaticSpec& spec, int n_samples = 257);

struct SweepRow {
  double jtau;
  Schedule schedule;
  double fidelity_target;
  double leakage_forbidden;
  double charge_ratio;  // final charge / 2 hbar omega
  double ec_tail;
};

/// One row per (jtau, schedule), ordered by jtau then schedule; jtau = 0 is
/// the sudden limit. Runs are distributed over parallel workers.
std::vector<SweepRow> sweep_tau(const AdiabaticSpec& templ, const std::vector<double>& jtau_values,
                                double omega = 1.0);

struct AdiabaticDecomposition {
  Vector coefficients;            // c_n, fixed by the initial state
  Eigen::VectorXd energies;       // E_n(s), tracked branch order
  Eigen::VectorXd phases;         // dynamic + geometric phase
  Matrix eigenvectors;            // |E_n(s)> as columns
  std::vector<int> sector;        // excitation number of each branch
};

struct AdiabaticEcResult {
  /// Channels: charge, ec (exact <P>), "ec_adiabatic" (sum over branch
  /// pairs), "ec_adiabatic_direct" (<psi_ad| P |psi_ad>), "fidelity_adiabatic".
  TimeSeries series;
  AdiabaticDecomposition final;
};

/// Adiabatic EC prediction alongside the exact evolution. Branches are
/// tracked by maximum overlap inside excitation-number sectors (which refine
/// the parity sectors); degenerate clusters are aligned to the previous
/// sample by a unitary Procrustes fit. Pairs of branches with equal energy
/// contribute exactly zero, so single-eigenspace data gives 0.0.
AdiabaticEcResult adiabatic_ec(const AdiabaticSpec& spec, const PureState& psi0, double omega = 1.0,
                               int n_samples = 65);

/// Instantaneous eigenbasis of H(s), sector by sector; columns ordered by
/// sector then energy.
AdiabaticDecomposition instantaneous_basis(const AdiabaticSpec& spec, double s);

}  // namespace qbat
