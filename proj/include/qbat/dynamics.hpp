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

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qbat/model.hpp"
#include "qbat/qalg.hpp"

namespace qbat {

/// Uniformly or otherwise sampled trajectory. `charge` is in hbar*omega,
/// `ec` in hbar*omega*J; extra channels are keyed by label.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> charge;
  std::vector<double> ec;
  std::map<std::string, std::vector<double>> channels;

  std::size_t size() const { return times.size(); }
  /// Every channel has the length of `times`, and times strictly increase.
  void validate() const;
};

struct SteppingConfig {
  int steps_per_unit_jt = 256;

  /// Step count for a run of dimensionless length jt; at least one step.
  int steps_for(double jt) const;
  void validate() const;
};

/// exp(-i H t) through one eigendecomposition, reusable across times.
class Propagator {
 public:
  explicit Propagator(const Operator& h);

  PureState apply(const PureState& psi, double t) const;
  Operator matrix(double t) const;
  const EigenSystem& spectrum() const { return es_; }

 private:
  int n_qubits_;
  EigenSystem es_;
};

PureState evolve_static(const Operator& h, const PureState& psi0, double t);

/// H as a function of the normalized time s = t / tau in [0, 1].
using HamiltonianPath = std::function<Operator(double s)>;

/// Called at s = 0 and after every step with the step index (0 before the
/// first step) and the current state.
using StepObserver = std::function<void(int step, double s, const PureState& psi)>;

/// Exponential-midpoint integration: each step applies the exact
/// exponential of H at the step midpoint. Unitary per step, second order
/// for time-dependent H, exact for constant H.
PureState evolve_timedep(const HamiltonianPath& h_of, const PureState& psi0, double tau, int n_steps,
                         const StepObserver& observer = {});
/// Step count from cfg.steps_per_unit_jt * j_coupling * tau.
PureState evolve_timedep(const HamiltonianPath& h_of, const PureState& psi0, double tau,
                         const SteppingConfig& cfg, double j_coupling = 1.0);

/// Z^dagger(t) op Z(t) with Z(t) = exp(-i h0 t).
Operator to_interaction_picture(const Operator& h0, const Operator& op, double t);
/// Z^dagger(t) |psi>.
PureState to_interaction_picture(const Operator& h0, const PureState& psi, double t);
Operator from_interaction_picture(const Operator& h0, const Operator& op, double t);
PureState from_interaction_picture(const Operator& h0, const PureState& psi, double t);

/// Samples charge and <p_hat> at n_samples uniform times in [0, t_final]
/// under a constant Hamiltonian.
TimeSeries sample_trajectory(const Operator& h, const PureState& psi0, double t_final, int n_samples,
                             const HamiltonianSet& hs, const Operator& p_hat);

/// Time-dependent variant over [0, tau]; the ec channel uses
/// -i [h0_hub, H(s)] at each sample.
TimeSeries sample_trajectory(const HamiltonianPath& h_of, const PureState& psi0, double tau, int n_samples,
                             const HamiltonianSet& hs, const SteppingConfig& cfg, double j_coupling = 1.0);

/// Collective pure dephasing of a two-qubit battery with the single jump
/// operator L = sqrt(gamma) (Z_1 + Z_2), integrated exactly:
/// rho_ij -> rho_ij exp(-gamma t (z_i - z_j)^2 / 2).
DensityMatrix collective_dephasing(const DensityMatrix& rho, double gamma, double t);

}  // namespace qbat
