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

#include "qbat/dynamics.hpp"

#include <cmath>
#include <string>

#include "qbat/errors.hpp"
#include "qbat/simd/kernels.hpp"

namespace qbat {
namespace {

std::span<const cplx> view(const Matrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }
std::span<const cplx> view(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<cplx> view_mut(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// psi <- V diag(exp(-i E t)) V^dagger psi, using `work` as scratch.
void apply_spectral(const EigenSystem& es, double t, Vector& psi, Vector& work) {
  const Eigen::Index d = psi.size();
  work.resize(d);
  simd::adjoint_matvec(view(es.vectors), view(psi), view_mut(work));
  Vector phases(d);
  for (Eigen::Index k = 0; k < d; ++k) phases(k) = std::polar(1.0, -es.values(k) * t);
  simd::hadamard(view(phases), view(work), view_mut(work));
  simd::matvec(view(es.vectors), view(work), view_mut(psi));
}

}  // namespace

void TimeSeries::validate() const {
  const std::size_t n = times.size();
  if (charge.size() != n || ec.size() != n) throw ValidationError("time series: charge/ec length mismatch");
  for (const auto& [name, values] : channels) {
    if (values.size() != n) throw ValidationError("time series: channel '" + name + "' length mismatch");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(times[i] > times[i - 1])) throw ValidationError("time series: times must strictly increase");
  }
}

int SteppingConfig::steps_for(double jt) const {
  const double steps = std::ceil(static_cast<double>(steps_per_unit_jt) * jt);
  return steps < 1.0 ? 1 : static_cast<int>(steps);
}

void SteppingConfig::validate() const {
  if (steps_per_unit_jt < 16) {
    throw ValidationError("steps_per_unit_jt must be at least 16, got " + std::to_string(steps_per_unit_jt));
  }
}

// ---------------------------------------------------------------------------

Propagator::Propagator(const Operator& h) : n_qubits_(h.n_qubits()), es_(eigh(h)) {}

PureState Propagator::apply(const PureState& psi, double t) const {
  if (psi.n_qubits() != n_qubits_) throw ValidationError("propagator: dimension mismatch");
  if (t == 0.0) return psi;
  Vector v = psi.amplitudes();
  Vector work;
  apply_spectral(es_, t, v, work);
  return PureState::from_amplitudes(n_qubits_, std::move(v));
}

Operator Propagator::matrix(double t) const {
  const Eigen::Index d = es_.values.size();
  Vector phases(d);
  for (Eigen::Index k = 0; k < d; ++k) phases(k) = std::polar(1.0, -es_.values(k) * t);
  return Operator::unitary(n_qubits_, es_.vectors * phases.asDiagonal() * es_.vectors.adjoint());
}

PureState evolve_static(const Operator& h, const PureState& psi0, double t) {
  return Propagator(h).apply(psi0, t);
}

PureState evolve_timedep(const HamiltonianPath& h_of, const PureState& psi0, double tau, int n_steps,
                         const StepObserver& observer) {
  if (!(tau >= 0.0)) throw ValidationError("evolve_timedep: tau must be non-negative");
  if (n_steps < 1) throw ValidationError("evolve_timedep: need at least one step");
  if (observer) observer(0, 0.0, psi0);
  if (tau == 0.0) return psi0;

  const int n = psi0.n_qubits();
  const double dt = tau / n_steps;
  Vector v = psi0.amplitudes();
  Vector work;
  for (int k = 0; k < n_steps; ++k) {
    const double s_mid = (k + 0.5) / n_steps;
    const Operator h = h_of(s_mid);
    if (!h.is_hermitian()) throw ValidationError("evolve_timedep: H(s) must be hermitian-flagged");
    if (h.n_qubits() != n) throw ValidationError("evolve_timedep: H(s) dimension mismatch");
    apply_spectral(eigh(h), dt, v, work);
    v /= v.norm();  // each step is unitary; this only strips accumulated rounding
    if (observer) observer(k + 1, static_cast<double>(k + 1) / n_steps, PureState::from_amplitudes(n, v));
  }
  return PureState::from_amplitudes(n, std::move(v));
}

PureState evolve_timedep(const HamiltonianPath& h_of, const PureState& psi0, double tau,
                         const SteppingConfig& cfg, double j_coupling) {
  cfg.validate();
  return evolve_timedep(h_of, psi0, tau, cfg.steps_for(j_coupling * tau));
}

// ---------------------------------------------------------------------------

Operator to_interaction_picture(const Operator& h0, const Operator& op, double t) {
  const Operator z = Propagator(h0).matrix(t);
  const Matrix m = z.matrix().adjoint() * op.matrix() * z.matrix();
  if (op.is_hermitian()) return Operator::hermitian(op.n_qubits(), 0.5 * (m + m.adjoint()));
  return Operator::general(op.n_qubits(), m);
}

PureState to_interaction_picture(const Operator& h0, const PureState& psi, double t) {
  return Propagator(h0).apply(psi, -t);
}

Operator from_interaction_picture(const Operator& h0, const Operator& op, double t) {
  return to_interaction_picture(h0, op, -t);
}

PureState from_interaction_picture(const Operator& h0, const PureState& psi, double t) {
  return Propagator(h0).apply(psi, t);
}

// ---------------------------------------------------------------------------

TimeSeries sample_trajectory(const Operator& h, const PureState& psi0, double t_final, int n_samples,
                             const HamiltonianSet& hs, const Operator& p_hat) {
  if (n_samples < 2) throw ValidationError("sample_trajectory: need at least two samples");
  if (!(t_final > 0.0)) throw ValidationError("sample_trajectory: t_final must be positive");
  const Propagator prop(h);
  TimeSeries ts;
  for (int k = 0; k < n_samples; ++k) {
    const double t = t_final * k / (n_samples - 1);
    const PureState psi = prop.apply(psi0, t);
    ts.times.push_back(t);
    ts.charge.push_back(charge(psi, hs));
    ts.ec.push_back(expectation(p_hat, psi).real());
  }
  return ts;
}

TimeSeries sample_trajectory(const HamiltonianPath& h_of, const PureState& psi0, double tau, int n_samples,
                             const HamiltonianSet& hs, const SteppingConfig& cfg, double j_coupling) {
  if (n_samples < 2) throw ValidationError("sample_trajectory: need at least two samples");
  if (!(tau > 0.0)) throw ValidationError("sample_trajectory: tau must be positive");
  cfg.validate();
  const int intervals = n_samples - 1;
  const int per_interval = cfg.steps_for(j_coupling * tau / intervals);
  TimeSeries ts;
  auto record = [&](int step, double s, const PureState& psi) {
    if (step % per_interval != 0) return;
    ts.times.push_back(s * tau);
    ts.charge.push_back(charge(psi, hs));
    ts.ec.push_back(expectation(ec_operator(hs.h0_hub, h_of(s)), psi).real());
  };
  evolve_timedep(h_of, psi0, tau, intervals * per_interval, record);
  return ts;
}

DensityMatrix collective_dephasing(const DensityMatrix& rho, double gamma, double t) {
  if (!(gamma >= 0.0)) throw ValidationError("collective_dephasing: gamma must be non-negative");
  if (!(t >= 0.0)) throw ValidationError("collective_dephasing: t must be non-negative");
  if (rho.n_qubits() != 2) throw ValidationError("collective_dephasing: expects a two-qubit battery state");
  const Operator z = pauli(PauliAxis::Z);
  const Operator collective = embed(z, {0}, 2) + embed(z, {1}, 2);
  const Eigen::Index d = rho.dim();
  Matrix out = rho.matrix();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double dz = collective(i, i).real() - collective(j, j).real();
      out(i, j) *= std::exp(-0.5 * gamma * t * dz * dz);
    }
  }
  return DensityMatrix::from_matrix(2, std::move(out));
}

}  // namespace qbat
