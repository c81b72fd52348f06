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

#include "qbat/adiabatic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SVD>

#include "qbat/errors.hpp"
#include "qbat/model.hpp"
#include "qbat/parallel.hpp"

namespace qbat {
namespace {

constexpr int kQubits = 3;
constexpr double kDropWeight = 1e-12;  // occupied-branch cutoff, |c_n|^2
constexpr double kClusterTol = 1e-9;   // equal-energy tolerance, units of J

Operator xy_pair(int a, int b) {
  return embed(kron(pauli(PauliAxis::X), pauli(PauliAxis::X)), {a, b}, kQubits) +
         embed(kron(pauli(PauliAxis::Y), pauli(PauliAxis::Y)), {a, b}, kQubits);
}

Operator zz_pair(int a, int b) { return embed(kron(pauli(PauliAxis::Z), pauli(PauliAxis::Z)), {a, b}, kQubits); }

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("s must lie in [0, 1], got " + std::to_string(s));
}

// Basis indices grouped by excitation number.
std::vector<std::vector<Eigen::Index>> excitation_sectors() {
  std::vector<std::vector<Eigen::Index>> out(kQubits + 1);
  for (Eigen::Index i = 0; i < (Eigen::Index{1} << kQubits); ++i) {
    out[std::popcount(static_cast<unsigned>(i))].push_back(i);
  }
  return out;
}

std::vector<Eigen::Index> odd_parity_indices() {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < (Eigen::Index{1} << kQubits); ++i) {
    if (std::popcount(static_cast<unsigned>(i)) % 2 == 1) out.push_back(i);
  }
  return out;
}

Matrix restrict(const Matrix& h, const std::vector<Eigen::Index>& idx) {
  const auto d = static_cast<Eigen::Index>(idx.size());
  Matrix sub(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) sub(a, b) = h(idx[a], idx[b]);
  }
  return sub;
}

// Ranges [begin, end) of columns whose energies agree within tol.
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const Eigen::VectorXd& e, Eigen::Index lo,
                                                            Eigen::Index hi, double tol) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = lo;
  for (Eigen::Index k = lo + 1; k <= hi; ++k) {
    if (k == hi || e(k) - e(k - 1) > tol) {
      out.emplace_back(start, k);
      start = k;
    }
  }
  return out;
}

AdiabaticDecomposition diagonalize_sectors(const Matrix& h) {
  const auto sectors = excitation_sectors();
  const Eigen::Index dim = h.rows();
  AdiabaticDecomposition d;
  d.energies.resize(dim);
  d.eigenvectors = Matrix::Zero(dim, dim);
  Eigen::Index col = 0;
  for (std::size_t n = 0; n < sectors.size(); ++n) {
    const auto& idx = sectors[n];
    Eigen::SelfAdjointEigenSolver<Matrix> es(restrict(h, idx));
    if (es.info() != Eigen::Success) throw NumericalError("sector eigendecomposition failed");
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k, ++col) {
      d.energies(col) = es.eigenvalues()(k);
      for (std::size_t a = 0; a < idx.size(); ++a) d.eigenvectors(idx[a], col) = es.eigenvectors()(a, k);
      d.sector.push_back(static_cast<int>(n));
    }
  }
  return d;
}

// Column range of each sector in a decomposition.
std::vector<std::pair<Eigen::Index, Eigen::Index>> sector_ranges(const std::vector<int>& sector) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= static_cast<Eigen::Index>(sector.size()); ++k) {
    if (k == static_cast<Eigen::Index>(sector.size()) || sector[k] != sector[k - 1]) {
      out.emplace_back(start, k);
      start = k;
    }
  }
  return out;
}

// Aligns `next` to `prev` column by column: degenerate clusters are rotated
// onto the previous vectors they overlap most, then branches are matched by
// greedy maximum overlap.
void align(const AdiabaticDecomposition& prev, AdiabaticDecomposition& next, double tol) {
  for (const auto& [lo, hi] : sector_ranges(next.sector)) {
    const Eigen::Index d = hi - lo;
    const Matrix vp = prev.eigenvectors.middleCols(lo, d);

    for (const auto& [a, b] : clusters(next.energies, lo, hi, tol)) {
      const Eigen::Index c = b - a;
      if (c < 2) continue;
      const Matrix w = next.eigenvectors.middleCols(a, c);
      const Eigen::VectorXd weight = (vp.adjoint() * w).rowwise().squaredNorm();
      std::vector<Eigen::Index> rows(static_cast<std::size_t>(d));
      for (Eigen::Index k = 0; k < d; ++k) rows[k] = k;
      std::stable_sort(rows.begin(), rows.end(), [&](Eigen::Index x, Eigen::Index y) { return weight(x) > weight(y); });
      Matrix target(vp.rows(), c);
      for (Eigen::Index k = 0; k < c; ++k) target.col(k) = vp.col(rows[k]);
      Eigen::JacobiSVD<Matrix> svd(w.adjoint() * target, Eigen::ComputeFullU | Eigen::ComputeFullV);
      next.eigenvectors.middleCols(a, c) = w * (svd.matrixU() * svd.matrixV().adjoint());
    }

    const Matrix overlap = vp.adjoint() * next.eigenvectors.middleCols(lo, d);
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(d), -1);
    std::vector<bool> used(static_cast<std::size_t>(d), false);
    for (Eigen::Index round = 0; round < d; ++round) {
      double best = -1.0;
      Eigen::Index bi = 0, bj = 0;
      for (Eigen::Index i = 0; i < d; ++i) {
        if (perm[i] >= 0) continue;
        for (Eigen::Index j = 0; j < d; ++j) {
          if (used[j]) continue;
          if (std::abs(overlap(i, j)) > best) {
            best = std::abs(overlap(i, j));
            bi = i;
            bj = j;
          }
        }
      }
      perm[bi] = bj;
      used[bj] = true;
    }
    const Matrix cols = next.eigenvectors.middleCols(lo, d);
    const Eigen::VectorXd vals = next.energies.segment(lo, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      next.eigenvectors.col(lo + i) = cols.col(perm[i]);
      next.energies(lo + i) = vals(perm[i]);
    }
  }
}

// Degenerate clusters at the first sample are resolved by the Hamiltonian
// one sample later, which selects the branches that actually continue.
void lift_initial(AdiabaticDecomposition& d, const Matrix& h_next, double tol) {
  for (const auto& [lo, hi] : sector_ranges(d.sector)) {
    for (const auto& [a, b] : clusters(d.energies, lo, hi, tol)) {
      const Eigen::Index c = b - a;
      if (c < 2) continue;
      const Matrix w = d.eigenvectors.middleCols(a, c);
      Eigen::SelfAdjointEigenSolver<Matrix> es(w.adjoint() * h_next * w);
      d.eigenvectors.middleCols(a, c) = w * es.eigenvectors();
    }
  }
}

double expectation_of(const Matrix& op, const Vector& v) { return v.dot(op * v).real(); }

}  // namespace

// ---------------------------------------------------------------------------

double schedule_value(Schedule schedule, double s) {
  check_s(s);
  switch (schedule) {
    case Schedule::Linear: return s;
    case Schedule::SinSquared: {
      if (s == 1.0) return 1.0;
      const double x = std::sin(0.5 * std::numbers::pi * s);
      return x * x;
    }
    case Schedule::Smoothstep: return s * s * (3.0 - 2.0 * s);
  }
  throw ValidationError("unknown schedule");
}

std::string to_string(Schedule schedule) {
  switch (schedule) {
    case Schedule::Linear: return "linear";
    case Schedule::SinSquared: return "sin2";
    case Schedule::Smoothstep: return "smoothstep";
  }
  return "?";
}

Schedule parse_schedule(const std::string& text) {
  for (Schedule s : kAllSchedules) {
    if (to_string(s) == text) return s;
  }
  throw ValidationError("schedule must be one of linear, sin2, smoothstep; got '" + text + "'");
}

void AdiabaticSpec::validate() const {
  if (!(j_coupling > 0.0) || !std::isfinite(j_coupling)) {
    throw ValidationError("j_coupling must be positive, got " + std::to_string(j_coupling));
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("tau must be positive, got " + std::to_string(tau));
  stepping.validate();
}

Operator initial_hamiltonian(double j) { return j * xy_pair(0, 1); }
Operator middle_hamiltonian(double j) { return j * (xy_pair(0, 1) + xy_pair(1, 2)); }
Operator final_hamiltonian(double j) { return j * (zz_pair(0, 2) + zz_pair(1, 2)); }

AdiabaticHamiltonian::AdiabaticHamiltonian(double j, Schedule schedule, double omega)
    : schedule_(schedule),
      omega_(omega),
      hi_(initial_hamiltonian(j)),
      hm_(middle_hamiltonian(j)),
      hf_(final_hamiltonian(j)),
      pi_(Operator::zero(kQubits)),
      pm_(Operator::zero(kQubits)),
      pf_(Operator::zero(kQubits)),
      h0_hub_(embed(qubit_energy(omega), {2}, kQubits)) {
  if (!(j > 0.0)) throw ValidationError("j_coupling must be positive");
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  pi_ = ec_operator(h0_hub_, hi_);
  pm_ = ec_operator(h0_hub_, hm_);
  pf_ = ec_operator(h0_hub_, hf_);
}

Operator AdiabaticHamiltonian::at(double s) const {
  const double f = schedule_value(schedule_, s);
  return (1.0 - f) * hi_ + ((1.0 - f) * f) * hm_ + f * hf_;
}

Operator AdiabaticHamiltonian::ec_at(double s) const {
  const double f = schedule_value(schedule_, s);
  return (1.0 - f) * pi_ + ((1.0 - f) * f) * pm_ + f * pf_;
}

Operator build_ht(const AdiabaticSpec& spec, double s) {
  check_s(s);
  spec.validate();
  return AdiabaticHamiltonian(spec.j_coupling, spec.schedule).at(s);
}

Operator parity_operator() {
  const Operator z = pauli(PauliAxis::Z);
  return kron(kron(z, z), z);
}

PureState adiabatic_initial_state() {
  Vector v = Vector::Zero(8);
  v(0b010) = 1.0 / std::numbers::sqrt2;
  v(0b100) = -1.0 / std::numbers::sqrt2;
  return PureState::from_amplitudes(kQubits, std::move(v));
}

PureState adiabatic_target_state() { return PureState::basis("001"); }
PureState adiabatic_forbidden_state() { return PureState::basis("110"); }

// ---------------------------------------------------------------------------
// Parity

bool ParityReport::ok(double tol) const {
  return max_commutator <= tol && std::abs(parity_initial - parity_target) <= tol &&
         std::abs(parity_initial + parity_forbidden) <= tol;
}

ParityReport parity_check(const AdiabaticSpec& spec, std::span<const double> s_values) {
  spec.validate();
  if (s_values.size() < 2) throw ValidationError("parity_check: need at least two samples");
  const AdiabaticHamiltonian ham(spec.j_coupling, spec.schedule);
  const Operator pz = parity_operator();
  ParityReport r{};
  r.n_samples = static_cast<int>(s_values.size());
  for (double s : s_values) r.max_commutator = std::max(r.max_commutator, max_abs(commutator(ham.at(s), pz).matrix()));
  r.parity_initial = expectation(pz, adiabatic_initial_state()).real();
  r.parity_target = expectation(pz, adiabatic_target_state()).real();
  r.parity_forbidden = expectation(pz, adiabatic_forbidden_state()).real();
  return r;
}

ParityReport parity_check(const AdiabaticSpec& spec, int n_samples) {
  if (n_samples < 2) throw ValidationError("parity_check: need at least two samples");
  std::vector<double> s(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) s[k] = static_cast<double>(k) / (n_samples - 1);
  return parity_check(spec, s);
}

// ---------------------------------------------------------------------------
// Discharge runs

double min_sector_gap(const AdiabaticSpec& spec, int n_samples) {
  spec.validate();
  if (n_samples < 2) throw ValidationError("min_sector_gap: need at least two samples");
  const AdiabaticHamiltonian ham(spec.j_coupling, spec.schedule);
  const auto odd = odd_parity_indices();
  Vector occupied;
  double gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_samples; ++k) {
    const double s = static_cast<double>(k) / (n_samples - 1);
    Eigen::SelfAdjointEigenSolver<Matrix> es(restrict(ham.at(s).matrix(), odd));
    Eigen::Index occ = 0;
    if (k > 0) (es.eigenvectors().adjoint() * occupied).cwiseAbs().maxCoeff(&occ);
    occupied = es.eigenvectors().col(occ);
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
      if (j != occ) gap = std::min(gap, std::abs(es.eigenvalues()(j) - es.eigenvalues()(occ)));
    }
  }
  return gap;
}

DischargeReport run_discharge(const AdiabaticSpec& spec, double omega) {
  spec.validate();
  const AdiabaticHamiltonian ham(spec.j_coupling, spec.schedule, omega);
  const Matrix pz = parity_operator().matrix();
  const PureState psi0 = adiabatic_initial_state();
  const double parity0 = expectation_of(pz, psi0.amplitudes());

  DischargeReport r{};
  r.jtau = spec.jtau();
  const int n_steps = spec.stepping.steps_for(spec.jtau());
  const int tail_start = static_cast<int>(std::floor(0.9 * n_steps));
  auto observe = [&](int step, double s, const PureState& psi) {
    r.parity_drift = std::max(r.parity_drift, std::abs(expectation_of(pz, psi.amplitudes()) - parity0));
    if (step >= tail_start) r.ec_tail = std::max(r.ec_tail, std::abs(expectation(ham.ec_at(s), psi).real()));
  };
  const PureState psi = evolve_timedep([&](double s) { return ham.at(s); }, psi0, spec.tau, n_steps, observe);

  r.final_charge = expectation(ham.h0_hub(), psi).real() + omega;
  r.fidelity_target = fidelity(adiabatic_target_state(), psi);
  r.leakage_forbidden = fidelity(adiabatic_forbidden_state(), psi);
  r.min_gap_sector = min_sector_gap(spec);
  return r;
}

TimeSeries adiabatic_trajectory(const AdiabaticSpec& spec, double omega, int n_samples) {
  spec.validate();
  if (n_samples < 2) throw ValidationError("adiabatic_trajectory: need at least two samples");
  const AdiabaticHamiltonian ham(spec.j_coupling, spec.schedule, omega);
  const Operator pz = parity_operator();
  const PureState target = adiabatic_target_state();
  const PureState forbidden = adiabatic_forbidden_state();
  const int intervals = n_samples - 1;
  const int per_interval = spec.stepping.steps_for(spec.jtau() / intervals);

  TimeSeries ts;
  auto& fid = ts.channels["fidelity_target"];
  auto& leak = ts.channels["leakage_forbidden"];
  auto& par = ts.channels["parity"];
  auto observe = [&](int step, double s, const PureState& psi) {
    if (step % per_interval != 0) return;
    ts.times.push_back(s * spec.tau);
    ts.charge.push_back(expectation(ham.h0_hub(), psi).real() + omega);
    ts.ec.push_back(expectation(ham.ec_at(s), psi).real());
    fid.push_back(fidelity(target, psi));
    leak.push_back(fidelity(forbidden, psi));
    par.push_back(expectation(pz, psi).real());
  };
  evolve_timedep([&](double s) { return ham.at(s); }, adiabatic_initial_state(), spec.tau, intervals * per_interval,
                 observe);
  return ts;
}

DischargeReport sudden_discharge(double omega) {
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  const AdiabaticHamiltonian ham(1.0, Schedule::Linear, omega);
  const PureState psi = adiabatic_initial_state();
  DischargeReport r{};
  r.final_charge = expectation(ham.h0_hub(), psi).real() + omega;
  r.fidelity_target = fidelity(adiabatic_target_state(), psi);
  r.leakage_forbidden = fidelity(adiabatic_forbidden_state(), psi);
  AdiabaticSpec one;
  r.min_gap_sector = min_sector_gap(one, 2);
  r.ec_tail = std::abs(expectation(ham.ec_at(0.0), psi).real());
  return r;
}

std::vector<SweepRow> sweep_tau(const AdiabaticSpec& templ, const std::vector<double>& jtau_values, double omega) {
  if (jtau_values.empty()) throw ValidationError("sweep_tau: need at least one J tau value");
  for (double x : jtau_values) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("sweep_tau: J tau values must be non-negative");
  }
  constexpr std::size_t n_sched = std::size(kAllSchedules);
  return parallel_map(jtau_values.size() * n_sched, [&](std::size_t i) {
    const double jtau = jtau_values[i / n_sched];
    const Schedule sched = kAllSchedules[i % n_sched];
    DischargeReport rep;
    if (jtau == 0.0) {
      rep = sudden_discharge(omega);
    } else {
      AdiabaticSpec spec = templ;
      spec.schedule = sched;
      spec.tau = jtau / spec.j_coupling;
      rep = run_discharge(spec, omega);
    }
    return SweepRow{jtau, sched, rep.fidelity_target, rep.leakage_forbidden, rep.final_charge / (2.0 * omega),
                    rep.ec_tail};
  });
}

// ---------------------------------------------------------------------------
// Adiabatic EC

AdiabaticDecomposition instantaneous_basis(const AdiabaticSpec& spec, double s) {
  return diagonalize_sectors(build_ht(spec, s).matrix());
}

AdiabaticEcResult adiabatic_ec(const AdiabaticSpec& spec, const PureState& psi0, double omega, int n_samples) {
  spec.validate();
  if (psi0.n_qubits() != kQubits) throw ValidationError("adiabatic_ec: expects a three-qubit state");
  if (n_samples < 2) throw ValidationError("adiabatic_ec: need at least two samples");
  const AdiabaticHamiltonian ham(spec.j_coupling, spec.schedule, omega);
  const Matrix h0a = ham.h0_hub().matrix();
  const double tol = kClusterTol * spec.j_coupling;

  const int intervals = n_samples - 1;
  const int per_interval = spec.stepping.steps_for(spec.jtau() / intervals);
  const int n_steps = intervals * per_interval;
  const double dt = spec.tau / n_steps;

  AdiabaticDecomposition frame = diagonalize_sectors(ham.at(0.0).matrix());
  lift_initial(frame, ham.at(1.0 / n_steps).matrix(), tol);
  frame.coefficients = frame.eigenvectors.adjoint() * psi0.amplitudes();
  frame.phases = Eigen::VectorXd::Zero(frame.energies.size());
  if (std::abs(frame.coefficients.squaredNorm() - 1.0) > 1e-10) {
    throw NumericalError("adiabatic_ec: initial eigenbasis expansion lost normalization");
  }

  std::vector<Eigen::Index> occupied;
  for (Eigen::Index n = 0; n < frame.coefficients.size(); ++n) {
    if (std::norm(frame.coefficients(n)) >= kDropWeight) occupied.push_back(n);
  }

  AdiabaticEcResult out;
  TimeSeries& ts = out.series;
  auto& ec_ad = ts.channels["ec_adiabatic"];
  auto& ec_direct = ts.channels["ec_adiabatic_direct"];
  auto& fid = ts.channels["fidelity_adiabatic"];

  auto observe = [&](int step, double s, const PureState& psi) {
    if (step > 0) {
      AdiabaticDecomposition next = diagonalize_sectors(ham.at(s).matrix());
      align(frame, next, tol);
      for (Eigen::Index n = 0; n < next.energies.size(); ++n) {
        const cplx link = frame.eigenvectors.col(n).dot(next.eigenvectors.col(n));
        frame.phases(n) += -0.5 * (frame.energies(n) + next.energies(n)) * dt - std::arg(link);
      }
      frame.energies = std::move(next.energies);
      frame.eigenvectors = std::move(next.eigenvectors);
    }
    if (step % per_interval != 0) return;

    // Sum over occupied branch pairs; equal-energy pairs are exactly zero.
    cplx sum = 0.0;
    for (Eigen::Index n : occupied) {
      for (Eigen::Index m : occupied) {
        const double gap = frame.energies(n) - frame.energies(m);
        if (std::abs(gap) <= tol) continue;
        const cplx amp = frame.coefficients(n) * std::conj(frame.coefficients(m)) *
                         std::polar(1.0, frame.phases(n) - frame.phases(m));
        sum += amp * gap * frame.eigenvectors.col(m).dot(h0a * frame.eigenvectors.col(n));
      }
    }
    Vector weights(frame.coefficients.size());
    for (Eigen::Index n = 0; n < weights.size(); ++n) {
      weights(n) = frame.coefficients(n) * std::polar(1.0, frame.phases(n));
    }
    const Vector psi_ad = frame.eigenvectors * weights;

    ts.times.push_back(s * spec.tau);
    ts.charge.push_back(expectation(ham.h0_hub(), psi).real() + omega);
    ts.ec.push_back(expectation(ham.ec_at(s), psi).real());
    ec_ad.push_back(sum.imag());  // (1/i) * sum, real part
    ec_direct.push_back(expectation_of(ham.ec_at(s).matrix(), psi_ad));
    fid.push_back(std::norm(psi_ad.dot(psi.amplitudes())));
  };
  evolve_timedep([&](double s) { return ham.at(s); }, psi0, spec.tau, n_steps, observe);
  out.final = std::move(frame);
  return out;
}

}  // namespace qbat
