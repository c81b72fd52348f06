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

#include "qbat/protocols.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qbat/errors.hpp"
#include "qbat/parallel.hpp"

namespace qbat {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

SystemSpec one_cell(const SystemSpec& spec) {
  SystemSpec s{spec.omega, spec.j_coupling, QubitLayout::cells(1)};
  s.validate();
  return s;
}

// Heisenberg-picture EC blocks restricted to the empty-hub subspace, so
// that <P>(t) for rho_B (x) |0><0| is a 4x4 trace.
class EmptyHubEcProbe {
 public:
  EmptyHubEcProbe(const SystemSpec& spec, int n_times) {
    if (n_times < 2) throw ValidationError("EC probe needs at least two sample times");
    const SystemSpec cell = one_cell(spec);
    const HamiltonianSet hs = hamiltonians(cell);
    const Operator p_hat = ec_operator(hs.h0_hub, hs.h_charging);
    const Propagator prop(hs.h_charging);
    const double t_end = 2.0 * discharge_time(cell);
    for (int k = 0; k < n_times; ++k) {
      const Matrix u = prop.matrix(t_end * k / (n_times - 1)).matrix();
      const Matrix heis = u.adjoint() * p_hat.matrix() * u;
      Matrix block(4, 4);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) block(a, b) = heis(2 * a, 2 * b);  // hub bit = 0
      }
      blocks_.push_back(std::move(block));
    }
  }

  double max_abs_ec(const DensityMatrix& battery_rho) const {
    double worst = 0.0;
    for (const Matrix& block : blocks_) {
      const double p = block.cwiseProduct(battery_rho.matrix().transpose()).sum().real();
      worst = std::max(worst, std::abs(p));
    }
    return worst;
  }

 private:
  std::vector<Matrix> blocks_;
};

std::mt19937_64 sample_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

Matrix restricted_matrix(double r11, double r22, double r33, double r44, double r23) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = r11;
  m(1, 1) = r22;
  m(2, 2) = r33;
  m(3, 3) = r44;
  m(1, 2) = r23;
  m(2, 1) = r23;
  return m;
}

Matrix generic_restricted(std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double d[4];
  double total = 0.0;
  for (double& x : d) total += (x = expo(rng));
  for (double& x : d) x /= total;
  const double r23 = unit(rng) * std::sqrt(d[1] * d[2]);
  return restricted_matrix(d[0], d[1], d[2], d[3], r23);
}

Matrix available_projected_restricted(std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double a = expo(rng), b = expo(rng), c = expo(rng);
  const double total = 2.0 * a + b + c;
  const double r22 = b / total, r33 = c / total;
  return restricted_matrix(a / total, r22, r33, a / total, unit(rng) * std::sqrt(r22 * r33));
}

Matrix singlet_projector() {
  const Vector v = bell_state(BellLabel(1, 1)).amplitudes();
  return v * v.adjoint();
}

DensityMatrix finish(Matrix m) {
  m = 0.5 * (m + m.adjoint()).eval();
  m /= m.trace().real();
  return DensityMatrix::from_matrix(2, std::move(m));
}

Matrix near_singlet(std::mt19937_64& rng, const Matrix& perturbation) {
  std::uniform_real_distribution<double> exponent(-16.0, -1.0);
  const double eps = std::pow(10.0, exponent(rng));
  return (1.0 - eps) * singlet_projector() + eps * perturbation;
}

Matrix ginibre(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(4, 4);
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = cplx(gauss(rng), gauss(rng));
  Matrix m = g * g.adjoint();
  return m / m.trace().real();
}

DensityMatrix sample_unrestricted(std::uint64_t seed, int index) {
  auto rng = sample_rng(seed ^ 0x9e3779b97f4a7c15ULL, index);
  if (index % 2 == 0) return finish(ginibre(rng));
  const Matrix sigma = ginibre(rng);
  return finish(near_singlet(rng, sigma));
}

struct Verdict {
  bool available;
  bool ec;
  double distance;
};

Verdict judge(const DensityMatrix& rho, const SystemSpec& spec, const EmptyHubEcProbe& probe, double cond_tol,
              const DensityMatrix& singlet) {
  const double ca = std::abs(available_energy_formula(rho, spec.omega) - full_charge(spec)) / spec.omega;
  const double cb = probe.max_abs_ec(rho) / (spec.omega * spec.j_coupling);
  return {ca <= cond_tol, cb <= cond_tol, trace_distance(rho, singlet)};
}

template <class Sampler>
ScanStats run_scan(int n, const Sampler& sampler, const SystemSpec& spec, const EmptyHubEcProbe& probe,
                   double cond_tol, double distance_tol) {
  const DensityMatrix singlet = DensityMatrix::from_pure(bell_state(BellLabel(1, 1)));
  const auto verdicts = parallel_map(static_cast<std::size_t>(n), [&](std::size_t i) {
    return judge(sampler(static_cast<int>(i)), spec, probe, cond_tol, singlet);
  });
  ScanStats st;
  st.samples = n;
  for (const Verdict& v : verdicts) {
    st.pass_available += v.available;
    st.pass_ec += v.ec;
    if (v.available && v.ec) {
      ++st.pass_both;
      st.max_passing_distance = std::max(st.max_passing_distance, v.distance);
      if (v.distance > distance_tol) ++st.counterexamples;
    }
  }
  return st;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Bell cells

BellLabel::BellLabel(int n_bit, int m_bit) : n(n_bit), m(m_bit) {
  if ((n != 0 && n != 1) || (m != 0 && m != 1)) throw ValidationError("Bell label bits must be 0 or 1");
}

BellLabel BellLabel::parse(const std::string& text) {
  if (text.size() != 2 || (text[0] != '0' && text[0] != '1') || (text[1] != '0' && text[1] != '1')) {
    throw ValidationError("Bell label must be one of 00, 01, 10, 11; got '" + text + "'");
  }
  return BellLabel(text[0] - '0', text[1] - '0');
}

std::string BellLabel::str() const { return std::to_string(n) + std::to_string(m); }

PureState bell_state(BellLabel label) {
  Vector v = Vector::Zero(4);
  v(label.n) = kInvSqrt2;                                 // |0 n>
  v(2 + (1 - label.n)) = (label.m == 0 ? 1.0 : -1.0) * kInvSqrt2;  // |1 nbar>
  return PureState::from_amplitudes(2, std::move(v));
}

PureState bell_cell_state(BellLabel label) { return kron(bell_state(label), PureState::basis(1, 0)); }

PureState trapped_state() { return bell_cell_state(BellLabel(1, 1)); }

double discharge_weight(BellLabel label) {
  if (label.n == 0) return 0.5;
  return label.m == 0 ? 1.0 : 0.0;
}

double bell_charge_closed_form(BellLabel label, double t, const SystemSpec& spec) {
  spec.validate();
  const double s = std::sin(2.0 * std::numbers::sqrt2 * spec.j_coupling * t);
  return full_charge(spec) * discharge_weight(label) * s * s;
}

TrapReport trapping_check(const Operator& h_int, const HamiltonianSet& hs, const PureState& psi, double tol) {
  if (!(tol > 0.0)) throw ValidationError("trapping_check: tol must be positive");
  const Operator p_hat = ec_operator(hs.h0_hub, h_int);
  const Vector h_psi = apply(h_int, psi);
  const double energy = expectation(h_int, psi).real();
  const double h_residual = (h_psi - energy * psi.amplitudes()).norm();
  const double ec = expectation(p_hat, psi).real();
  const double p_residual = apply(p_hat, psi).norm();
  const bool eigen = h_residual <= tol;
  return {eigen, energy, ec, eigen && std::abs(ec) <= tol && p_residual <= tol, h_residual, p_residual};
}

// ---------------------------------------------------------------------------
// Trapping uniqueness

double available_energy_formula(const DensityMatrix& battery_rho, double omega) {
  if (battery_rho.n_qubits() != 2) throw ValidationError("available energy: expects a two-qubit battery state");
  return omega * (2.0 + battery_rho(0, 0).real() - battery_rho(3, 3).real());
}

double max_ec_over_period(const DensityMatrix& battery_rho, const SystemSpec& spec, int n_times) {
  if (battery_rho.n_qubits() != 2) throw ValidationError("max_ec_over_period: expects a two-qubit battery state");
  return EmptyHubEcProbe(spec, n_times).max_abs_ec(battery_rho);
}

DensityMatrix trapping_constraint_solution() {
  // rho_11 = rho_44 (Ca); 2 rho_11 + rho_22 + rho_33 + 2 rho_23 = 0 (Cb);
  // unit trace; positivity rho_22 rho_33 >= rho_23^2. The first three give
  // rho_23 = -1/2 and rho_22 = 1 - 2 rho_11 - rho_33; positivity then needs
  // -rho_33^2 + (1 - 2 rho_11) rho_33 >= 1/4, whose maximum over rho_33 is
  // (1 - 2 rho_11)^2 / 4, attained at rho_33 = (1 - 2 rho_11) / 2. Hence
  // rho_11 = 0 and rho_33 = 1/2.
  const double r11 = 0.0;
  const double r23 = -0.5;
  const double r33 = (1.0 - 2.0 * r11) / 2.0;
  const double r22 = 1.0 - 2.0 * r11 - r33;
  return DensityMatrix::from_matrix(2, restricted_matrix(r11, r22, r33, r11, r23));
}

DensityMatrix sample_restricted_battery_state(std::uint64_t seed, int index) {
  auto rng = sample_rng(seed, index);
  switch (index % 3) {
    case 0: return finish(generic_restricted(rng));
    case 1: return finish(available_projected_restricted(rng));
    default: {
      const Matrix sigma = generic_restricted(rng);
      return finish(near_singlet(rng, sigma));
    }
  }
}

UniquenessReport trapping_uniqueness_scan(const ScanConfig& cfg, const SystemSpec& spec_in) {
  if (cfg.n_random < 1) throw ValidationError("trapping_uniqueness_scan: n_random must be at least 1");
  if (!(cfg.distance_tol > 0.0)) throw ValidationError("trapping_uniqueness_scan: distance_tol must be positive");
  const SystemSpec spec = one_cell(spec_in);
  const double cond_tol = cfg.condition_tol.value_or(cfg.distance_tol * cfg.distance_tol / 64.0);
  const EmptyHubEcProbe probe(spec, cfg.n_times);

  const DensityMatrix solved = trapping_constraint_solution();
  const DensityMatrix singlet = DensityMatrix::from_pure(bell_state(BellLabel(1, 1)));

  UniquenessReport report{};
  report.solution_distance = trace_distance(solved, singlet);
  report.solution_available = std::abs(available_energy_formula(solved, spec.omega) - full_charge(spec));
  report.solution_max_ec = probe.max_abs_ec(solved);
  report.condition_tol = cond_tol;
  report.restricted = run_scan(
      cfg.n_random, [&](int i) { return sample_restricted_battery_state(cfg.seed, i); }, spec, probe, cond_tol,
      cfg.distance_tol);
  if (cfg.unrestricted) {
    report.unrestricted = run_scan(
        cfg.n_random, [&](int i) { return sample_unrestricted(cfg.seed, i); }, spec, probe, cond_tol,
        cfg.distance_tol);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Switch gates

Operator switch_gate_operator(SwitchGate kind, const SystemSpec& spec_in) {
  const SystemSpec spec = one_cell(spec_in);
  const int n = spec.layout.n_qubits();
  switch (kind) {
    case SwitchGate::HalfOnQubit1: return embed(pauli(PauliAxis::X), {spec.layout.battery(0, 1)}, n);
    case SwitchGate::HalfOnQubit2: return embed(pauli(PauliAxis::X), {spec.layout.battery(0, 2)}, n);
    case SwitchGate::FullOnQubit1: return embed(pauli(PauliAxis::Z), {spec.layout.battery(0, 1)}, n);
    case SwitchGate::FullOnQubit2: return embed(pauli(PauliAxis::Z), {spec.layout.battery(0, 2)}, n);
  }
  throw ValidationError("unknown switch gate");
}

PureState switch_gate(SwitchGate kind, const PureState& psi, const SystemSpec& spec) {
  if (psi.n_qubits() != 3) throw ValidationError("switch_gate: expects a three-qubit cell + hub state");
  return transform(switch_gate_operator(kind, spec), psi);
}

// ---------------------------------------------------------------------------
// Separable baseline

void SeparableParams::validate() const {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(beta1) || !in_unit(beta2)) throw ValidationError("separable amplitudes must lie in [0, 1]");
  if (!std::isfinite(theta1) || !std::isfinite(theta2)) throw ValidationError("separable phases must be finite");
}

double SeparableParams::alpha1() const { return std::sqrt(1.0 - beta1 * beta1); }
double SeparableParams::alpha2() const { return std::sqrt(1.0 - beta2 * beta2); }

PureState separable_cell_state(const SeparableParams& p) {
  p.validate();
  Vector phi1(2), phi2(2);
  phi1 << p.alpha1(), std::polar(p.beta1, p.theta1);
  phi2 << p.alpha2(), std::polar(p.beta2, p.theta2);
  return kron(kron(PureState::normalized(1, phi1), PureState::normalized(1, phi2)), PureState::basis(1, 0));
}

double separable_max_charge(const SeparableParams& p, const SystemSpec& spec) {
  p.validate();
  spec.validate();
  const double cross = p.beta1 * p.beta2 * p.alpha1() * p.alpha2() * std::cos(p.theta1 - p.theta2);
  return full_charge(spec) * (cross + 0.5 * (p.beta1 * p.beta1 + p.beta2 * p.beta2));
}

double separable_charge_simulated(const SeparableParams& p, const SystemSpec& spec_in) {
  const SystemSpec spec = one_cell(spec_in);
  const HamiltonianSet hs = hamiltonians(spec);
  return charge(evolve_static(hs.h_charging, separable_cell_state(p), discharge_time(spec)), hs);
}

SeparableSurface separable_sweep(int grid_n, const SystemSpec& spec_in, int n_check, std::uint64_t seed) {
  if (grid_n < 2) throw ValidationError("separable sweep: grid must have at least 2 points per axis");
  const SystemSpec spec = one_cell(spec_in);
  const double e0 = full_charge(spec);

  SeparableSurface s{};
  s.grid_n = grid_n;
  for (int i = 0; i < grid_n; ++i) s.betas.push_back(static_cast<double>(i) / (grid_n - 1));
  s.ratio.resize(static_cast<std::size_t>(grid_n) * grid_n);
  s.max_ratio = -1.0;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const double r = separable_max_charge({s.betas[i], s.betas[j], 0.0, 0.0}, spec) / e0;
      s.ratio[static_cast<std::size_t>(i) * grid_n + j] = r;
      if (r > s.max_ratio) {
        s.max_ratio = r;
        s.argmax_beta1 = s.betas[i];
        s.argmax_beta2 = s.betas[j];
      }
    }
  }
  s.points_at_max = static_cast<int>(
      std::count_if(s.ratio.begin(), s.ratio.end(), [&](double r) { return r >= s.max_ratio - 1e-12; }));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, grid_n - 1);
  std::vector<std::pair<int, int>> points;
  for (int k = 0; k < n_check; ++k) points.emplace_back(pick(rng), pick(rng));
  const auto deviations = parallel_map(points.size(), [&](std::size_t k) {
    const auto [i, j] = points[k];
    const double sim = separable_charge_simulated({s.betas[i], s.betas[j], 0.0, 0.0}, spec) / e0;
    return std::abs(sim - s.ratio[static_cast<std::size_t>(i) * grid_n + j]);
  });
  s.n_simulated = static_cast<int>(deviations.size());
  s.max_sim_deviation = deviations.empty() ? 0.0 : *std::max_element(deviations.begin(), deviations.end());
  return s;
}

// ---------------------------------------------------------------------------
// Single-particle baseline

double single_particle_charge(double t, const SystemSpec& spec) {
  spec.validate();
  const double s = std::sin(2.0 * spec.j_coupling * t);
  return 2.0 * spec.omega * s * s;
}

double single_particle_charge_simulated(double t, const SystemSpec& spec) {
  spec.validate();
  const Operator xy = kron(pauli(PauliAxis::X), pauli(PauliAxis::X)) + kron(pauli(PauliAxis::Y), pauli(PauliAxis::Y));
  const Operator h = spec.j_coupling * xy;
  const Operator hub_energy = embed(qubit_energy(spec.omega), {1}, 2);
  const PureState psi = evolve_static(h, PureState::basis("10"), t);
  return expectation(hub_energy, psi).real() + spec.omega;
}

double single_particle_transfer_time(const SystemSpec& spec) {
  spec.validate();
  return std::numbers::pi / (4.0 * spec.j_coupling);
}

// ---------------------------------------------------------------------------
// N-cell plans

NCellPlan NCellPlan::parse(const std::string& text) {
  NCellPlan plan;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "h" || lower(tok) == "hold") {
      plan.actions.push_back(CellAction::Hold);
    } else if (tok == "H" || lower(tok) == "half") {
      plan.actions.push_back(CellAction::Half);
    } else if (tok == "f" || tok == "F" || lower(tok) == "full") {
      plan.actions.push_back(CellAction::Full);
    } else {
      throw ValidationError("plan entry '" + tok + "' is not one of h (hold), H (half), f (full)");
    }
  }
  if (plan.actions.empty()) throw ValidationError("plan must name at least one cell");
  if (3 * plan.n_cells() > kMaxQubits) {
    throw ValidationError("plan has " + std::to_string(plan.n_cells()) + " cells; at most " +
                          std::to_string(kMaxQubits / 3) + " are supported");
  }
  return plan;
}

NCellPlan NCellPlan::for_quanta(int n_cells, int quanta) {
  if (n_cells < 1) throw ValidationError("for_quanta: need at least one cell");
  if (quanta < 0 || quanta > 2 * n_cells) throw ValidationError("for_quanta: quanta out of reach for this many cells");
  NCellPlan plan;
  for (int c = 0; c < n_cells; ++c) {
    const int left = quanta - 2 * c;
    plan.actions.push_back(left >= 2 ? CellAction::Full : left == 1 ? CellAction::Half : CellAction::Hold);
  }
  return plan;
}

namespace {

PureState cell_start(CellAction a) {
  switch (a) {
    case CellAction::Hold: return trapped_state();
    case CellAction::Half: return switch_gate(SwitchGate::HalfOnQubit1, trapped_state());
    case CellAction::Full: return switch_gate(SwitchGate::FullOnQubit1, trapped_state());
  }
  throw ValidationError("unknown cell action");
}

}  // namespace

PureState ncell_initial_state(const NCellPlan& plan) {
  if (plan.actions.empty()) throw ValidationError("plan must name at least one cell");
  PureState psi = cell_start(plan.actions.front());
  for (std::size_t c = 1; c < plan.actions.size(); ++c) psi = kron(psi, cell_start(plan.actions[c]));
  return psi;
}

NCellResult ncell_plan_energy(const NCellPlan& plan, const SystemSpec& spec_in) {
  if (plan.actions.empty()) throw ValidationError("plan must name at least one cell");
  const SystemSpec spec = one_cell(spec_in);
  const HamiltonianSet hs = hamiltonians(spec);
  const Operator p_hat = ec_operator(hs.h0_hub, hs.h_charging);
  const double tau_d = discharge_time(spec);

  NCellResult r{0.0, {}, 0.5 * full_charge(spec), 0.0};
  for (CellAction a : plan.actions) {
    const TimeSeries ts = sample_trajectory(hs.h_charging, cell_start(a), tau_d, 33, hs, p_hat);
    r.per_cell.push_back(ts.charge.back());
    r.total_energy += ts.charge.back();
    for (double p : ts.ec) r.max_abs_ec = std::max(r.max_abs_ec, std::abs(p));
  }
  return r;
}

std::string to_string(SwitchGate g) {
  switch (g) {
    case SwitchGate::HalfOnQubit1: return "half_q1";
    case SwitchGate::HalfOnQubit2: return "half_q2";
    case SwitchGate::FullOnQubit1: return "full_q1";
    case SwitchGate::FullOnQubit2: return "full_q2";
  }
  return "?";
}

std::string to_string(CellAction a) {
  switch (a) {
    case CellAction::Hold: return "hold";
    case CellAction::Half: return "half";
    case CellAction::Full: return "full";
  }
  return "?";
}

}  // namespace qbat
