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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qbat/errors.hpp"
#include "qbat/protocols.hpp"

using namespace qbat;
using qbat::testing::Rng;

namespace {

const BellLabel kLabels[] = {BellLabel(0, 0), BellLabel(0, 1), BellLabel(1, 0), BellLabel(1, 1)};

// Independent closed form: 2 w g sin^2(2 sqrt2 J t) with g = 1/2, 1/2, 1, 0.
double bell_charge_reference(int label_index, double t, double omega, double j) {
  const double g[] = {0.5, 0.5, 1.0, 0.0};
  const double s = std::sin(2.0 * std::numbers::sqrt2 * j * t);
  return 2.0 * omega * g[label_index] * s * s;
}

DensityMatrix battery_projector(const PureState& psi) { return DensityMatrix::from_pure(psi); }

}  // namespace

TEST(Bell, LabelParsing) {
  EXPECT_EQ(BellLabel::parse("10"), BellLabel(1, 0));
  EXPECT_EQ(BellLabel::parse("01").str(), "01");
  EXPECT_THROW(BellLabel::parse("2"), ValidationError);
  EXPECT_THROW(BellLabel::parse("012"), ValidationError);
  EXPECT_THROW(BellLabel(2, 0), ValidationError);
}

TEST(Bell, StatesAreOrthonormal) {
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double f = fidelity(bell_state(kLabels[a]), bell_state(kLabels[b]));
      EXPECT_NEAR(f, a == b ? 1.0 : 0.0, 1e-15);
    }
  }
  // beta_11 is the singlet
  EXPECT_NEAR(bell_state(BellLabel(1, 1))[1].real(), 1.0 / std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(bell_state(BellLabel(1, 1))[2].real(), -1.0 / std::numbers::sqrt2, 1e-15);
}

TEST(Bell, SimulatedChargeMatchesClosedForm) {
  for (double omega : {1.0, 2.5}) {
    for (double j : {1.0, 0.3}) {
      const SystemSpec spec{.omega = omega, .j_coupling = j};
      const HamiltonianSet hs = hamiltonians(spec);
      const double td = discharge_time(spec);
      for (int i = 0; i < 4; ++i) {
        for (int k = 0; k <= 16; ++k) {
          const double t = 2.0 * td * k / 16.0;
          const double sim = charge(evolve_static(hs.h_charging, bell_cell_state(kLabels[i]), t), hs);
          EXPECT_NEAR(sim, bell_charge_reference(i, t, omega, j), 1e-12 * omega);
          EXPECT_NEAR(bell_charge_closed_form(kLabels[i], t, spec), bell_charge_reference(i, t, omega, j), 1e-14);
        }
      }
    }
  }
}

TEST(Trapping, SingletIsTrapped) {
  const SystemSpec spec;
  const HamiltonianSet hs = hamiltonians(spec);
  const TrapReport r = trapping_check(hs.h_charging, hs, trapped_state(), 1e-10);
  EXPECT_TRUE(r.is_h_eigenstate);
  EXPECT_TRUE(r.trapped);
  EXPECT_NEAR(r.h_eigenvalue, 0.0, 1e-14);
  EXPECT_NEAR(r.ec_value, 0.0, 1e-14);
}

TEST(Trapping, OtherBellStatesAreNotTrapped) {
  const SystemSpec spec;
  const HamiltonianSet hs = hamiltonians(spec);
  for (int i = 0; i < 3; ++i) {
    const TrapReport r = trapping_check(hs.h_charging, hs, bell_cell_state(kLabels[i]), 1e-10);
    EXPECT_FALSE(r.trapped) << kLabels[i].str();
    EXPECT_GT(r.p_residual, 0.1);
  }
  EXPECT_THROW(trapping_check(hs.h_charging, hs, trapped_state(), 0.0), ValidationError);
}

TEST(Trapping, AvailableEnergyFormula) {
  EXPECT_NEAR(available_energy_formula(battery_projector(bell_state(BellLabel(1, 1))), 1.0), 2.0, 1e-15);
  EXPECT_NEAR(available_energy_formula(battery_projector(PureState::basis("00")), 1.0), 3.0, 1e-15);
  EXPECT_NEAR(available_energy_formula(battery_projector(PureState::basis("11")), 2.0), 2.0, 1e-15);
  EXPECT_NEAR(available_energy_formula(DensityMatrix::maximally_mixed(2), 1.0), 2.0, 1e-15);
  EXPECT_THROW(available_energy_formula(DensityMatrix::maximally_mixed(3), 1.0), ValidationError);
}

TEST(Trapping, MaxEnergyCurrentExamples) {
  const SystemSpec spec;
  EXPECT_NEAR(max_ec_over_period(battery_projector(bell_state(BellLabel(1, 1))), spec), 0.0, 1e-13);
  // The mixed state holds a triplet component, so current flows.
  EXPECT_NEAR(max_ec_over_period(DensityMatrix::maximally_mixed(2), spec), 2.0 * std::numbers::sqrt2, 1e-6);
  EXPECT_GT(max_ec_over_period(battery_projector(bell_state(BellLabel(1, 0))), spec), 1.0);
}

TEST(Trapping, ConstraintSolutionIsTheSinglet) {
  const DensityMatrix s = trapping_constraint_solution();
  EXPECT_NEAR(trace_distance(s, battery_projector(bell_state(BellLabel(1, 1)))), 0.0, 1e-15);
}

TEST(Trapping, ScanExamples) {
  // Maximally mixed state meets (Ca) but a beta_10 battery fails (Cb).
  const SystemSpec spec;
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(available_energy_formula(mixed, 1.0), full_charge(spec), 1e-15);
  const DensityMatrix b10 = battery_projector(bell_state(BellLabel(1, 0)));
  EXPECT_NEAR(available_energy_formula(b10, 1.0), full_charge(spec), 1e-15);
  EXPECT_GT(max_ec_over_period(b10, spec), 1e-3);
  const DensityMatrix b00 = battery_projector(bell_state(BellLabel(0, 0)));
  EXPECT_NEAR(available_energy_formula(b00, 1.0), full_charge(spec), 1e-15);
}

TEST(Trapping, SmallScanFindsNoCounterexample) {
  ScanConfig cfg;
  cfg.n_random = 400;
  cfg.seed = 5;
  const UniquenessReport r = trapping_uniqueness_scan(cfg);
  EXPECT_LE(r.solution_distance, 1e-12);
  EXPECT_EQ(r.restricted.samples, 400);
  EXPECT_EQ(r.restricted.counterexamples, 0);
  ASSERT_TRUE(r.unrestricted.has_value());
  EXPECT_EQ(r.unrestricted->counterexamples, 0);
  EXPECT_LE(r.restricted.pass_both, r.restricted.pass_ec);
  EXPECT_LE(r.restricted.pass_both, r.restricted.pass_available);
  EXPECT_GT(r.restricted.pass_both, 0);  // near-singlet stratum reaches the solution
}

TEST(Trapping, RestrictedSamplesAreSeeded) {
  const DensityMatrix a = sample_restricted_battery_state(9, 17);
  const DensityMatrix b = sample_restricted_battery_state(9, 17);
  const DensityMatrix c = sample_restricted_battery_state(10, 17);
  EXPECT_EQ(a.matrix(), b.matrix());
  EXPECT_NE(a.matrix(), c.matrix());
}

TEST(SwitchGates, MapSingletToDischargingBellStates) {
  const PureState s = trapped_state();
  EXPECT_NEAR(fidelity(switch_gate(SwitchGate::HalfOnQubit1, s), bell_cell_state(BellLabel(0, 1))), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(switch_gate(SwitchGate::HalfOnQubit2, s), bell_cell_state(BellLabel(0, 1))), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(switch_gate(SwitchGate::FullOnQubit1, s), bell_cell_state(BellLabel(1, 0))), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(switch_gate(SwitchGate::FullOnQubit2, s), bell_cell_state(BellLabel(1, 0))), 1.0, 1e-15);
  EXPECT_THROW(switch_gate(SwitchGate::FullOnQubit1, PureState::basis("00")), ValidationError);
}

TEST(SwitchGates, ReleaseHalfOrFullCharge) {
  const SystemSpec spec;
  const HamiltonianSet hs = hamiltonians(spec);
  const double td = discharge_time(spec);
  const auto released = [&](SwitchGate g) {
    return charge(evolve_static(hs.h_charging, switch_gate(g, trapped_state()), td), hs);
  };
  EXPECT_NEAR(released(SwitchGate::HalfOnQubit1), 1.0, 1e-12);
  EXPECT_NEAR(released(SwitchGate::FullOnQubit2), 2.0, 1e-12);
}

TEST(Separable, Examples) {
  const double b = 1.0 / std::numbers::sqrt2;
  EXPECT_NEAR(separable_max_charge({b, b}), 1.5, 1e-15);
  EXPECT_NEAR(separable_max_charge({1.0, 1.0}), 2.0, 1e-15);
  EXPECT_NEAR(separable_max_charge({0.0, 0.0}), 0.0, 1e-15);
  EXPECT_NEAR(separable_max_charge({b, b, 0.0, std::numbers::pi}), 0.5, 1e-15);
  EXPECT_THROW(separable_max_charge({1.2, 0.0}), ValidationError);
}

TEST(Separable, SimulationMatchesClosedFormProperty) {
  Rng rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0), ph(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 50; ++trial) {
    const SeparableParams p{u(rng), u(rng), ph(rng), ph(rng)};
    EXPECT_NEAR(separable_charge_simulated(p), separable_max_charge(p), 1e-12);
  }
}

TEST(Separable, BoundedByFullCharge) {
  const SeparableSurface s = separable_sweep(21, SystemSpec{}, 8, 3);
  EXPECT_EQ(s.betas.size(), 21u);
  EXPECT_EQ(s.ratio.size(), 21u * 21u);
  EXPECT_NEAR(s.max_ratio, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(s.argmax_beta1, 1.0);
  EXPECT_DOUBLE_EQ(s.argmax_beta2, 1.0);
  EXPECT_LE(s.max_sim_deviation, 1e-12);
  for (double r : s.ratio) EXPECT_LE(r, 1.0 + 1e-15);
  EXPECT_THROW(separable_sweep(1), ValidationError);
}

TEST(SingleParticle, ClosedFormAndSimulation) {
  const SystemSpec spec{.omega = 1.2, .j_coupling = 0.8};
  const double tt = single_particle_transfer_time(spec);
  EXPECT_NEAR(single_particle_charge(tt, spec), 2.4, 1e-14);
  for (int k = 0; k <= 20; ++k) {
    const double t = 2.0 * tt * k / 20.0;
    EXPECT_NEAR(single_particle_charge_simulated(t, spec), single_particle_charge(t, spec), 1e-12);
  }
}

TEST(NCell, PlanParsing) {
  const NCellPlan p = NCellPlan::parse("h,H,f,F");
  ASSERT_EQ(p.n_cells(), 4);
  EXPECT_EQ(p.actions[0], CellAction::Hold);
  EXPECT_EQ(p.actions[1], CellAction::Half);
  EXPECT_EQ(p.actions[2], CellAction::Full);
  EXPECT_EQ(p.actions[3], CellAction::Full);
  const NCellPlan w = NCellPlan::parse("full,Half,hold");
  EXPECT_EQ(w.actions, (std::vector<CellAction>{CellAction::Full, CellAction::Half, CellAction::Hold}));
  EXPECT_THROW(NCellPlan::parse("h,h,h,h,h"), ValidationError);
  EXPECT_THROW(NCellPlan::parse("h,x"), ValidationError);
  EXPECT_THROW(NCellPlan::parse(""), ValidationError);
}

TEST(NCell, EnergyIsSumOfQuanta) {
  const NCellResult r = ncell_plan_energy(NCellPlan::parse("f,H,h"));
  ASSERT_EQ(r.per_cell.size(), 3u);
  EXPECT_NEAR(r.per_cell[0], 2.0, 1e-12);
  EXPECT_NEAR(r.per_cell[1], 1.0, 1e-12);
  EXPECT_NEAR(r.per_cell[2], 0.0, 1e-12);
  EXPECT_NEAR(r.total_energy, 3.0 * r.quantum, 1e-12);
}

TEST(NCell, ForQuantaReleasesExactlyThatMany) {
  for (int n = 1; n <= 4; ++n) {
    for (int q = 0; q <= 2 * n; ++q) {
      const NCellPlan plan = NCellPlan::for_quanta(n, q);
      EXPECT_EQ(plan.n_cells(), n);
      const NCellResult r = ncell_plan_energy(plan);
      EXPECT_NEAR(r.total_energy / r.quantum, q, 1e-11);
    }
  }
  EXPECT_THROW(NCellPlan::for_quanta(2, 5), ValidationError);
  EXPECT_THROW(NCellPlan::for_quanta(0, 0), ValidationError);
}

TEST(NCell, JointEvolutionFactorizesOverCells) {
  // Two cells evolved together under the joint charging Hamiltonian match
  // the per-cell runs.
  SystemSpec two;
  two.layout = QubitLayout::cells(2);
  const HamiltonianSet hs = hamiltonians(two);
  const NCellPlan plan = NCellPlan::parse("H,f");
  const double td = discharge_time(two);
  const PureState out = evolve_static(hs.h_charging, ncell_initial_state(plan), td);
  const std::vector<double> per = hub_charges(out, two);
  const NCellResult r = ncell_plan_energy(plan);
  EXPECT_NEAR(per[0], r.per_cell[0], 1e-12);
  EXPECT_NEAR(per[1], r.per_cell[1], 1e-12);
}

TEST(Names, ToString) {
  EXPECT_FALSE(to_string(SwitchGate::HalfOnQubit1).empty());
  EXPECT_NE(to_string(CellAction::Hold), to_string(CellAction::Full));
}
