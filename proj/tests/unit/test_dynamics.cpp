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
#include "qbat/dynamics.hpp"
#include "qbat/errors.hpp"
#include "qbat/model.hpp"

using namespace qbat;
using qbat::testing::Rng;

namespace {

PureState singlet_cell() {
  Vector v = Vector::Zero(8);
  v(0b010) = 1.0 / std::numbers::sqrt2;
  v(0b100) = -1.0 / std::numbers::sqrt2;
  return PureState::from_amplitudes(3, v);
}

PureState triplet_cell() {
  Vector v = Vector::Zero(8);
  v(0b010) = 1.0 / std::numbers::sqrt2;
  v(0b100) = 1.0 / std::numbers::sqrt2;
  return PureState::from_amplitudes(3, v);
}

}  // namespace

TEST(EvolveStatic, MatchesMatrixExponential) {
  Rng rng(31);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const Operator h = qbat::testing::random_hermitian(rng, n);
      const PureState psi = qbat::testing::random_state(rng, n);
      const double t = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
      const Vector expect = qbat::testing::expm_oracle(h.matrix(), t) * psi.amplitudes();
      EXPECT_LE((evolve_static(h, psi, t).amplitudes() - expect).norm(), 1e-10);
    }
  }
}

TEST(EvolveStatic, ZeroTimeIsExact) {
  Rng rng(37);
  const PureState psi = qbat::testing::random_state(rng, 3);
  const Operator h = qbat::testing::random_hermitian(rng, 3);
  EXPECT_EQ(evolve_static(h, psi, 0.0).amplitudes(), psi.amplitudes());
}

TEST(EvolveStatic, EigenstateOnlyPicksUpPhase) {
  const Operator h = charging_hamiltonian(SystemSpec{});
  // The singlet is a zero-energy eigenstate of the charging Hamiltonian.
  const PureState psi = singlet_cell();
  EXPECT_NEAR(fidelity(evolve_static(h, psi, 3.7), psi), 1.0, 1e-13);
}

TEST(EvolveStatic, TripletFullyTransfersAtDischargeTime) {
  const SystemSpec spec;
  const HamiltonianSet hs = hamiltonians(spec);
  const PureState out = evolve_static(hs.h_charging, triplet_cell(), discharge_time(spec));
  EXPECT_NEAR(std::norm(out[0b001]), 1.0, 1e-12);
  EXPECT_NEAR(charge(out, hs), full_charge(spec), 1e-12);
}

TEST(Propagator, MatrixIsUnitaryAndComposes) {
  Rng rng(41);
  const Operator h = qbat::testing::random_hermitian(rng, 3);
  const Propagator p(h);
  const Matrix a = p.matrix(0.4).matrix(), b = p.matrix(0.9).matrix();
  EXPECT_LE(max_abs(a * b - p.matrix(1.3).matrix()), 1e-12);
  EXPECT_LE(max_abs(a.adjoint() * a - Matrix::Identity(8, 8)), 1e-12);
}

TEST(EvolveTimedep, ConstantPathMatchesStatic) {
  Rng rng(43);
  const Operator h = qbat::testing::random_hermitian(rng, 3);
  const PureState psi = qbat::testing::random_state(rng, 3);
  const PureState a = evolve_timedep([&](double) { return h; }, psi, 2.0, 37);
  EXPECT_LE((a.amplitudes() - evolve_static(h, psi, 2.0).amplitudes()).norm(), 1e-11);
}

TEST(EvolveTimedep, SecondOrderConvergence) {
  // Two-level path H(s) = X + s Z against a fine reference.
  const Operator x = pauli(PauliAxis::X), z = pauli(PauliAxis::Z);
  const HamiltonianPath path = [&](double s) { return x + (3.0 * s) * z; };
  const PureState psi = PureState::basis("0");
  const PureState ref = evolve_timedep(path, psi, 4.0, 20000);
  const double e1 = (evolve_timedep(path, psi, 4.0, 100).amplitudes() - ref.amplitudes()).norm();
  const double e2 = (evolve_timedep(path, psi, 4.0, 200).amplitudes() - ref.amplitudes()).norm();
  EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.1);
}

TEST(EvolveTimedep, ObserverSeesEveryStep) {
  int calls = 0;
  double last_s = -1.0;
  evolve_timedep([](double) { return pauli(PauliAxis::X); }, PureState::basis("0"), 1.0, 8,
                 [&](int step, double s, const PureState&) {
                   EXPECT_EQ(step, calls);
                   last_s = s;
                   ++calls;
                 });
  EXPECT_EQ(calls, 9);
  EXPECT_DOUBLE_EQ(last_s, 1.0);
}

TEST(EvolveTimedep, Validation) {
  const HamiltonianPath path = [](double) { return pauli(PauliAxis::X); };
  EXPECT_THROW(evolve_timedep(path, PureState::basis("0"), -1.0, 4), ValidationError);
  EXPECT_THROW(evolve_timedep(path, PureState::basis("0"), 1.0, 0), ValidationError);
  EXPECT_THROW(evolve_timedep(path, PureState::basis("00"), 1.0, 4), ValidationError);
  EXPECT_THROW(SteppingConfig{.steps_per_unit_jt = 4}.validate(), ValidationError);
  EXPECT_EQ(SteppingConfig{}.steps_for(0.0), 1);
  EXPECT_EQ(SteppingConfig{.steps_per_unit_jt = 100}.steps_for(2.5), 250);
}

TEST(InteractionPicture, RoundTrip) {
  Rng rng(47);
  const Operator h0 = qbat::testing::random_hermitian(rng, 2);
  const Operator op = qbat::testing::random_hermitian(rng, 2);
  const PureState psi = qbat::testing::random_state(rng, 2);
  const Operator back = from_interaction_picture(h0, to_interaction_picture(h0, op, 1.1), 1.1);
  EXPECT_LE(max_abs(back.matrix() - op.matrix()), 1e-12);
  const PureState b = from_interaction_picture(h0, to_interaction_picture(h0, psi, 0.8), 0.8);
  EXPECT_LE((b.amplitudes() - psi.amplitudes()).norm(), 1e-12);
}

TEST(InteractionPicture, ExpectationIsFrameInvariant) {
  Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator h0 = qbat::testing::random_hermitian(rng, 2);
    const Operator op = qbat::testing::random_hermitian(rng, 2);
    const PureState psi = qbat::testing::random_state(rng, 2);
    const double t = 0.3 * trial;
    // <psi_I| O_I |psi_I> with both taken to the same frame
    const double a = expectation(op, psi).real();
    const double b = expectation(to_interaction_picture(h0, op, t), to_interaction_picture(h0, psi, t)).real();
    EXPECT_NEAR(a, b, 1e-12);
  }
}

TEST(Trajectory, ChargeDerivativeIsEnergyCurrent) {
  const SystemSpec spec;
  const HamiltonianSet hs = hamiltonians(spec);
  const Operator p = ec_operator(hs.h0_hub, hs.h_charging);
  Rng rng(59);
  for (int trial = 0; trial < 5; ++trial) {
    const PureState psi0 = qbat::testing::random_state(rng, 3);
    const TimeSeries ts = sample_trajectory(hs.h_charging, psi0, 1.0, 2001, hs, p);
    ts.validate();
    const double dt = ts.times[1] - ts.times[0];
    for (std::size_t k = 1; k + 1 < ts.size(); k += 97) {
      const double fd = (ts.charge[k + 1] - ts.charge[k - 1]) / (2.0 * dt);
      EXPECT_NEAR(fd, ts.ec[k], 1e-4);
    }
  }
}

TEST(Trajectory, ConservesEnergyAndExcitations) {
  const SystemSpec spec;
  const HamiltonianSet hs = hamiltonians(spec);
  const Operator h = hs.h0_total + hs.h_charging;
  Rng rng(61);
  const PureState psi0 = qbat::testing::random_state(rng, 3);
  const double e0 = expectation(h, psi0).real(), n0 = expectation(hs.h0_total, psi0).real();
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    const PureState psi = evolve_static(h, psi0, t);
    EXPECT_NEAR(expectation(h, psi).real(), e0, 1e-11);
    EXPECT_NEAR(expectation(hs.h0_total, psi).real(), n0, 1e-11);
  }
}

TEST(Trajectory, TimedepSamplingMatchesStatic) {
  const SystemSpec spec;
  const HamiltonianSet hs = hamiltonians(spec);
  const Operator p = ec_operator(hs.h0_hub, hs.h_charging);
  const double td = discharge_time(spec);
  const TimeSeries a = sample_trajectory(hs.h_charging, triplet_cell(), td, 9, hs, p);
  const TimeSeries b = sample_trajectory([&](double) { return hs.h_charging; }, triplet_cell(), td, 9, hs,
                                         SteppingConfig{}, spec.j_coupling);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_NEAR(a.times[k], b.times[k], 1e-14);
    EXPECT_NEAR(a.charge[k], b.charge[k], 1e-11);
    EXPECT_NEAR(a.ec[k], b.ec[k], 1e-11);
  }
}

TEST(TimeSeries, ValidateCatchesRaggedChannels) {
  TimeSeries ts;
  ts.times = {0.0, 1.0};
  ts.charge = {0.0, 0.0};
  ts.ec = {0.0, 0.0};
  EXPECT_NO_THROW(ts.validate());
  ts.channels["x"] = {1.0};
  EXPECT_THROW(ts.validate(), ValidationError);
  ts.channels["x"] = {1.0, 2.0};
  ts.times = {1.0, 1.0};
  EXPECT_THROW(ts.validate(), ValidationError);
}

TEST(Dephasing, CoherenceDecay) {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  const DensityMatrix rho = DensityMatrix::from_pure(PureState::from_amplitudes(2, v));
  for (double gt : {0.1, 1.0, 10.0}) {
    const DensityMatrix out = collective_dephasing(rho, 1.0, gt);
    EXPECT_NEAR(std::abs(out(0, 3)), 0.5 * std::exp(-8.0 * gt), 1e-15);
    EXPECT_DOUBLE_EQ(out(0, 0).real(), 0.5);
  }
}

TEST(Dephasing, LeavesZeroMagnetizationSubspaceAlone) {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::numbers::sqrt2;
  v(2) = -1.0 / std::numbers::sqrt2;
  const DensityMatrix rho = DensityMatrix::from_pure(PureState::from_amplitudes(2, v));
  EXPECT_LE(max_abs(collective_dephasing(rho, 3.0, 5.0).matrix() - rho.matrix()), 0.0);
}

TEST(Dephasing, ZeroRateIsIdentityAndNegativeThrows) {
  Rng rng(67);
  const DensityMatrix rho = qbat::testing::random_density(rng, 2);
  EXPECT_LE(max_abs(collective_dephasing(rho, 0.0, 4.0).matrix() - rho.matrix()), 0.0);
  EXPECT_THROW(collective_dephasing(rho, -1.0, 1.0), ValidationError);
  EXPECT_THROW(collective_dephasing(rho, 1.0, -1.0), ValidationError);
  EXPECT_THROW(collective_dephasing(DensityMatrix::maximally_mixed(3), 1.0, 1.0), ValidationError);
}
