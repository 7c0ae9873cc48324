// Copyright 2026 The superzeno Authors
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

#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "superzeno/errors.hpp"
#include "superzeno/metrics.hpp"
#include "superzeno/spin_model.hpp"

using namespace superzeno;
using std::numbers::pi;

namespace {

Ket singlet() { return Ket{0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0}; }
Ket triplet0() { return Ket{0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0}; }

double min_eig(const Operator& m) { return eig_hermitian((m + m.adjoint()) * 0.5).values[0]; }

}  // namespace

TEST_CASE("hamiltonian examples") {
  SpinSystem s;
  s.nu1 = 0.0;
  s.nu2 = 0.0;
  s.j12 = 4.0;
  CHECK(max_abs_diff(hamiltonian(s), Operator::diagonal({1.0, -1.0, -1.0, 1.0})) < 1e-15);
  s.nu1 = 100.0;
  s.j12 = 0.0;
  CHECK(max_abs_diff(hamiltonian(s), Operator::diagonal({50.0, 50.0, -50.0, -50.0})) < 1e-15);
}

TEST_CASE("zero-quantum phase accumulates at the shift difference") {
  const SpinSystem s;
  const double tau = 0.37e-3;
  const auto u = oracle::propagator(oracle::from(hamiltonian(s)), tau);
  const double phase = std::arg(u[2][2] / u[1][1]);
  double expected = std::remainder(2.0 * pi * (s.nu1 - s.nu2) * tau, 2.0 * pi);
  CHECK(phase == doctest::Approx(expected).epsilon(1e-12));

  // disorder offset d widens the difference by d
  const auto ud = oracle::propagator(oracle::from(hamiltonian(s, 3.0)), tau);
  expected = std::remainder(2.0 * pi * (s.nu1 - s.nu2 + 3.0) * tau, 2.0 * pi);
  CHECK(std::arg(ud[2][2] / ud[1][1]) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("spin system validation") {
  SpinSystem s;
  CHECK_NOTHROW(s.validate());
  s.t2 = {20.0, 3.0};
  CHECK_THROWS_AS(s.validate(), UsageError);
  s = SpinSystem{};
  s.dephasing_correlation = 1.5;
  CHECK_THROWS_AS(s.validate(), UsageError);
  s = SpinSystem{};
  s.ensemble_samples = 0;
  CHECK_THROWS_AS(s.validate(), UsageError);
  s = SpinSystem{};
  s.t1 = {0.0, 1.0};
  CHECK_THROWS_AS(s.validate(), UsageError);
}

TEST_CASE("ideal gates and circuit identities") {
  const GateSet g{SpinSystem{}};
  CHECK(max_abs_diff(g.gate(GateName::CPHASE).ideal, Operator::diagonal({1.0, 1.0, 1.0, -1.0})) == 0.0);
  const Operator& h2 = g.gate(GateName::H2).ideal;
  CHECK(max_abs_diff(h2 * g.gate(GateName::CNOT12).ideal * h2, g.gate(GateName::CPHASE).ideal) < 1e-14);

  Operator swap(4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  const Operator& c12 = g.gate(GateName::CNOT12).ideal;
  const Operator& c21 = g.gate(GateName::CNOT21).ideal;
  CHECK(max_abs_diff(c12 * c21 * c12, swap) < 1e-14);
}

TEST_CASE("realized gates match ideal gates up to phase and step products") {
  const GateSet g{SpinSystem{}};
  for (GateName n : {GateName::X90, GateName::Y90, GateName::X180, GateName::H1, GateName::H2, GateName::CNOT12,
                     GateName::CNOT21, GateName::CPHASE, GateName::Uzz}) {
    CAPTURE(to_string(n));
    const Gate& gate = g.gate(n);
    CHECK(gate.realized.is_unitary(1e-12));
    CHECK(max_abs_diff_up_to_phase(gate.realized, gate.ideal) < 1e-12);
    Operator prod = Operator::identity(4);
    double dur = 0.0;
    for (const auto& st : gate.steps) {
      prod = st.unitary * prod;
      dur += st.duration;
    }
    CHECK(max_abs_diff(prod, gate.realized) < 1e-14);
    CHECK(dur == doctest::Approx(gate.duration).epsilon(1e-12));
  }
}

TEST_CASE("coupling gates are booked at 1/(2J) plus two pulses") {
  SpinSystem s;
  const GateSet g(s);
  for (GateName n : {GateName::CNOT12, GateName::CNOT21, GateName::CPHASE, GateName::Uzz})
    CHECK(g.gate(n).duration == doctest::Approx(1.0 / (2.0 * s.j12) + 2.0 * s.pulse_duration));
  CHECK(g.gate(GateName::H2).duration == doctest::Approx(s.pulse_duration));
}

TEST_CASE("pulse angle errors spoil the realized gates") {
  SpinSystem s;
  s.pulse_angle_error = 0.02;
  const GateSet g(s);
  CHECK(max_abs_diff_up_to_phase(g.gate(GateName::X180).realized, g.gate(GateName::X180).ideal) > 1e-3);
  CHECK(g.gate(GateName::CNOT12).realized.is_unitary(1e-12));
}

TEST_CASE("coupling gates need a scalar coupling") {
  SpinSystem s;
  s.j12 = 0.0;
  const GateSet g(s);
  CHECK_NOTHROW(g.gate(GateName::H1));
  CHECK_THROWS_AS(g.gate(GateName::CNOT12), ConfigurationError);
  CHECK_THROWS_AS(g.gate(GateName::Uzz), ConfigurationError);
}

TEST_CASE("relaxation examples") {
  const SpinSystem s;
  const DensityMatrix mixed;
  for (double tau : {0.0, 0.1, 3.0, 50.0})
    CHECK(max_abs_diff(relax_step(mixed, s, tau).op(), mixed.op()) < 1e-15);

  SpinSystem no_dephasing = s;
  no_dephasing.t2 = {2.0 * s.t1[0], 2.0 * s.t1[1]};
  const auto rho11 = DensityMatrix::pure(basis_ket(3));
  for (double tau : {0.01, 1.0, 7.4, 20.0}) {
    CHECK(relax_step(rho11, no_dephasing, tau)(3, 3).real() ==
          doctest::Approx(oracle::gad_excited_population(tau, s.t1[0])).epsilon(1e-12));
    CHECK(relax_step(rho11, s, tau)(3, 3).real() ==
          doctest::Approx(oracle::gad_excited_population(tau, s.t1[0])).epsilon(1e-12));
  }
  CHECK_THROWS_AS(relax_step(rho11, s, -1.0), UsageError);
}

TEST_CASE("zero-quantum coherence decay") {
  SpinSystem s;
  const auto rho = DensityMatrix::pure(singlet());
  for (double c : {0.0, 0.5, 0.9, 1.0}) {
    s.dephasing_correlation = c;
    for (double tau : {0.2, 1.0, 4.0}) {
      const double got = std::abs(relax_step(rho, s, tau)(1, 2)) / std::abs(rho(1, 2));
      CHECK(got == doctest::Approx(oracle::zero_quantum_decay(tau, s.t1[0], s.t2[0], c)).epsilon(1e-10));
    }
  }
  // single-quantum coherences decay at 1/T2 regardless of correlation; the
  // spectator spin also drifts out of |0>, taking part of the element with it
  const Ket plus{std::sqrt(0.5), 0.0, std::sqrt(0.5), 0.0};
  const double tau = 1.3;
  const auto rsq = relax_step(DensityMatrix::pure(plus), s, tau);
  const double spectator = 0.5 + 0.5 * std::exp(-tau / s.t1[1]);
  CHECK(std::abs(rsq(0, 2)) / 0.5 == doctest::Approx(std::exp(-tau / s.t2[0]) * spectator).epsilon(1e-10));
}

TEST_CASE("channels are physical on random states") {
  std::mt19937_64 rng(21);
  SpinSystem s;
  NoiseFlags all{true, true, true, false};
  for (int n = 0; n < 1000; ++n) {
    const DensityMatrix rho(oracle::random_state(rng));
    const double tau = std::uniform_real_distribution<double>(0.0, 10.0)(rng);
    const auto r = relax_step(rho, s, tau);
    CHECK(std::abs(r.op().trace() - 1.0) < 1e-10);
    CHECK(r.op().is_hermitian(1e-12));
    CHECK(min_eig(r.op()) >= -1e-8);
    if (n % 10 == 0) {
      const auto f = free_evolve_member(rho, s, tau, all, 0.3);
      CHECK(std::abs(f.op().trace() - 1.0) < 1e-10);
      CHECK(min_eig(f.op()) >= -1e-8);
      const auto cr = crusher(rho);
      CHECK(std::abs(cr.op().trace() - 1.0) < 1e-12);
      CHECK(min_eig(cr.op()) >= -1e-12);
    }
  }
}

TEST_CASE("kraus sets are complete") {
  const SpinSystem s;
  for (double tau : {0.0, 0.5, 9.0}) {
    for (int spin : {1, 2}) {
      Operator sum(4);
      for (const auto& k : amplitude_damping_kraus(s, spin, tau)) sum += k.adjoint() * k;
      CHECK(max_abs_diff(sum, Operator::identity(4)) < 1e-13);
    }
    Operator sum(4);
    for (const auto& k : dephasing_kraus(s, tau)) sum += k.adjoint() * k;
    CHECK(max_abs_diff(sum, Operator::identity(4)) < 1e-13);
  }
  Operator sum(4);
  for (const auto& k : crusher_kraus()) sum += k.adjoint() * k;
  CHECK(max_abs_diff(sum, Operator::identity(4)) == 0.0);
}

TEST_CASE("noise-free evolution") {
  const SpinSystem s;
  const auto rho11 = DensityMatrix::pure(basis_ket(3));
  CHECK(max_abs_diff(free_evolve(rho11, s, 2.7, NoiseFlags::none()).op(), rho11.op()) < 1e-13);

  // the singlet rotates into the triplet at half a period of the shift difference
  const double tau = 1.0 / (2.0 * (s.nu1 - s.nu2));
  const auto out = free_evolve(DensityMatrix::pure(singlet()), s, tau, NoiseFlags::none());
  CHECK(max_abs_diff(out.op(), Operator::projector(triplet0())) < 1e-9);
  CHECK(fidelity(out, DensityMatrix::pure(singlet())) < 1e-9);
  for (double t : {0.1e-3, 0.21e-3, 0.3e-3}) {
    const auto o = free_evolve(DensityMatrix::pure(singlet()), s, t, NoiseFlags::none());
    CHECK(fidelity(o, DensityMatrix::pure(singlet())) ==
          doctest::Approx(oracle::singlet_fidelity_two_level(s.nu1 - s.nu2, t)).epsilon(1e-9));
  }

  std::mt19937_64 rng(22);
  NoiseFlags pert;
  pert.perturbation_on = true;
  for (int n = 0; n < 20; ++n) {
    const DensityMatrix rho(oracle::random_state(rng));
    const auto o = free_evolve(rho, s, 0.8, pert);
    CHECK(o.purity() == doctest::Approx(rho.purity()).epsilon(1e-10));
  }
}

TEST_CASE("disorder dephases the singlet without leakage") {
  SpinSystem s;
  NoiseFlags f;
  f.disorder_on = true;
  const auto rho = DensityMatrix::pure(singlet());
  // inside the range where 64 nodes resolve the Gaussian average
  for (double tau : {0.2, 0.5, 1.0, 2.5}) {
    const auto out = free_evolve(rho, s, tau, f);
    const double expect = 0.5 * oracle::gaussian_phase_average(s.inhomogeneity_sigma, tau);
    CHECK(std::abs(std::abs(out(1, 2)) - expect) < 1e-8);
    CHECK(leakage(out) < 1e-14);
  }
  CHECK(std::abs(free_evolve(rho, s, 2.5, f)(1, 2)) < 1e-6);
}

TEST_CASE("disorder nodes") {
  SpinSystem s;
  const auto nodes = disorder_nodes(s, true);
  REQUIRE(nodes.offsets.size() == 64);
  double wsum = 0.0, var = 0.0, mean = 0.0;
  for (std::size_t k = 0; k < 64; ++k) {
    wsum += nodes.weights[k];
    mean += nodes.weights[k] * nodes.offsets[k];
    var += nodes.weights[k] * nodes.offsets[k] * nodes.offsets[k];
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(mean) < 1e-12);
  CHECK(var == doctest::Approx(s.inhomogeneity_sigma * s.inhomogeneity_sigma).epsilon(1e-10));
  const auto off = disorder_nodes(s, false);
  CHECK(off.offsets.size() == 1);
}

TEST_CASE("disorder average is bit-reproducible") {
  const SpinSystem s;
  const auto rho = DensityMatrix::pure(singlet());
  const auto a = free_evolve(rho, s, 1.7, NoiseFlags::experiment());
  const auto b = free_evolve(rho, s, 1.7, NoiseFlags::experiment());
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(a(r, c) == b(r, c));
}

TEST_CASE("splitting converges") {
  std::mt19937_64 rng(23);
  SpinSystem coarse;
  coarse.perturbation_eps = 2.0;
  SpinSystem fine = coarse;
  fine.max_step = coarse.max_step / 2;
  NoiseFlags f{true, false, true, false};
  for (int n = 0; n < 3; ++n) {
    const DensityMatrix rho(oracle::random_state(rng));
    for (double tau : {0.05, 1.0, 10.0}) {
      const auto a = free_evolve(rho, coarse, tau, f);
      const auto b = free_evolve(rho, fine, tau, f);
      CHECK(max_abs_diff(a.op(), b.op()) < 1e-6);
    }
  }
}

TEST_CASE("crusher examples") {
  const auto diag = DensityMatrix(Operator::diagonal({0.1, 0.2, 0.3, 0.4}));
  CHECK(max_abs_diff(crusher(diag).op(), diag.op()) == 0.0);
  const auto s = DensityMatrix::pure(singlet());
  CHECK(max_abs_diff(crusher(s).op(), s.op()) < 1e-16);
  const Ket ghz{std::sqrt(0.5), 0.0, 0.0, std::sqrt(0.5)};
  const auto g = crusher(DensityMatrix::pure(ghz));
  CHECK(std::abs(g(0, 3)) == 0.0);
  CHECK(g(0, 0).real() == doctest::Approx(0.5));
  // single-quantum coherences go too
  const Ket plus{std::sqrt(0.5), std::sqrt(0.5), 0.0, 0.0};
  CHECK(std::abs(crusher(DensityMatrix::pure(plus))(0, 1)) == 0.0);
}

TEST_CASE("superoperator composition") {
  std::mt19937_64 rng(24);
  const SpinSystem s;
  const Superop r = relaxation_superop(s, 0.3);
  const Operator u = expm_i(oracle::random_hermitian(rng), 0.7);
  const Superop both = Superop::conjugation(u).after(r);
  const Operator rho = oracle::random_state(rng);
  CHECK(max_abs_diff(both.apply(rho), u * r.apply(rho) * u.adjoint()) < 1e-14);
  const Superop r5 = r.power(5);
  CHECK(max_abs_diff(r5.apply(rho), relaxation_superop(s, 1.5).apply(rho)) < 1e-12);
  CHECK(max_abs_diff(r.power(0).apply(rho), rho) == 0.0);
}
