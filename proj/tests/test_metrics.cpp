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

#include <random>

#include "oracles.hpp"
#include "superzeno/errors.hpp"
#include "superzeno/metrics.hpp"
#include "superzeno/zeno.hpp"

using namespace superzeno;

namespace {
Operator local_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto su2 = [&] {
    Operator h(2);
    const double a = g(rng), b = g(rng), c = g(rng);
    h = pauli::X() * a + pauli::Y() * b + pauli::Z() * c;
    return expm_i(h, 0.7);
  };
  return kron(su2(), su2());
}
}  // namespace

TEST_CASE("fidelity examples") {
  std::mt19937_64 rng(61);
  const DensityMatrix r(oracle::random_state(rng));
  CHECK(fidelity(r, r) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fidelity(DensityMatrix::pure(basis_ket(0)), DensityMatrix::pure(basis_ket(3))) == doctest::Approx(0.0));
  for (int n = 0; n < 10; ++n) {
    const auto psi = DensityMatrix::pure(oracle::random_ket(rng));
    CHECK(fidelity(DensityMatrix(), psi) == doctest::Approx(0.25).epsilon(1e-10));
  }
}

TEST_CASE("fidelity properties") {
  std::mt19937_64 rng(62);
  for (int n = 0; n < 100; ++n) {
    const DensityMatrix a(oracle::random_state(rng)), b(oracle::random_state(rng));
    const double f = fidelity(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(std::abs(f - fidelity(b, a)) < 1e-9);
    const Operator u = expm_i(oracle::random_hermitian(rng), 1.3);
    CHECK(std::abs(f - fidelity(DensityMatrix(u * a.op() * u.adjoint()), DensityMatrix(u * b.op() * u.adjoint()))) <
          1e-9);

    const Ket p = oracle::random_ket(rng), q = oracle::random_ket(rng);
    CHECK(std::abs(fidelity(DensityMatrix::pure(p), DensityMatrix::pure(q)) - std::norm(inner(p, q))) < 1e-10);
  }
}

TEST_CASE("leakage") {
  CHECK(leakage(DensityMatrix::pure(basis_ket(0))) == doctest::Approx(1.0));
  CHECK(leakage(DensityMatrix::pure(singlet_ket())) == doctest::Approx(0.0));
  CHECK(leakage(DensityMatrix()) == doctest::Approx(0.5));
  std::mt19937_64 rng(63);
  for (int n = 0; n < 50; ++n) {
    const DensityMatrix r(oracle::random_state(rng));
    CHECK(std::abs(leakage(r) + r(1, 1).real() + r(2, 2).real() - 1.0) < 1e-14);
  }
}

TEST_CASE("entanglement") {
  CHECK(entanglement_eta(DensityMatrix::pure(singlet_ket())) == doctest::Approx(0.5));
  std::mt19937_64 rng(64);
  for (int n = 0; n < 20; ++n) {
    Operator a(2), b(2);
    std::normal_distribution<double> g;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        a(r, c) = cplx(g(rng), g(rng));
        b(r, c) = cplx(g(rng), g(rng));
      }
    a = a * a.adjoint();
    b = b * b.adjoint();
    Operator prod = kron(a, b);
    prod = prod * (1.0 / prod.trace().real());
    CHECK(entanglement_eta(DensityMatrix(prod)) < 1e-12);
  }
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const Operator w = Operator::projector(singlet_ket()) * p + Operator::identity(4) * ((1 - p) / 4);
    CHECK(entanglement_eta(DensityMatrix(w)) == doctest::Approx(oracle::werner_eta(p)).epsilon(1e-12));
  }
  for (int n = 0; n < 50; ++n) {
    const DensityMatrix r(oracle::random_state(rng));
    const Operator u = local_unitary(rng);
    const DensityMatrix ru(u * r.op() * u.adjoint());
    CHECK(std::abs(entanglement_eta(r) - entanglement_eta(ru)) < 1e-9);
    // same value with the transpose on the other qubit
    const double eta1 = std::max(0.0, -eig_hermitian(partial_transpose(r, 1)).values[0]);
    CHECK(std::abs(entanglement_eta(r) - eta1) < 1e-9);
  }
}

TEST_CASE("pseudopure states") {
  const Ket s = singlet_ket();
  CHECK(max_abs_diff(pseudopure(s, 1.0).op(), Operator::projector(s)) < 1e-15);
  CHECK(max_abs_diff(pseudopure(s, 0.0).op(), DensityMatrix().op()) < 1e-15);
  const auto weak = pseudopure(s, 1e-5);
  CHECK(weak.op().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eig_hermitian(weak.op()).values[0] == doctest::Approx((1 - 1e-5) / 4).epsilon(1e-12));
  const Ket unnormalized{1.0, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS(pseudopure(unnormalized, 0.5), UsageError);
  CHECK_THROWS_AS(pseudopure(s, 1.5), UsageError);
  CHECK_THROWS_AS(pseudopure(s, -0.1), UsageError);
}
