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
#include "superzeno/tomography.hpp"
#include "superzeno/zeno.hpp"

using namespace superzeno;

TEST_CASE("readout of the maximally mixed state is blank") {
  for (auto s : kAllSettings) {
    const auto r = simulate_readout(DensityMatrix(), s);
    CHECK(r.setting == s);
    for (double v : r.values) CHECK(std::abs(v) < 1e-16);
  }
}

TEST_CASE("readout of |00> after an IX rotation") {
  const auto r = simulate_readout(DensityMatrix::pure(basis_ket(0)), TomoSetting::IX);
  double total = 0.0;
  for (double v : r.values) total += std::abs(v);
  CHECK(total > 0.1);
  // rotate by hand and read the same elements
  const Operator u = setting_rotation(TomoSetting::IX);
  const Operator rho = u * Operator::projector(basis_ket(0)) * u.adjoint();
  const int pairs[4][2] = {{0, 1}, {2, 3}, {0, 2}, {1, 3}};
  for (int k = 0; k < 4; ++k) {
    CHECK(r.values[static_cast<std::size_t>(2 * k)] == doctest::Approx(rho(pairs[k][0], pairs[k][1]).real()));
    CHECK(r.values[static_cast<std::size_t>(2 * k + 1)] == doctest::Approx(rho(pairs[k][0], pairs[k][1]).imag()));
  }
  CHECK(setting_rotation(TomoSetting::II).is_unitary());
  CHECK(max_abs_diff(setting_rotation(TomoSetting::II), Operator::identity(4)) == 0.0);
}

TEST_CASE("readout is linear") {
  std::mt19937_64 rng(51);
  const Operator a = oracle::random_state(rng), b = oracle::random_state(rng);
  const double al = 0.3;
  for (auto s : kAllSettings) {
    const auto ra = simulate_readout(a, s), rb = simulate_readout(b, s);
    const auto rm = simulate_readout(a * al + b * (1 - al), s);
    for (std::size_t i = 0; i < 8; ++i)
      CHECK(rm.values[i] == doctest::Approx(al * ra.values[i] + (1 - al) * rb.values[i]).epsilon(1e-12));
  }
}

TEST_CASE("design has full rank") { CHECK(design_rank() == 15); }

TEST_CASE("round trip") {
  std::mt19937_64 rng(52);
  for (int n = 0; n < 100; ++n) {
    const DensityMatrix rho(oracle::random_state(rng));
    CHECK(max_abs_diff(reconstruct(simulate_all(rho)).op(), rho.op()) < 1e-10);
  }
  const auto s = DensityMatrix::pure(singlet_ket());
  const auto back = reconstruct(simulate_all(s));
  CHECK(fidelity(back, s) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(max_abs_diff(reconstruct(simulate_all(DensityMatrix())).op(), DensityMatrix().op()) < 1e-15);
}

TEST_CASE("reconstruction commutes with mixing") {
  std::mt19937_64 rng(53);
  const DensityMatrix a(oracle::random_state(rng)), b(oracle::random_state(rng));
  const DensityMatrix mix(a.op() * 0.25 + b.op() * 0.75);
  const Operator lhs = reconstruct(simulate_all(mix)).op();
  const Operator rhs = reconstruct(simulate_all(a)).op() * 0.25 + reconstruct(simulate_all(b)).op() * 0.75;
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("reconstruction errors") {
  const DensityMatrix rho = DensityMatrix::pure(basis_ket(2));
  auto recs = simulate_all(rho);
  std::vector<ReadoutRecord> three(recs.begin(), recs.begin() + 3);
  CHECK_THROWS_AS(reconstruct(three), UsageError);
  std::vector<ReadoutRecord> dup(recs.begin(), recs.end());
  dup[3] = dup[2];
  CHECK_THROWS_AS(reconstruct(dup), UsageError);

  auto bad = recs;
  bad[1].values[0] += 0.05;  // no state produces this
  CHECK_THROWS_AS(reconstruct(bad), DataError);
  bad = recs;
  bad[0].values[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(reconstruct(bad), DataError);
}

TEST_CASE("renormalize deviation") {
  std::mt19937_64 rng(54);
  const Operator rho = oracle::random_state(rng);
  CHECK(max_abs_diff(renormalize_deviation(rho).op(), rho) < 1e-12);
  CHECK(max_abs_diff(renormalize_deviation(rho * 0.5).op(), rho) < 1e-12);

  const Operator u = expm_i(oracle::random_hermitian(rng), 0.9);
  const Operator m = u * Operator::diagonal({0.6, 0.5, 0.0, -0.1}) * u.adjoint();
  const auto out = renormalize_deviation(m);
  const auto e = eig_hermitian(out.op());
  const double expect[] = {0.0, 0.1 / 1.4, 0.6 / 1.4, 0.7 / 1.4};
  for (std::size_t k = 0; k < 4; ++k) CHECK(e.values[k] == doctest::Approx(expect[k]).epsilon(1e-10));
  CHECK(out.op().trace().real() == doctest::Approx(1.0));

  CHECK_THROWS_AS(renormalize_deviation(Operator::identity(4) * -0.2), DomainError);
  CHECK_THROWS_AS(renormalize_deviation(Operator(4)), DomainError);
}
