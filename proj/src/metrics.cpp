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

#include "superzeno/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "superzeno/errors.hpp"

namespace superzeno {

namespace {

// Eigenvalues below this are numerically indistinguishable from zero for
// trace-one matrices; their square roots would otherwise inject ~1e-8 noise.
constexpr double kRankCutoff = 1e-14;

Operator truncated_sqrt(const Operator& m) {
  const auto es = eig_hermitian(m);
  if (es.values.front() < -DensityMatrix::kNegativityTol)
    throw DomainError("fidelity: input has eigenvalue " + std::to_string(es.values.front()));
  Operator out(4);
  for (int k = 0; k < 4; ++k) {
    const double lam = es.values[static_cast<std::size_t>(k)];
    if (lam <= kRankCutoff) continue;
    const double r = std::sqrt(lam);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out(i, j) += r * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  return out;
}

}  // namespace

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  const Operator sa = truncated_sqrt(a.op());
  Operator m = sa * b.op() * sa;
  m = 0.5 * (m + m.adjoint());
  const auto es = eig_hermitian(m);
  if (es.values.front() < -DensityMatrix::kNegativityTol) throw DomainError("fidelity: non-PSD input");
  double s = 0.0;
  for (double lam : es.values)
    if (lam > kRankCutoff) s += std::sqrt(lam);
  return std::clamp(s * s, 0.0, 1.0);
}

double leakage(const DensityMatrix& rho) { return std::clamp(rho(0, 0).real() + rho(3, 3).real(), 0.0, 1.0); }

double entanglement_eta(const DensityMatrix& rho) {
  const auto es = eig_hermitian(partial_transpose(rho, 2));
  return std::max(0.0, -es.values.front());
}

DensityMatrix pseudopure(const Ket& psi, double eps) {
  if (std::abs(norm(psi) - 1.0) > 1e-10) throw UsageError("pseudopure: state vector is not normalized");
  if (eps < 0.0 || eps > 1.0) throw UsageError("pseudopure: polarization must lie in [0, 1]");
  return DensityMatrix(Operator::identity(4) * ((1.0 - eps) / 4.0) + eps * Operator::projector(psi));
}

}  // namespace superzeno
