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

#include "superzeno/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "superzeno/errors.hpp"
#include "superzeno/spin_model.hpp"

namespace superzeno {

namespace {

constexpr int kRows = 32;
constexpr int kParams = 15;

// Readout element positions, 0-indexed: rho'_12, rho'_34, rho'_13, rho'_24.
constexpr std::array<std::pair<int, int>, 4> kElements = {{{0, 1}, {2, 3}, {0, 2}, {1, 3}}};

Operator pauli_product(int index) {
  const Operator ps[4] = {pauli::I(), pauli::X(), pauli::Y(), pauli::Z()};
  return kron(ps[index / 4], ps[index % 4]);
}

// Householder QR of the design matrix, computed once.
struct Design {
  std::array<std::array<double, kParams>, kRows> a{};  // R above the diagonal, reflectors below
  std::array<double, kParams> rdiag{};
  int rank = 0;

  Design() {
    for (int k = 0; k < kParams; ++k) {
      const Operator b = pauli_product(k + 1) * 0.25;
      int row = 0;
      for (TomoSetting s : kAllSettings)
        for (double v : simulate_readout(b, s).values) a[static_cast<std::size_t>(row++)][static_cast<std::size_t>(k)] = v;
    }
    for (int j = 0; j < kParams; ++j) {
      double nrm = 0.0;
      for (int i = j; i < kRows; ++i) nrm += at(i, j) * at(i, j);
      nrm = std::sqrt(nrm);
      const double alpha = at(j, j) > 0.0 ? -nrm : nrm;
      rdiag[static_cast<std::size_t>(j)] = alpha;
      at(j, j) -= alpha;  // v = x - alpha e1, stored in place
      double vnorm2 = 0.0;
      for (int i = j; i < kRows; ++i) vnorm2 += at(i, j) * at(i, j);
      if (vnorm2 == 0.0) continue;
      for (int c = j + 1; c < kParams; ++c) {
        double dot = 0.0;
        for (int i = j; i < kRows; ++i) dot += at(i, j) * at(i, c);
        const double f = 2.0 * dot / vnorm2;
        for (int i = j; i < kRows; ++i) at(i, c) -= f * at(i, j);
      }
    }
    double mx = 0.0;
    for (double d : rdiag) mx = std::max(mx, std::abs(d));
    for (double d : rdiag)
      if (std::abs(d) > 1e-10 * mx) ++rank;
  }

  double& at(int i, int j) { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  // Least-squares parameters and residual norm for measurement vector m.
  std::pair<std::array<double, kParams>, double> solve(std::array<double, kRows> m) const {
    for (int j = 0; j < kParams; ++j) {
      double vnorm2 = 0.0, dot = 0.0;
      for (int i = j; i < kRows; ++i) {
        vnorm2 += at(i, j) * at(i, j);
        dot += at(i, j) * m[static_cast<std::size_t>(i)];
      }
      if (vnorm2 == 0.0) continue;
      const double f = 2.0 * dot / vnorm2;
      for (int i = j; i < kRows; ++i) m[static_cast<std::size_t>(i)] -= f * at(i, j);
    }
    std::array<double, kParams> c{};
    for (int j = kParams - 1; j >= 0; --j) {
      double s = m[static_cast<std::size_t>(j)];
      for (int k = j + 1; k < kParams; ++k) s -= at(j, k) * c[static_cast<std::size_t>(k)];
      c[static_cast<std::size_t>(j)] = s / rdiag[static_cast<std::size_t>(j)];
    }
    double res = 0.0;
    for (int i = kParams; i < kRows; ++i) res += m[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(i)];
    return {c, std::sqrt(res)};
  }
};

const Design& design() {
  static const Design d;
  return d;
}

}  // namespace

std::string to_string(TomoSetting s) {
  switch (s) {
    case TomoSetting::II: return "II";
    case TomoSetting::IX: return "IX";
    case TomoSetting::IY: return "IY";
    case TomoSetting::XX: return "XX";
  }
  return "?";
}

Operator setting_rotation(TomoSetting s) {
  using std::numbers::pi;
  switch (s) {
    case TomoSetting::II: return Operator::identity(4);
    case TomoSetting::IX: return expm_i(spin_op('x', 2), pi / 2);
    case TomoSetting::IY: return expm_i(spin_op('y', 2), pi / 2);
    case TomoSetting::XX: return expm_i(spin_op('x', 1), pi / 2) * expm_i(spin_op('x', 2), pi / 2);
  }
  throw UsageError("unknown tomography setting");
}

ReadoutRecord simulate_readout(const Operator& rho, TomoSetting s) {
  const Operator u = setting_rotation(s);
  const Operator rotated = u * rho * u.adjoint();
  ReadoutRecord r{s, {}};
  for (std::size_t k = 0; k < kElements.size(); ++k) {
    const cplx v = rotated(kElements[k].first, kElements[k].second);
    r.values[2 * k] = v.real();
    r.values[2 * k + 1] = v.imag();
  }
  return r;
}

ReadoutRecord simulate_readout(const DensityMatrix& rho, TomoSetting s) { return simulate_readout(rho.op(), s); }

std::array<ReadoutRecord, 4> simulate_all(const DensityMatrix& rho) {
  std::array<ReadoutRecord, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = simulate_readout(rho, kAllSettings[i]);
  return out;
}

int design_rank() { return design().rank; }

DensityMatrix reconstruct(std::span<const ReadoutRecord> records, double residual_tol) {
  const Design& d = design();
  if (d.rank < kParams) throw ConfigurationError("tomography design matrix is rank deficient");

  std::array<double, kRows> m{};
  std::array<bool, 4> seen{};
  for (const auto& rec : records) {
    const auto idx = static_cast<std::size_t>(std::find(kAllSettings.begin(), kAllSettings.end(), rec.setting) -
                                              kAllSettings.begin());
    if (seen[idx]) throw UsageError("duplicate readout record for setting " + to_string(rec.setting));
    seen[idx] = true;
    for (std::size_t k = 0; k < 8; ++k) {
      if (!std::isfinite(rec.values[k])) throw DataError("readout record contains non-finite values");
      m[idx * 8 + k] = rec.values[k];
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw UsageError("reconstruct needs one record per setting (II, IX, IY, XX)");

  const auto [c, residual] = d.solve(m);
  if (residual > residual_tol)
    throw DataError("readout records are inconsistent (residual " + std::to_string(residual) + ")");

  Operator rho = Operator::identity(4) * 0.25;
  for (int k = 0; k < kParams; ++k) rho += pauli_product(k + 1) * (0.25 * c[static_cast<std::size_t>(k)]);
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

DensityMatrix renormalize_deviation(const Operator& rho_like) {
  if (rho_like.dim() != 4) throw UsageError("renormalize_deviation needs a 4x4 operator");
  if (!rho_like.is_hermitian(1e-10 * std::max(1.0, rho_like.frobenius_norm())))
    throw UsageError("renormalize_deviation: input is not Hermitian");
  const Operator h = 0.5 * (rho_like + rho_like.adjoint());
  const double lambda_min = std::min(0.0, eig_hermitian(h).values.front());
  const Operator shifted = h - Operator::identity(4) * lambda_min;
  const double tr = shifted.trace().real();
  if (!(tr > 1e-14 * std::max(1.0, h.frobenius_norm())))
    throw DomainError("renormalize_deviation: degenerate input (zero trace after shift)");
  return DensityMatrix::unchecked(shifted * (1.0 / tr));
}

}  // namespace superzeno
