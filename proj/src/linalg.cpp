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

#include "superzeno/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "superzeno/errors.hpp"

namespace superzeno {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 4) throw UsageError("operator dimension must be 2 or 4, got " + std::to_string(dim));
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) throw UsageError(std::string(what) + ": dimension mismatch");
}

}  // namespace

Operator::Operator(int dim) : dim_(dim) { check_dim(dim); }

Operator::Operator(int dim, std::initializer_list<cplx> row_major) : Operator(dim) {
  if (row_major.size() != static_cast<std::size_t>(dim * dim))
    throw UsageError("operator initializer needs dim*dim entries");
  std::copy(row_major.begin(), row_major.end(), a_.begin());
}

Operator Operator::identity(int dim) {
  Operator m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Operator Operator::diagonal(std::span<const double> values) {
  Operator m(static_cast<int>(values.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return m;
}

Operator Operator::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

Operator Operator::outer(const Ket& a, const Ket& b) {
  Operator m(4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = a[static_cast<std::size_t>(r)] * std::conj(b[static_cast<std::size_t>(c)]);
  return m;
}

Operator Operator::adjoint() const {
  Operator m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(r, c) = std::conj((*this)(c, r));
  return m;
}

Operator Operator::transpose() const {
  Operator m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(r, c) = (*this)(c, r);
  return m;
}

Operator Operator::conj() const {
  Operator m(*this);
  for (auto& x : m.a_) x = std::conj(x);
  return m;
}

cplx Operator::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double Operator::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : entries()) s += std::norm(x);
  return std::sqrt(s);
}

bool Operator::is_hermitian(double tol) const { return (*this - adjoint()).frobenius_norm() <= tol; }

bool Operator::is_unitary(double tol) const {
  return (adjoint() * *this - identity(dim_)).frobenius_norm() <= tol;
}

Operator& Operator::operator+=(const Operator& o) {
  require_same_dim(*this, o, "operator+");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  require_same_dim(*this, o, "operator-");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  for (auto& x : a_) x *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator*");
  const int n = a.dim();
  Operator m(n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const cplx ark = a(r, k);
      if (ark == 0.0) continue;
      for (int c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

Ket operator*(const Operator& m, const Ket& v) {
  if (m.dim() != 4) throw UsageError("ket product needs a 4x4 operator");
  Ket out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[static_cast<std::size_t>(r)] += m(r, c) * v[static_cast<std::size_t>(c)];
  return out;
}

cplx inner(const Ket& a, const Ket& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const Ket& v) { return std::sqrt(std::real(inner(v, v))); }

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "max_abs_diff");
  double d = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) d = std::max(d, std::abs(a(r, c) - b(r, c)));
  return d;
}

double max_abs_diff_up_to_phase(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "max_abs_diff_up_to_phase");
  cplx overlap = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) overlap += std::conj(b(r, c)) * a(r, c);
  const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
  return max_abs_diff(a, b * phase);
}

Operator kron(const Operator& a, const Operator& b) {
  if (a.dim() != 2 || b.dim() != 2) throw UsageError("kron expects two 2x2 operators");
  Operator m(4);
  for (int ar = 0; ar < 2; ++ar)
    for (int ac = 0; ac < 2; ++ac)
      for (int br = 0; br < 2; ++br)
        for (int bc = 0; bc < 2; ++bc) m(2 * ar + br, 2 * ac + bc) = a(ar, ac) * b(br, bc);
  return m;
}

EigenSystem eig_hermitian(const Operator& m) {
  if (!m.is_hermitian(1e-10 * std::max(1.0, m.frobenius_norm())))
    throw UsageError("eig_hermitian: matrix is not Hermitian");
  const int n = m.dim();
  // Exact Hermitian copy so rounding noise in the input does not bias the sweeps.
  Operator a = 0.5 * (m + m.adjoint());
  Operator v = Operator::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off <= 1e-34 * scale * scale) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r < 1e-300) continue;
        const cplx phase = a(p, q) / r;  // a_pq = r e^{i phi}
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // W = D G: D removes the phase of a_pq, G is the real Jacobi rotation.
        Operator w = Operator::identity(n);
        w(p, p) = c;
        w(p, q) = s;
        w(q, p) = -s * std::conj(phase);
        w(q, q) = c * std::conj(phase);
        a = w.adjoint() * a * w;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        v = v * w;
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });

  EigenSystem out{std::vector<double>(static_cast<std::size_t>(n)), Operator(n)};
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(k)] = a(src, src).real();
    for (int r = 0; r < n; ++r) out.vectors(r, k) = v(r, src);
  }
  return out;
}

namespace {

template <typename F>
Operator apply_spectral(const EigenSystem& es, F&& f) {
  const int n = es.vectors.dim();
  Operator out(n);
  for (int k = 0; k < n; ++k) {
    const cplx fk = f(es.values[static_cast<std::size_t>(k)]);
    if (fk == 0.0) continue;
    for (int r = 0; r < n; ++r) {
      const cplx vr = es.vectors(r, k) * fk;
      for (int c = 0; c < n; ++c) out(r, c) += vr * std::conj(es.vectors(c, k));
    }
  }
  return out;
}

}  // namespace

Operator expm_i(const Operator& h, double theta) {
  if (!h.is_hermitian(1e-10 * std::max(1.0, h.frobenius_norm()))) throw UsageError("expm_i: matrix is not Hermitian");
  if (theta == 0.0) return Operator::identity(h.dim());
  const auto es = eig_hermitian(h);
  return apply_spectral(es, [theta](double lam) { return std::exp(cplx(0.0, -theta * lam)); });
}

Operator sqrtm_psd(const Operator& m) {
  const auto es = eig_hermitian(m);
  if (es.values.front() < -DensityMatrix::kNegativityTol)
    throw DomainError("sqrtm_psd: eigenvalue " + std::to_string(es.values.front()) + " is below -1e-8");
  return apply_spectral(es, [](double lam) { return cplx(std::sqrt(std::max(lam, 0.0))); });
}

Operator partial_transpose(const Operator& m, int qubit) {
  if (m.dim() != 4) throw UsageError("partial_transpose needs a 4x4 operator");
  if (qubit != 1 && qubit != 2) throw UsageError("partial_transpose: qubit must be 1 or 2");
  Operator out(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) {
          const int row = 2 * a + b;
          const int col = 2 * ap + bp;
          out(row, col) = qubit == 2 ? m(2 * a + bp, 2 * ap + b) : m(2 * ap + b, 2 * a + bp);
        }
  return out;
}

DensityMatrix::DensityMatrix() : m_(Operator::identity(4) * 0.25) {}

DensityMatrix::DensityMatrix(const Operator& m) : m_(m) {
  if (m.dim() != 4) throw UsageError("density matrix must be 4x4");
  if (!m.is_hermitian(kHermitianTol)) throw DomainError("density matrix is not Hermitian");
  if (std::abs(m.trace() - 1.0) > kTraceTol) throw DomainError("density matrix trace differs from 1");
  const auto es = eig_hermitian(m);
  if (es.values.front() < -kNegativityTol)
    throw DomainError("density matrix has eigenvalue " + std::to_string(es.values.front()));
}

DensityMatrix DensityMatrix::unchecked(const Operator& m) {
  if (m.dim() != 4) throw UsageError("density matrix must be 4x4");
  return DensityMatrix(m, NoCheck{});
}

DensityMatrix DensityMatrix::pure(const Ket& psi) {
  if (std::abs(norm(psi) - 1.0) > 1e-12) throw UsageError("pure state vector is not normalized");
  return DensityMatrix(Operator::projector(psi), NoCheck{});
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

Operator partial_transpose(const DensityMatrix& rho, int qubit) { return partial_transpose(rho.op(), qubit); }

namespace pauli {
Operator I() { return Operator::identity(2); }
Operator X() { return Operator(2, {0.0, 1.0, 1.0, 0.0}); }
Operator Y() { return Operator(2, {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}); }
Operator Z() { return Operator(2, {1.0, 0.0, 0.0, -1.0}); }
}  // namespace pauli

Ket basis_ket(int index) {
  if (index < 0 || index > 3) throw UsageError("basis index must be in [0, 3]");
  Ket k{};
  k[static_cast<std::size_t>(index)] = 1.0;
  return k;
}

}  // namespace superzeno
