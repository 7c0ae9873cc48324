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

#pragma once

// Dense complex linear algebra for one- and two-qubit operators.
//
// Basis ordering is |00>, |01>, |10>, |11> with the first (top) qubit as the
// most significant bit. All matrices are stored row-major.

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace superzeno {

using cplx = std::complex<double>;

// Two-qubit state vector.
using Ket = std::array<cplx, 4>;

class Operator {
 public:
  // 4x4 zero matrix.
  Operator() : Operator(4) {}
  // dim x dim zero matrix; dim must be 2 or 4.
  explicit Operator(int dim);
  Operator(int dim, std::initializer_list<cplx> row_major);

  static Operator identity(int dim);
  static Operator diagonal(std::span<const double> values);
  static Operator diagonal(std::initializer_list<double> values);
  // |a><b| for two-qubit kets.
  static Operator outer(const Ket& a, const Ket& b);
  static Operator projector(const Ket& k) { return outer(k, k); }

  int dim() const noexcept { return dim_; }
  cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * dim_ + c)]; }
  const cplx& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * dim_ + c)]; }
  std::span<const cplx> entries() const { return {a_.data(), static_cast<std::size_t>(dim_ * dim_)}; }

  Operator adjoint() const;
  Operator transpose() const;
  Operator conj() const;
  cplx trace() const;
  double frobenius_norm() const;

  bool is_hermitian(double tol = 1e-12) const;
  bool is_unitary(double tol = 1e-12) const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(cplx s);

  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, double s) { return a *= cplx(s); }
  friend Operator operator*(double s, Operator a) { return a *= cplx(s); }

 private:
  int dim_;
  std::array<cplx, 16> a_{};
};

Ket operator*(const Operator& m, const Ket& v);
cplx inner(const Ket& a, const Ket& b);  // <a|b>
double norm(const Ket& v);

// Largest absolute entry of a - b; dimensions must agree.
double max_abs_diff(const Operator& a, const Operator& b);

// max |a - e^{i phi} b| minimized over the global phase phi.
double max_abs_diff_up_to_phase(const Operator& a, const Operator& b);

// Row-major tensor product a (x) b; a acts on the first qubit.
Operator kron(const Operator& a, const Operator& b);

struct EigenSystem {
  std::vector<double> values;  // ascending
  Operator vectors;            // column k is the eigenvector of values[k]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix.
EigenSystem eig_hermitian(const Operator& m);

// exp(-i * theta * h) for Hermitian h.
Operator expm_i(const Operator& h, double theta);

// Principal square root of a PSD matrix. Eigenvalues in [-1e-8, 0) are treated
// as zero; anything below raises DomainError.
Operator sqrtm_psd(const Operator& m);

// Partial transpose on qubit 1 or 2 of a 4x4 operator.
Operator partial_transpose(const Operator& m, int qubit);

// Valid two-qubit density matrix: Hermitian, unit trace, PSD (within the
// tolerances below).
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kNegativityTol = 1e-8;

  // I/4.
  DensityMatrix();
  // Validates; throws DomainError when the invariants do not hold.
  explicit DensityMatrix(const Operator& m);

  // Skips validation. For evolution loops whose maps are already known to be
  // trace-preserving and completely positive.
  static DensityMatrix unchecked(const Operator& m);
  static DensityMatrix pure(const Ket& psi);

  const Operator& op() const noexcept { return m_; }
  const cplx& operator()(int r, int c) const { return m_(r, c); }
  double purity() const;

 private:
  struct NoCheck {};
  DensityMatrix(const Operator& m, NoCheck) : m_(m) {}
  Operator m_;
};

Operator partial_transpose(const DensityMatrix& rho, int qubit);

// Common single-qubit matrices.
namespace pauli {
Operator I();
Operator X();
Operator Y();
Operator Z();
}  // namespace pauli

// Computational basis ket |b1 b2>.
Ket basis_ket(int index);

}  // namespace superzeno
