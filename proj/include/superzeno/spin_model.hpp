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

// Two-spin NMR model in the rotating frame: Hamiltonian, gate set, relaxation
// channels, static frequency disorder and the timed free-evolution engine.
//
// Frequencies are in Hz and times in seconds. A Hamiltonian H (in Hz) generates
// the propagator exp(-i 2 pi H tau).

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "superzeno/linalg.hpp"

namespace superzeno {

struct SpinSystem {
  double nu1 = 600.0;   // chemical shift of spin 1 (Hz)
  double nu2 = -600.0;  // chemical shift of spin 2 (Hz)
  double j12 = 7.17;    // scalar coupling (Hz)
  std::array<double, 2> t1{7.4, 7.4};
  std::array<double, 2> t2{3.25, 3.25};
  double dephasing_correlation = 0.9;  // c in [0, 1]
  double inhomogeneity_sigma = 0.5;    // width of the nu1 - nu2 disorder (Hz)
  int ensemble_samples = 64;
  double perturbation_eps = 1.0;  // transverse leakage drive (Hz), used when enabled
  double pulse_angle_error = 0.0;
  double pulse_duration = 1e-3;
  double max_step = 1e-3;  // splitting step for relaxation

  // Throws UsageError on unphysical parameters.
  void validate() const;
};

struct NoiseFlags {
  bool relaxation_on = false;
  bool disorder_on = false;
  bool perturbation_on = false;
  bool crusher_on = false;

  static NoiseFlags none() { return {}; }
  // Defaults used for the experiment reproductions.
  static NoiseFlags experiment() { return {true, true, false, true}; }
};

// Diagonal rotating-frame Hamiltonian in Hz. A disorder offset d shifts the
// chemical-shift difference: nu1 += d/2, nu2 -= d/2. With perturbation the
// transverse term eps (I1x + I2x) is added.
Operator hamiltonian(const SpinSystem& sys, double disorder_offset = 0.0, bool perturbation = false);

// Single-spin operators embedded in the two-spin space (spin is 1 or 2).
Operator spin_op(char axis, int spin);

enum class GateName { X90, Y90, X180, H1, H2, CNOT12, CNOT21, CPHASE, Uzz };

std::string_view to_string(GateName g);

// One pulse or coupling delay inside a gate, in time order.
struct GateStep {
  std::string label;
  Operator unitary;
  double duration;
};

struct Gate {
  GateName name;
  Operator ideal;     // target unitary
  Operator realized;  // what the pulse model produces (equals ideal up to phase when error is 0)
  double duration;    // seconds
  bool uses_coupling;
  std::vector<GateStep> steps;  // product (last step leftmost) equals realized
};

class GateSet {
 public:
  explicit GateSet(const SpinSystem& sys);

  // Throws ConfigurationError for coupling gates when j12 is zero.
  const Gate& gate(GateName name) const;

 private:
  std::map<GateName, Gate> gates_;
  double j12_;
};

GateSet gate_set(const SpinSystem& sys);

// Superoperator on row-major vectorized 4x4 matrices.
class Superop {
 public:
  Superop();  // identity map
  static Superop from_kraus(const std::vector<Operator>& kraus);
  static Superop conjugation(const Operator& u);

  Operator apply(const Operator& rho) const;
  // this after other.
  Superop after(const Superop& other) const;
  // n-fold composition.
  Superop power(long n) const;

 private:
  std::array<cplx, 256> s_{};
};

// Per-spin amplitude damping toward I/2 with time constant T1, as 4x4 Kraus
// operators acting on the given spin.
std::vector<Operator> amplitude_damping_kraus(const SpinSystem& sys, int spin, double tau);

// Pure dephasing at rate max(0, 1/T2 - 1/(2 T1)) per spin, with a fraction c
// driven by a field shared by both spins. Diagonal Kraus operators.
std::vector<Operator> dephasing_kraus(const SpinSystem& sys, double tau);

// Full relaxation channel for duration tau as a single superoperator.
Superop relaxation_superop(const SpinSystem& sys, double tau);

DensityMatrix relax_step(const DensityMatrix& rho, const SpinSystem& sys, double tau);

struct DisorderNodes {
  std::vector<double> offsets;  // Hz, applied to nu1 - nu2
  std::vector<double> weights;  // sum to 1
};

// Gauss-Hermite nodes for a Gaussian spread of width inhomogeneity_sigma, or a
// single zero-offset node when disorder is off or sigma is zero.
DisorderNodes disorder_nodes(const SpinSystem& sys, bool disorder_on);

// Free-evolution map of one ensemble member for duration tau: exact
// propagation without relaxation, otherwise symmetric splitting
// R(dt/2) U(dt) R(dt/2) with dt <= max_step.
Superop free_evolution_superop(const SpinSystem& sys, double tau, const NoiseFlags& flags, double disorder_offset);

// Free evolution of a single ensemble member with a fixed disorder offset.
DensityMatrix free_evolve_member(const DensityMatrix& rho, const SpinSystem& sys, double tau,
                                 const NoiseFlags& flags, double disorder_offset);

// Free evolution; with disorder_on, the result is the weighted average over
// the disorder nodes.
DensityMatrix free_evolve(const DensityMatrix& rho, const SpinSystem& sys, double tau, const NoiseFlags& flags);

// Projectors onto the total-Iz sectors; as Kraus operators they remove single-
// and double-quantum coherences.
std::vector<Operator> crusher_kraus();

DensityMatrix crusher(const DensityMatrix& rho);

}  // namespace superzeno
