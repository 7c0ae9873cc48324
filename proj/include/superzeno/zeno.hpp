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

// Super-Zeno protection: kick operators, the optimized interval schedule and
// executable protection cycles.

#include <string>
#include <variant>
#include <vector>

#include "superzeno/linalg.hpp"
#include "superzeno/spin_model.hpp"

namespace superzeno {

// Orthonormal basis of the protected subspace P.
class Subspace {
 public:
  explicit Subspace(std::vector<Ket> basis);

  static Subspace state11();
  static Subspace singlet();
  // span{|01>, |10>}
  static Subspace zero_quantum();

  const std::vector<Ket>& basis() const noexcept { return basis_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  Operator projector() const;
  // Orthonormal basis of the complement Q.
  std::vector<Ket> complement_basis() const;
  bool contains(const Ket& v, double tol = 1e-10) const;

 private:
  std::vector<Ket> basis_;
};

// Singlet (|01> - |10>)/sqrt(2).
Ket singlet_ket();

// J = Q - P = I - 2 P.
Operator kick_from_subspace(const Subspace& p);

// (3 - sqrt 5) / 8
double superzeno_beta();

struct ZenoSchedule {
  double t = 0.0;
  std::vector<double> coefficients;  // x_1 .. x_{N+1}

  int kicks() const { return static_cast<int>(coefficients.size()) - 1; }
  std::vector<double> intervals() const;
};

// Validates positivity and unit sum.
ZenoSchedule make_schedule(double t, std::vector<double> coefficients);

// N = 4 schedule {beta, 1/4, 1/2 - 2 beta, 1/4, beta}.
ZenoSchedule superzeno_schedule(double t);

enum class KickMode { Ideal, Circuit };

std::string to_string(KickMode m);
KickMode kick_mode_from_string(const std::string& s);

struct FreeEvolutionEvent {
  double duration;
};

struct KickEvent {
  std::string label;
  Operator unitary;
  double duration;
};

struct CrusherEvent {};

using CycleEvent = std::variant<FreeEvolutionEvent, KickEvent, CrusherEvent>;

double event_duration(const CycleEvent& e);

struct CycleProgram {
  std::vector<CycleEvent> events;
  double total_duration = 0.0;
  KickMode mode = KickMode::Ideal;
};

// The circuit decomposition of a kick for one of the three supported
// subspaces; throws UnsupportedDecomposition otherwise.
std::vector<GateName> kick_circuit(const Subspace& p);

CycleProgram build_cycle(const SpinSystem& sys, const Subspace& p, const ZenoSchedule& schedule, KickMode mode,
                         bool with_crusher = false);
CycleProgram build_cycle(const SpinSystem& sys, const Subspace& p, double t, KickMode mode, bool with_crusher = false);

// A "cycle" of plain free evolution, used for the unprotected reference branch.
CycleProgram free_cycle(double duration);

// Product of the kick unitaries in event order (the realized kick of one
// block); the cycle must contain at least one kick.
Operator realized_kick(const CycleProgram& cycle);

struct TrajectoryPoint {
  double time;
  DensityMatrix rho;
};

// Repeats the cycle n_cycles times and returns the state at every cycle
// boundary, starting with t = 0. Static disorder is carried through the whole
// run per ensemble member and averaged only at the reported boundaries.
std::vector<TrajectoryPoint> run_protection(const DensityMatrix& rho0, const CycleProgram& cycle, int n_cycles,
                                            const SpinSystem& sys, const NoiseFlags& flags);

}  // namespace superzeno
