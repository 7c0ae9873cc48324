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

#include "superzeno/zeno.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "superzeno/errors.hpp"

namespace superzeno {

Subspace::Subspace(std::vector<Ket> basis) : basis_(std::move(basis)) {
  if (basis_.empty() || basis_.size() > 3) throw UsageError("protected subspace must have dimension 1, 2 or 3");
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const cplx expected = i == j ? 1.0 : 0.0;
      if (std::abs(inner(basis_[i], basis_[j]) - expected) > 1e-12)
        throw UsageError("subspace basis is not orthonormal");
    }
}

Ket singlet_ket() {
  const double r = 1.0 / std::sqrt(2.0);
  return {0.0, r, -r, 0.0};
}

Subspace Subspace::state11() { return Subspace({basis_ket(3)}); }
Subspace Subspace::singlet() { return Subspace({singlet_ket()}); }
Subspace Subspace::zero_quantum() { return Subspace({basis_ket(1), basis_ket(2)}); }

Operator Subspace::projector() const {
  Operator p(4);
  for (const auto& b : basis_) p += Operator::projector(b);
  return p;
}

std::vector<Ket> Subspace::complement_basis() const {
  std::vector<Ket> all = basis_;
  std::vector<Ket> out;
  for (int i = 0; i < 4 && all.size() < 4; ++i) {
    Ket v = basis_ket(i);
    for (const auto& u : all) {
      const cplx c = inner(u, v);
      for (std::size_t k = 0; k < 4; ++k) v[k] -= c * u[k];
    }
    const double n = norm(v);
    if (n < 1e-8) continue;
    for (auto& x : v) x /= n;
    all.push_back(v);
    out.push_back(v);
  }
  return out;
}

bool Subspace::contains(const Ket& v, double tol) const {
  const Ket pv = projector() * v;
  double d = 0.0;
  for (std::size_t k = 0; k < 4; ++k) d += std::norm(v[k] - pv[k]);
  return std::sqrt(d) <= tol;
}

Operator kick_from_subspace(const Subspace& p) { return Operator::identity(4) - 2.0 * p.projector(); }

double superzeno_beta() { return (3.0 - std::sqrt(5.0)) / 8.0; }

std::vector<double> ZenoSchedule::intervals() const {
  std::vector<double> out;
  out.reserve(coefficients.size());
  for (double x : coefficients) out.push_back(x * t);
  return out;
}

ZenoSchedule make_schedule(double t, std::vector<double> coefficients) {
  if (!(t > 0.0)) throw UsageError("schedule base interval t must be positive");
  if (coefficients.size() < 2) throw UsageError("schedule needs at least one kick");
  for (double x : coefficients)
    if (!(x > 0.0)) throw UsageError("schedule coefficients must be positive");
  const double sum = std::accumulate(coefficients.begin(), coefficients.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-12) throw UsageError("schedule coefficients must sum to 1");
  return ZenoSchedule{t, std::move(coefficients)};
}

ZenoSchedule superzeno_schedule(double t) {
  const double b = superzeno_beta();
  return make_schedule(t, {b, 0.25, 0.5 - 2.0 * b, 0.25, b});
}

std::string to_string(KickMode m) { return m == KickMode::Ideal ? "ideal" : "circuit"; }

KickMode kick_mode_from_string(const std::string& s) {
  if (s == "ideal") return KickMode::Ideal;
  if (s == "circuit") return KickMode::Circuit;
  throw UsageError("kick mode must be 'ideal' or 'circuit', got '" + s + "'");
}

double event_duration(const CycleEvent& e) {
  if (const auto* f = std::get_if<FreeEvolutionEvent>(&e)) return f->duration;
  if (const auto* k = std::get_if<KickEvent>(&e)) return k->duration;
  return 0.0;
}

std::vector<GateName> kick_circuit(const Subspace& p) {
  const Operator proj = p.projector();
  if (max_abs_diff(proj, Subspace::state11().projector()) < 1e-10)
    return {GateName::H2, GateName::CNOT12, GateName::H2};
  if (max_abs_diff(proj, Subspace::singlet().projector()) < 1e-10)
    return {GateName::CNOT12, GateName::CNOT21, GateName::CNOT12};
  if (max_abs_diff(proj, Subspace::zero_quantum().projector()) < 1e-10) return {GateName::Uzz};
  throw UnsupportedDecomposition("no circuit decomposition is known for this protected subspace");
}

CycleProgram build_cycle(const SpinSystem& sys, const Subspace& p, const ZenoSchedule& schedule, KickMode mode,
                         bool with_crusher) {
  CycleProgram prog;
  prog.mode = mode;

  std::vector<CycleEvent> kick;
  if (mode == KickMode::Ideal) {
    kick.emplace_back(KickEvent{"J", kick_from_subspace(p), 0.0});
  } else {
    const auto circuit = kick_circuit(p);
    const GateSet gates(sys);
    for (GateName g : circuit) {
      for (const auto& st : gates.gate(g).steps)
        kick.emplace_back(KickEvent{std::string(to_string(g)) + ":" + st.label, st.unitary, st.duration});
    }
  }

  if (with_crusher) prog.events.emplace_back(CrusherEvent{});
  const auto intervals = schedule.intervals();
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (i > 0) prog.events.insert(prog.events.end(), kick.begin(), kick.end());
    prog.events.emplace_back(FreeEvolutionEvent{intervals[i]});
  }
  for (const auto& e : prog.events) prog.total_duration += event_duration(e);
  return prog;
}

CycleProgram build_cycle(const SpinSystem& sys, const Subspace& p, double t, KickMode mode, bool with_crusher) {
  return build_cycle(sys, p, superzeno_schedule(t), mode, with_crusher);
}

CycleProgram free_cycle(double duration) {
  if (!(duration >= 0.0)) throw UsageError("free cycle duration must be non-negative");
  CycleProgram prog;
  prog.events.emplace_back(FreeEvolutionEvent{duration});
  prog.total_duration = duration;
  return prog;
}

Operator realized_kick(const CycleProgram& cycle) {
  Operator u = Operator::identity(4);
  bool seen = false;
  for (const auto& e : cycle.events) {
    if (const auto* k = std::get_if<KickEvent>(&e)) {
      u = k->unitary * u;
      seen = true;
    } else if (seen) {
      break;
    }
  }
  if (!seen) throw UsageError("cycle contains no kick");
  return u;
}

namespace {

struct Member {
  double offset;
  double weight;
  Superop cycle;
};

Superop event_superop(const CycleEvent& e, const SpinSystem& sys, const NoiseFlags& flags, double offset) {
  if (const auto* f = std::get_if<FreeEvolutionEvent>(&e)) return free_evolution_superop(sys, f->duration, flags, offset);
  if (const auto* k = std::get_if<KickEvent>(&e)) {
    // Chemical shifts (and so the disorder offset) are refocused inside gates;
    // relaxation still acts for the wall-clock duration.
    const Superop u = Superop::conjugation(k->unitary);
    if (!flags.relaxation_on || k->duration == 0.0) return u;
    const Superop half = relaxation_superop(sys, 0.5 * k->duration);
    return half.after(u).after(half);
  }
  return Superop::from_kraus(crusher_kraus());
}

}  // namespace

std::vector<TrajectoryPoint> run_protection(const DensityMatrix& rho0, const CycleProgram& cycle, int n_cycles,
                                            const SpinSystem& sys, const NoiseFlags& flags) {
  if (n_cycles < 0) throw UsageError("n_cycles must be non-negative");
  sys.validate();
  const auto nodes = disorder_nodes(sys, flags.disorder_on);

  std::vector<Member> members;
  members.reserve(nodes.offsets.size());
  for (std::size_t k = 0; k < nodes.offsets.size(); ++k) {
    Superop s;
    for (const auto& e : cycle.events) s = event_superop(e, sys, flags, nodes.offsets[k]).after(s);
    members.push_back({nodes.offsets[k], nodes.weights[k], s});
  }

  std::vector<Operator> states(members.size(), rho0.op());
  std::vector<TrajectoryPoint> out;
  out.reserve(static_cast<std::size_t>(n_cycles) + 1);
  out.push_back({0.0, rho0});
  for (int n = 1; n <= n_cycles; ++n) {
    Operator avg(4);
    for (std::size_t k = 0; k < members.size(); ++k) {
      states[k] = members[k].cycle.apply(states[k]);
      avg += members[k].weight * states[k];
    }
    out.push_back({n * cycle.total_duration, DensityMatrix::unchecked(0.5 * (avg + avg.adjoint()))});
  }
  return out;
}

}  // namespace superzeno
