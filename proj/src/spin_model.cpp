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

#include "superzeno/spin_model.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "superzeno/errors.hpp"

namespace superzeno {

using std::numbers::pi;

void SpinSystem::validate() const {
  for (int s = 0; s < 2; ++s) {
    if (!(t1[s] > 0.0) || !(t2[s] > 0.0)) throw UsageError("T1 and T2 must be positive");
    if (t2[s] > 2.0 * t1[s] * (1.0 + 1e-12)) throw UsageError("T2 must not exceed 2*T1");
  }
  if (dephasing_correlation < 0.0 || dephasing_correlation > 1.0)
    throw UsageError("dephasing correlation must lie in [0, 1]");
  if (ensemble_samples < 1) throw UsageError("ensemble_samples must be at least 1");
  if (inhomogeneity_sigma < 0.0) throw UsageError("inhomogeneity sigma must be non-negative");
  if (!(pulse_duration >= 0.0)) throw UsageError("pulse duration must be non-negative");
  if (!(max_step > 0.0)) throw UsageError("max_step must be positive");
}

Operator spin_op(char axis, int spin) {
  Operator half(2);
  switch (axis) {
    case 'x': half = pauli::X() * 0.5; break;
    case 'y': half = pauli::Y() * 0.5; break;
    case 'z': half = pauli::Z() * 0.5; break;
    default: throw UsageError(std::string("unknown spin axis '") + axis + "'");
  }
  if (spin == 1) return kron(half, pauli::I());
  if (spin == 2) return kron(pauli::I(), half);
  throw UsageError("spin index must be 1 or 2");
}

Operator hamiltonian(const SpinSystem& sys, double disorder_offset, bool perturbation) {
  const double nu1 = sys.nu1 + 0.5 * disorder_offset;
  const double nu2 = sys.nu2 - 0.5 * disorder_offset;
  const double j = sys.j12;
  Operator h = Operator::diagonal({0.5 * (nu1 + nu2) + 0.25 * j, 0.5 * (nu1 - nu2) - 0.25 * j,
                                   0.5 * (-nu1 + nu2) - 0.25 * j, -0.5 * (nu1 + nu2) + 0.25 * j});
  if (perturbation) h += sys.perturbation_eps * (spin_op('x', 1) + spin_op('x', 2));
  return h;
}

std::string_view to_string(GateName g) {
  switch (g) {
    case GateName::X90: return "X90";
    case GateName::Y90: return "Y90";
    case GateName::X180: return "X180";
    case GateName::H1: return "H1";
    case GateName::H2: return "H2";
    case GateName::CNOT12: return "CNOT12";
    case GateName::CNOT21: return "CNOT21";
    case GateName::CPHASE: return "CPHASE";
    case GateName::Uzz: return "Uzz";
  }
  return "?";
}

namespace {

Operator rotation(char axis, double angle, int spin) { return expm_i(spin_op(axis, spin), angle); }

Operator nonselective(char axis, double angle) { return rotation(axis, angle, 1) * rotation(axis, angle, 2); }

Operator hadamard_on(int spin) {
  const double r = 1.0 / std::sqrt(2.0);
  const Operator h(2, {r, r, r, -r});
  return spin == 1 ? kron(h, pauli::I()) : kron(pauli::I(), h);
}

// exp(-i phi I1z I2z), the evolution under the scalar coupling for
// tau = phi / (2 pi J).
Operator zz_phase(double phi) { return expm_i(spin_op('z', 1) * spin_op('z', 2), phi); }

}  // namespace

GateSet::GateSet(const SpinSystem& sys) : j12_(sys.j12) {
  const double s = 1.0 + sys.pulse_angle_error;
  const double pulse = sys.pulse_duration;
  const auto add = [this](GateName n, Operator ideal, std::vector<GateStep> steps, bool coupling) {
    Operator realized = Operator::identity(4);
    double duration = 0.0;
    for (const auto& st : steps) {
      realized = st.unitary * realized;
      duration += st.duration;
    }
    gates_.emplace(n, Gate{n, std::move(ideal), std::move(realized), duration, coupling, std::move(steps)});
  };

  const Operator x180 = nonselective('x', s * pi);
  add(GateName::X90, nonselective('x', pi / 2), {{"X90", nonselective('x', s * pi / 2), pulse}}, false);
  add(GateName::Y90, nonselective('y', pi / 2), {{"Y90", nonselective('y', s * pi / 2), pulse}}, false);
  add(GateName::X180, nonselective('x', pi), {{"X180", x180, pulse}}, false);

  // H = i Rx(pi) Ry(pi/2) on the addressed spin.
  GateStep h_step[2];
  for (int spin = 1; spin <= 2; ++spin) {
    const std::string label = spin == 1 ? "H1" : "H2";
    h_step[spin - 1] = {label, cplx(0.0, 1.0) * rotation('x', s * pi, spin) * rotation('y', s * pi / 2, spin), pulse};
    add(spin == 1 ? GateName::H1 : GateName::H2, hadamard_on(spin), {h_step[spin - 1]}, false);
  }

  if (j12_ == 0.0) return;

  // Coupling evolution split by two non-selective refocusing pi pulses; the
  // chemical shifts refocus, the zz phase accumulates. Every coupling gate is
  // booked at 1/(2J) plus its two refocusing pulses; any extra pulses of a
  // composite gate sit inside the delays, so the free windows shrink instead.
  const double coupling_time = 1.0 / (2.0 * j12_) + 2.0 * pulse;
  const auto coupling = [&](double phi, int extra_pulses) {
    const double delay = std::max(0.0, (coupling_time - (2.0 + extra_pulses) * pulse) / 2.0);
    return std::vector<GateStep>{{"ZZ", zz_phase(phi / 2), delay},
                                 {"X180", x180, pulse},
                                 {"ZZ", zz_phase(phi / 2), delay},
                                 {"X180", x180, pulse}};
  };
  // exp(-i pi |11><11|) = e^{-i pi/4} Rz1(-pi/2) Rz2(-pi/2) exp(-i pi I1z I2z); the z rotations are frame updates.
  const auto cphase = [&](int extra_pulses) {
    auto steps = coupling(pi, extra_pulses);
    steps.push_back(
        {"Rz", std::exp(cplx(0.0, -pi / 4)) * rotation('z', -pi / 2, 1) * rotation('z', -pi / 2, 2), 0.0});
    return steps;
  };

  add(GateName::CPHASE, Operator::diagonal({1.0, 1.0, 1.0, -1.0}), cphase(0), true);

  const Operator p0 = Operator(2, {1.0, 0.0, 0.0, 0.0});
  const Operator p1 = Operator(2, {0.0, 0.0, 0.0, 1.0});
  for (int target = 2; target >= 1; --target) {
    std::vector<GateStep> steps{h_step[target - 1]};
    for (auto& st : cphase(2)) steps.push_back(std::move(st));
    steps.push_back(h_step[target - 1]);
    if (target == 2)
      add(GateName::CNOT12, kron(p0, pauli::I()) + kron(p1, pauli::X()), std::move(steps), true);
    else
      add(GateName::CNOT21, kron(pauli::I(), p0) + kron(pauli::X(), p1), std::move(steps), true);
  }

  // exp(-i 2 pi I1z I2z) = -i Z(x)Z
  auto uzz = coupling(2 * pi, 0);
  uzz.push_back({"phase", Operator::identity(4) * cplx(0.0, 1.0), 0.0});
  add(GateName::Uzz, Operator::diagonal({1.0, -1.0, -1.0, 1.0}), std::move(uzz), true);
}

const Gate& GateSet::gate(GateName name) const {
  auto it = gates_.find(name);
  if (it == gates_.end())
    throw ConfigurationError("gate " + std::string(to_string(name)) + " needs a nonzero scalar coupling J12");
  return it->second;
}

GateSet gate_set(const SpinSystem& sys) { return GateSet(sys); }

// ---------------------------------------------------------------------------
// Superoperators

Superop::Superop() {
  for (int i = 0; i < 16; ++i) s_[static_cast<std::size_t>(i * 16 + i)] = 1.0;
}

Superop Superop::from_kraus(const std::vector<Operator>& kraus) {
  Superop out;
  out.s_.fill(0.0);
  for (const auto& k : kraus) {
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        for (int a = 0; a < 4; ++a) {
          const cplx kra = k(r, a);
          if (kra == 0.0) continue;
          for (int b = 0; b < 4; ++b) out.s_[static_cast<std::size_t>((r * 4 + c) * 16 + a * 4 + b)] += kra * std::conj(k(c, b));
        }
  }
  return out;
}

Superop Superop::conjugation(const Operator& u) { return from_kraus({u}); }

Operator Superop::apply(const Operator& rho) const {
  Operator out(4);
  const auto in = rho.entries();
  for (int i = 0; i < 16; ++i) {
    cplx acc = 0.0;
    const cplx* row = &s_[static_cast<std::size_t>(i * 16)];
    for (int j = 0; j < 16; ++j) acc += row[j] * in[static_cast<std::size_t>(j)];
    out(i / 4, i % 4) = acc;
  }
  return out;
}

Superop Superop::after(const Superop& other) const {
  Superop out;
  out.s_.fill(0.0);
  for (int i = 0; i < 16; ++i)
    for (int k = 0; k < 16; ++k) {
      const cplx a = s_[static_cast<std::size_t>(i * 16 + k)];
      if (a == 0.0) continue;
      for (int j = 0; j < 16; ++j)
        out.s_[static_cast<std::size_t>(i * 16 + j)] += a * other.s_[static_cast<std::size_t>(k * 16 + j)];
    }
  return out;
}

Superop Superop::power(long n) const {
  if (n < 0) throw UsageError("superoperator power must be non-negative");
  Superop result;
  Superop base = *this;
  while (n > 0) {
    if (n & 1) result = base.after(result);
    n >>= 1;
    if (n > 0) base = base.after(base);
  }
  return result;
}

namespace {

double dephasing_rate(const SpinSystem& sys, int s) { return std::max(0.0, 1.0 / sys.t2[s] - 0.5 / sys.t1[s]); }

// Magnetic quantum number (+1/2 or -1/2) of the given spin in basis state i.
double m_of(int basis, int spin) { return ((basis >> (2 - spin)) & 1) ? -0.5 : 0.5; }

}  // namespace

std::vector<Operator> amplitude_damping_kraus(const SpinSystem& sys, int spin, double tau) {
  if (tau < 0.0) throw UsageError("relaxation time step must be non-negative");
  if (spin != 1 && spin != 2) throw UsageError("spin index must be 1 or 2");
  const double gamma = -std::expm1(-tau / sys.t1[spin - 1]);
  const double keep = std::sqrt(1.0 - gamma);
  const double flip = std::sqrt(gamma);
  const double half = std::sqrt(0.5);  // stationary populations 1/2, 1/2
  const Operator k0(2, {half, 0.0, 0.0, half * keep});
  const Operator k1(2, {0.0, half * flip, 0.0, 0.0});
  const Operator k2(2, {half * keep, 0.0, 0.0, half});
  const Operator k3(2, {0.0, 0.0, half * flip, 0.0});
  std::vector<Operator> out;
  for (const auto& k : {k0, k1, k2, k3}) out.push_back(spin == 1 ? kron(k, pauli::I()) : kron(pauli::I(), k));
  return out;
}

std::vector<Operator> dephasing_kraus(const SpinSystem& sys, double tau) {
  if (tau < 0.0) throw UsageError("relaxation time step must be non-negative");
  const double c = sys.dephasing_correlation;
  const double g[2] = {std::sqrt(dephasing_rate(sys, 0)), std::sqrt(dephasing_rate(sys, 1))};

  // Schur multiplier M_ab = exp(-tau Gamma_ab); Gamma mixes a shared field
  // (weight c) with independent per-spin fields (weight 1 - c).
  Operator m(4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double d1 = m_of(a, 1) - m_of(b, 1);
      const double d2 = m_of(a, 2) - m_of(b, 2);
      const double shared = g[0] * d1 + g[1] * d2;
      const double rate = c * shared * shared + (1.0 - c) * (g[0] * g[0] * d1 * d1 + g[1] * g[1] * d2 * d2);
      m(a, b) = std::exp(-tau * rate);
    }

  const auto es = eig_hermitian(m);
  std::vector<Operator> out;
  for (int k = 0; k < 4; ++k) {
    const double lam = es.values[static_cast<std::size_t>(k)];
    if (lam <= 0.0) continue;
    Operator kk(4);
    for (int i = 0; i < 4; ++i) kk(i, i) = std::sqrt(lam) * es.vectors(i, k);
    out.push_back(kk);
  }
  return out;
}

Superop relaxation_superop(const SpinSystem& sys, double tau) {
  return Superop::from_kraus(dephasing_kraus(sys, tau))
      .after(Superop::from_kraus(amplitude_damping_kraus(sys, 2, tau)))
      .after(Superop::from_kraus(amplitude_damping_kraus(sys, 1, tau)));
}

DensityMatrix relax_step(const DensityMatrix& rho, const SpinSystem& sys, double tau) {
  if (tau < 0.0) throw UsageError("relax_step: tau must be non-negative");
  return DensityMatrix::unchecked(relaxation_superop(sys, tau).apply(rho.op()));
}

DisorderNodes disorder_nodes(const SpinSystem& sys, bool disorder_on) {
  if (!disorder_on || sys.inhomogeneity_sigma == 0.0 || sys.ensemble_samples == 1) return {{0.0}, {1.0}};
  const auto n = static_cast<std::size_t>(sys.ensemble_samples);
  // weight exp(-x^2); offsets d = sqrt(2) sigma x follow N(0, sigma^2).
  std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> ws(
      gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, n, 0.0, 1.0, 0.0, 0.0), &gsl_integration_fixed_free);
  if (!ws) throw std::runtime_error("failed to allocate Gauss-Hermite workspace");
  const double* x = gsl_integration_fixed_nodes(ws.get());
  const double* w = gsl_integration_fixed_weights(ws.get());
  DisorderNodes out;
  for (std::size_t k = 0; k < n; ++k) {
    out.offsets.push_back(std::sqrt(2.0) * sys.inhomogeneity_sigma * x[k]);
    out.weights.push_back(w[k] / std::sqrt(pi));
  }
  return out;
}

Superop free_evolution_superop(const SpinSystem& sys, double tau, const NoiseFlags& flags, double disorder_offset) {
  if (tau < 0.0) throw UsageError("free evolution time must be non-negative");
  if (tau == 0.0) return Superop();
  const Operator h = hamiltonian(sys, disorder_offset, flags.perturbation_on);
  if (!flags.relaxation_on) return Superop::conjugation(expm_i(h, 2 * pi * tau));

  const long n = std::max(1L, static_cast<long>(std::ceil(tau / sys.max_step - 1e-9)));
  const double dt = tau / static_cast<double>(n);
  const Superop half = relaxation_superop(sys, 0.5 * dt);
  const Superop step = half.after(Superop::conjugation(expm_i(h, 2 * pi * dt))).after(half);
  return step.power(n);
}

DensityMatrix free_evolve_member(const DensityMatrix& rho, const SpinSystem& sys, double tau,
                                 const NoiseFlags& flags, double disorder_offset) {
  return DensityMatrix::unchecked(free_evolution_superop(sys, tau, flags, disorder_offset).apply(rho.op()));
}

DensityMatrix free_evolve(const DensityMatrix& rho, const SpinSystem& sys, double tau, const NoiseFlags& flags) {
  if (tau < 0.0) throw UsageError("free_evolve: tau must be non-negative");
  const auto nodes = disorder_nodes(sys, flags.disorder_on);
  Operator acc(4);
  for (std::size_t k = 0; k < nodes.offsets.size(); ++k)
    acc += nodes.weights[k] * free_evolve_member(rho, sys, tau, flags, nodes.offsets[k]).op();
  return DensityMatrix::unchecked(acc);
}

std::vector<Operator> crusher_kraus() {
  return {Operator::diagonal({1.0, 0.0, 0.0, 0.0}), Operator::diagonal({0.0, 1.0, 1.0, 0.0}),
          Operator::diagonal({0.0, 0.0, 0.0, 1.0})};
}

DensityMatrix crusher(const DensityMatrix& rho) {
  Operator out(4);
  for (const auto& k : crusher_kraus()) out += k * rho.op() * k;
  return DensityMatrix::unchecked(out);
}

}  // namespace superzeno
