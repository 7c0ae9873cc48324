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

#include "superzeno/interval_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "superzeno/errors.hpp"
#include "superzeno/nelder_mead.hpp"
#include "superzeno/spin_model.hpp"

namespace superzeno {

namespace {

void check_coefficients(std::span<const double> x) {
  if (x.size() < 2) throw UsageError("coefficient list needs at least two entries");
  for (double v : x)
    if (v < 0.0) throw UsageError("coefficients must be non-negative");
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-12) throw UsageError("coefficients must sum to 1");
}

// W(t) as an operator.
Operator cycle_unitary(std::span<const double> x, const Operator& h, const Operator& kick, double t) {
  const auto es = eig_hermitian(h);
  const auto propagator = [&](double tau) {
    Operator u(4);
    for (int k = 0; k < 4; ++k) {
      const cplx ph = std::exp(cplx(0.0, -2.0 * std::numbers::pi * tau * es.values[static_cast<std::size_t>(k)]));
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) u(r, c) += es.vectors(r, k) * ph * std::conj(es.vectors(c, k));
    }
    return u;
  };
  Operator w = propagator(x[0] * t);
  for (std::size_t i = 1; i < x.size(); ++i) w = propagator(x[i] * t) * kick * w;
  return w;
}

double halton(int index, int base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

// Symmetric parameterization: group weights from a softmax over (z, 0).
struct SymmetricMap {
  int intervals;
  int groups;

  std::vector<double> coefficients(const std::vector<double>& z) const {
    std::vector<double> logits(z);
    logits.push_back(0.0);
    const double mx = *std::max_element(logits.begin(), logits.end());
    std::vector<double> w(logits.size());
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) s += (w[j] = std::exp(logits[j] - mx));
    for (auto& v : w) v /= s;
    return from_weights(w);
  }

  std::vector<double> from_weights(const std::vector<double>& w) const {
    std::vector<double> x(static_cast<std::size_t>(intervals));
    for (int g = 0; g < groups; ++g) {
      const int mirror = intervals - 1 - g;
      const double share = g == mirror ? w[static_cast<std::size_t>(g)] : 0.5 * w[static_cast<std::size_t>(g)];
      x[static_cast<std::size_t>(g)] = share;
      x[static_cast<std::size_t>(mirror)] = share;
    }
    return x;
  }

  std::vector<double> logits_from_weights(const std::vector<double>& w) const {
    std::vector<double> z;
    for (int g = 0; g + 1 < groups; ++g)
      z.push_back(std::log(std::max(w[static_cast<std::size_t>(g)], 1e-9) / std::max(w.back(), 1e-9)));
    return z;
  }

  std::vector<double> weights_from_coefficients(const std::vector<double>& x) const {
    std::vector<double> w(static_cast<std::size_t>(groups));
    for (int g = 0; g < groups; ++g) {
      const int mirror = intervals - 1 - g;
      w[static_cast<std::size_t>(g)] = g == mirror ? x[static_cast<std::size_t>(g)] : 2.0 * x[static_cast<std::size_t>(g)];
    }
    return w;
  }
};

}  // namespace

double leakage_probability(std::span<const double> x, const Operator& h, const Subspace& p, double t,
                           const Ket& psi0) {
  check_coefficients(x);
  if (std::abs(norm(psi0) - 1.0) > 1e-10) throw UsageError("initial state must be normalized");
  if (!p.contains(psi0)) throw UsageError("initial state must lie in the protected subspace");
  const Ket out = cycle_unitary(x, h, kick_from_subspace(p), t) * psi0;
  const Ket inside = p.projector() * out;
  double leak = 0.0;
  for (std::size_t k = 0; k < 4; ++k) leak += std::norm(out[k] - inside[k]);
  return std::clamp(leak, 0.0, 1.0);
}

double subspace_leakage(std::span<const double> x, const Operator& h, const Subspace& p, double t) {
  check_coefficients(x);
  const Operator w = cycle_unitary(x, h, kick_from_subspace(p), t);
  const Operator q = Operator::identity(4) - p.projector();
  return std::clamp((q * w * p.projector()).frobenius_norm() * (q * w * p.projector()).frobenius_norm() / p.dim(), 0.0,
                    1.0);
}

double fit_scaling_order(std::span<const double> x, const Operator& h, const Subspace& p, const Ket& psi0,
                         std::span<const double> t_grid) {
  if (t_grid.empty()) throw FitError("empty time grid");
  const auto [lo, hi] = std::minmax_element(t_grid.begin(), t_grid.end());
  if (!(*lo > 0.0) || *hi / *lo < 10.0 * (1.0 - 1e-12)) throw UsageError("time grid must span at least one decade");

  std::vector<double> lx, ly;
  for (double t : t_grid) {
    const double leak = leakage_probability(x, h, p, t, psi0);
    if (leak < 1e-300) continue;
    lx.push_back(std::log(t));
    ly.push_back(std::log(leak));
  }
  if (lx.size() < 3) throw FitError("fewer than 3 usable points for the scaling fit");
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

std::vector<double> uniform_coefficients(int n_kicks) {
  if (n_kicks < 1) throw UsageError("need at least one kick");
  return std::vector<double>(static_cast<std::size_t>(n_kicks + 1), 1.0 / (n_kicks + 1));
}

std::vector<Operator> random_perturbation_ensemble(const Subspace& p, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Operator pp = p.projector();
  const Operator qq = Operator::identity(4) - pp;
  const auto random_matrix = [&]() {
    Operator g(4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) g(r, c) = cplx(gauss(rng), gauss(rng));
    return g;
  };
  const auto normalized = [](const Operator& m) {
    const double n = m.frobenius_norm();
    return n > 0.0 ? m * (1.0 / n) : m;
  };

  std::vector<Operator> out;
  for (int i = 0; i < count; ++i) {
    const Operator a = random_matrix();
    const Operator b = random_matrix();
    const Operator v = normalized(pp * random_matrix() * qq);
    const Operator diag_p = normalized(pp * (a + a.adjoint()) * pp);
    const Operator diag_q = normalized(qq * (b + b.adjoint()) * qq);
    out.push_back(diag_p + diag_q + v + v.adjoint());
  }
  return out;
}

Operator transverse_perturbation() { return spin_op('x', 1) + spin_op('x', 2); }

std::vector<Operator> default_ensemble(const Subspace& p) {
  auto out = random_perturbation_ensemble(p, 8, 20140301);
  Operator drive = transverse_perturbation();
  const Operator pp = p.projector();
  const double block = (pp * drive * (Operator::identity(4) - pp)).frobenius_norm();
  if (block > 0.0) drive = drive * (1.0 / block);
  out.push_back(drive);
  return out;
}

double ensemble_leakage(std::span<const double> x, const std::vector<Operator>& ensemble, const Subspace& p, double t) {
  if (ensemble.empty()) throw UsageError("ensemble must not be empty");
  double s = 0.0;
  for (const auto& h : ensemble) s += subspace_leakage(x, h, p, t);
  return s / static_cast<double>(ensemble.size());
}

OptimizeResult optimize_intervals(const std::vector<Operator>& ensemble, const Subspace& p, double t, int n_kicks,
                                  const OptimizerOptions& opt) {
  if (ensemble.empty()) throw UsageError("ensemble must not be empty");
  if (n_kicks < 1) throw UsageError("need at least one kick");
  if (!(t > 0.0)) throw UsageError("t must be positive");
  if (opt.starts < 1) throw UsageError("need at least one start");

  const int intervals = n_kicks + 1;
  const SymmetricMap map{intervals, (intervals + 1) / 2};
  const auto objective = [&](const std::vector<double>& x) { return ensemble_leakage(x, ensemble, p, t); };
  int evaluations = 0;
  const auto log_objective = [&](const std::vector<double>& z) {
    ++evaluations;
    return std::log10(std::max(objective(map.coefficients(z)), 1e-300));
  };

  struct Candidate {
    std::vector<double> x;
    double value;
    bool converged;
  };
  std::vector<Candidate> candidates;

  NelderMeadOptions nm;
  nm.max_iterations = opt.max_iterations;
  nm.ftol = 1e-11;
  nm.xtol = 1e-10;
  const auto polish = [&](std::vector<double> z) {
    const auto r = nelder_mead(log_objective, std::move(z), nm);
    const auto x = map.coefficients(r.x);
    candidates.push_back({x, objective(x), r.converged});
  };

  OptimizeResult result;
  result.analytic_objective = std::numeric_limits<double>::quiet_NaN();
  if (n_kicks == 4) {
    const auto analytic = superzeno_schedule(1.0).coefficients;
    result.analytic_objective = objective(analytic);
    candidates.push_back({analytic, result.analytic_objective, true});
    polish(map.logits_from_weights(map.weights_from_coefficients(analytic)));
  }

  const int free_dims = map.groups - 1;
  if (free_dims == 0) {
    candidates.push_back({map.coefficients({}), objective(map.coefficients({})), true});
  } else {
    for (int s = 1; s <= opt.starts; ++s) {
      std::vector<double> u;
      for (int d = 0; d < free_dims; ++d) u.push_back(halton(s, kPrimes[d % 10]));
      std::sort(u.begin(), u.end());
      std::vector<double> w;
      double prev = 0.0;
      for (double v : u) {
        w.push_back(v - prev);
        prev = v;
      }
      w.push_back(1.0 - prev);
      polish(map.logits_from_weights(w));
    }
  }

  const auto best = std::min_element(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value < b.value;
    return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
  });
  result.coefficients = best->x;
  result.objective = best->value;
  result.converged = best->converged;
  result.evaluations = evaluations;
  return result;
}

}  // namespace superzeno
