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

// Numerical re-derivation of the super-Zeno interval coefficients from the
// post-cycle leakage out of the protected subspace.

#include <cstdint>
#include <span>
#include <vector>

#include "superzeno/linalg.hpp"
#include "superzeno/zeno.hpp"

namespace superzeno {

// ||Q W(t) psi0||^2 with W(t) = U(x_{N+1} t) J ... J U(x_1 t) and
// U(tau) = exp(-i 2 pi h tau). Coefficients must sum to 1 but may contain zeros.
double leakage_probability(std::span<const double> x, const Operator& h, const Subspace& p, double t,
                           const Ket& psi0);

// Leakage averaged over an orthonormal basis of P, i.e. ||Q W P||_F^2 / dim P.
double subspace_leakage(std::span<const double> x, const Operator& h, const Subspace& p, double t);

// Least-squares slope of log(leakage) against log(t). Points whose leakage
// underflows (< 1e-300) are dropped.
double fit_scaling_order(std::span<const double> x, const Operator& h, const Subspace& p, const Ket& psi0,
                         std::span<const double> t_grid);

// N+1 equal coefficients.
std::vector<double> uniform_coefficients(int n_kicks);

// Random Hermitian perturbations: Hermitian diagonal blocks on P and Q and an
// off-diagonal P<->Q block of unit Frobenius norm. Deterministic for a seed.
std::vector<Operator> random_perturbation_ensemble(const Subspace& p, int count, std::uint64_t seed);

// eps (I1x + I2x) normalized to a unit off-diagonal block.
Operator transverse_perturbation();

// Default optimization ensemble: 8 seeded random members plus the transverse
// drive.
std::vector<Operator> default_ensemble(const Subspace& p);

// Mean subspace leakage over an ensemble.
double ensemble_leakage(std::span<const double> x, const std::vector<Operator>& ensemble, const Subspace& p, double t);

struct OptimizerOptions {
  int starts = 16;
  int max_iterations = 4000;
};

struct OptimizeResult {
  std::vector<double> coefficients;
  double objective = 0.0;        // mean leakage at the returned coefficients
  double analytic_objective = 0.0;  // mean leakage at the analytic schedule (N = 4 only, else NaN)
  bool converged = false;        // the winning start converged before the iteration cap
  int evaluations = 0;
};

// Minimizes ensemble_leakage over symmetric (x_i = x_{N+2-i}) positive
// coefficients summing to 1, from a deterministic set of Halton starts. The
// analytic N = 4 schedule is always included as a candidate.
OptimizeResult optimize_intervals(const std::vector<Operator>& ensemble, const Subspace& p, double t, int n_kicks = 4,
                                  const OptimizerOptions& opt = {});

}  // namespace superzeno
