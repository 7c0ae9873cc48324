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

#include "superzeno/linalg.hpp"

namespace superzeno {

// Uhlmann-Jozsa fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// Population outside span{|01>, |10>}: <00|rho|00> + <11|rho|11>.
double leakage(const DensityMatrix& rho);

// max(0, -lambda_min) of the partial transpose on qubit 2.
double entanglement_eta(const DensityMatrix& rho);

// (1 - eps)/4 I + eps |psi><psi|
DensityMatrix pseudopure(const Ket& psi, double eps);

}  // namespace superzeno
