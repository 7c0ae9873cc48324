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

// Reduced four-setting tomography of a two-spin density matrix.
//
// Each setting applies 90-degree rotations to the indicated spins and then
// reads the four single-quantum elements rho'_12, rho'_34, rho'_13, rho'_24
// (1-indexed, basis |00>..|11>) as real/imaginary pairs.

#include <array>
#include <span>
#include <string>

#include "superzeno/linalg.hpp"

namespace superzeno {

enum class TomoSetting { II, IX, IY, XX };

inline constexpr std::array<TomoSetting, 4> kAllSettings = {TomoSetting::II, TomoSetting::IX, TomoSetting::IY,
                                                            TomoSetting::XX};

std::string to_string(TomoSetting s);

struct ReadoutRecord {
  TomoSetting setting;
  std::array<double, 8> values;
};

// Rotation applied before readout.
Operator setting_rotation(TomoSetting s);

ReadoutRecord simulate_readout(const Operator& rho, TomoSetting s);
ReadoutRecord simulate_readout(const DensityMatrix& rho, TomoSetting s);
std::array<ReadoutRecord, 4> simulate_all(const DensityMatrix& rho);

// Rank of the 32x15 map from traceless Hermitian parameters to readouts.
int design_rank();

// Least-squares inversion of one record per setting. Throws DataError when
// the fit residual exceeds residual_tol, ConfigurationError when the design is
// rank deficient.
DensityMatrix reconstruct(std::span<const ReadoutRecord> records, double residual_tol = 1e-6);

// Shift by min(0, lambda_min) and normalize to unit trace. Throws DomainError
// for inputs whose shifted trace vanishes.
DensityMatrix renormalize_deviation(const Operator& rho_like);

}  // namespace superzeno
