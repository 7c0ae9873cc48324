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

// Scenario runner for the protection experiments: builds the cycle, evolves a
// protected and an unprotected branch from the same initial state, passes the
// sampled states through the tomography round trip and computes the metrics.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "superzeno/linalg.hpp"
#include "superzeno/spin_model.hpp"
#include "superzeno/tomography.hpp"
#include "superzeno/zeno.hpp"

namespace superzeno {

enum class ScenarioId { State11, Singlet, Sub01, Sub10, SubSinglet, Custom };

std::string to_string(ScenarioId id);
std::optional<ScenarioId> scenario_from_string(const std::string& s);

struct ScenarioConfig {
  std::string name;
  ScenarioId id = ScenarioId::Custom;
  std::string initial_label;  // human-readable description for the manifest
  Ket initial_state{};
  double polarization = 1.0;  // pseudopure epsilon
  std::string subspace_label;
  std::vector<Ket> protected_basis;
  double t = 0.01;
  int n_cycles = 10;
  KickMode mode = KickMode::Circuit;
  NoiseFlags flags = NoiseFlags::experiment();
  SpinSystem system;
  int sample_every = 2;                 // 0 disables periodic sampling
  std::vector<int> sample_cycles;       // explicit cycle indices (preset reference samples)
  std::vector<double> sample_times;     // seconds, rounded to the nearest cycle boundary
  bool tomography = true;               // route samples through readout + reconstruction
  bool dump_tomo = false;
  std::string output;                   // path prefix for .csv / .json
};

// Defaults for the five named experiments.
ScenarioConfig preset(ScenarioId id);
std::vector<ScenarioId> preset_ids();

struct TimeSeriesPoint {
  double time;
  int cycle;
  bool protected_branch;
  double fidelity;
  double leakage;
  double eta;
};

struct TomoDump {
  double time;
  int cycle;
  bool protected_branch;
  std::array<ReadoutRecord, 4> records;
  Operator rho;  // state handed to the metrics
};

struct ScenarioResult {
  ScenarioConfig config;
  ZenoSchedule schedule;
  double cycle_duration = 0.0;
  std::vector<int> sampled_cycles;
  std::vector<TimeSeriesPoint> points;  // per sample: unprotected row, then protected row
  std::vector<TomoDump> dumps;
};

// Cycle indices that will be sampled (sorted, unique, always including 0).
std::vector<int> sample_schedule(const ScenarioConfig& cfg, double cycle_duration);

// Cycle duration for a config without running it.
double cycle_duration(const ScenarioConfig& cfg);

ScenarioResult run_scenario(const ScenarioConfig& cfg);

// CSV with header time_s,branch,fidelity,leakage,eta and 12 significant digits.
std::string to_csv(const std::vector<TimeSeriesPoint>& points);
std::string manifest_json(const ScenarioResult& result);
std::string tomo_dump_json(const ScenarioResult& result);

// Writes <prefix>.csv and <prefix>.json (and <prefix>.tomo.json when
// dumping). Returns the written paths.
std::vector<std::filesystem::path> emit(const ScenarioResult& result, const std::filesystem::path& prefix);

}  // namespace superzeno
