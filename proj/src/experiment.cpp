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

#include "superzeno/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "superzeno/errors.hpp"
#include "superzeno/metrics.hpp"

namespace superzeno {

using json = nlohmann::ordered_json;

std::string to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::State11: return "state11";
    case ScenarioId::Singlet: return "singlet";
    case ScenarioId::Sub01: return "sub01";
    case ScenarioId::Sub10: return "sub10";
    case ScenarioId::SubSinglet: return "subsinglet";
    case ScenarioId::Custom: return "custom";
  }
  return "custom";
}

std::optional<ScenarioId> scenario_from_string(const std::string& s) {
  for (ScenarioId id : {ScenarioId::State11, ScenarioId::Singlet, ScenarioId::Sub01, ScenarioId::Sub10,
                        ScenarioId::SubSinglet, ScenarioId::Custom})
    if (to_string(id) == s) return id;
  return std::nullopt;
}

std::vector<ScenarioId> preset_ids() {
  return {ScenarioId::State11, ScenarioId::Singlet, ScenarioId::Sub01, ScenarioId::Sub10, ScenarioId::SubSinglet};
}

ScenarioConfig preset(ScenarioId id) {
  ScenarioConfig c;
  c.id = id;
  c.name = to_string(id);
  c.output = c.name;
  switch (id) {
    case ScenarioId::State11:
      c.initial_label = "11";
      c.initial_state = basis_ket(3);
      c.subspace_label = "11";
      c.protected_basis = Subspace::state11().basis();
      c.t = 1e-3;
      c.n_cycles = 30;
      c.sample_cycles = {2, 10, 18, 24};
      break;
    case ScenarioId::Singlet:
      c.initial_label = "singlet";
      c.initial_state = singlet_ket();
      c.subspace_label = "singlet";
      c.protected_basis = Subspace::singlet().basis();
      c.t = 1e-2;
      c.n_cycles = 10;
      c.sample_cycles = {1, 3, 5, 7};
      break;
    case ScenarioId::Sub01:
    case ScenarioId::Sub10:
    case ScenarioId::SubSinglet:
      c.initial_label = id == ScenarioId::Sub01 ? "01" : id == ScenarioId::Sub10 ? "10" : "singlet";
      c.initial_state = id == ScenarioId::Sub01 ? basis_ket(1) : id == ScenarioId::Sub10 ? basis_ket(2) : singlet_ket();
      c.subspace_label = "01+10";
      c.protected_basis = Subspace::zero_quantum().basis();
      c.t = 1e-2;
      c.n_cycles = 30;
      c.sample_cycles = {4, 12, 20, 26};
      break;
    case ScenarioId::Custom:
      c.initial_label = "11";
      c.initial_state = basis_ket(3);
      c.subspace_label = "11";
      c.protected_basis = Subspace::state11().basis();
      break;
  }
  return c;
}

namespace {

CycleProgram cycle_for(const ScenarioConfig& cfg) {
  return build_cycle(cfg.system, Subspace(cfg.protected_basis), superzeno_schedule(cfg.t), cfg.mode,
                     cfg.flags.crusher_on);
}

DensityMatrix measured_state(const DensityMatrix& rho, const ScenarioConfig& cfg, std::array<ReadoutRecord, 4>* records) {
  if (!cfg.tomography) return rho;
  const auto recs = simulate_all(rho);
  if (records) *records = recs;
  return renormalize_deviation(reconstruct(recs).op());
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

json ket_json(const Ket& k) {
  json re = json::array(), im = json::array();
  for (const auto& x : k) {
    re.push_back(x.real());
    im.push_back(x.imag());
  }
  return json{{"re", re}, {"im", im}};
}

json matrix_json(const Operator& m) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json rr = json::array(), ir = json::array();
    for (int c = 0; c < m.dim(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return json{{"re", re}, {"im", im}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error(path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace

double cycle_duration(const ScenarioConfig& cfg) { return cycle_for(cfg).total_duration; }

std::vector<int> sample_schedule(const ScenarioConfig& cfg, double cycle_dur) {
  std::set<int> cycles{0};
  if (cfg.sample_every > 0)
    for (int n = cfg.sample_every; n <= cfg.n_cycles; n += cfg.sample_every) cycles.insert(n);
  for (int n : cfg.sample_cycles) {
    if (n < 0 || n > cfg.n_cycles)
      throw UsageError("sample cycle " + std::to_string(n) + " is outside [0, " + std::to_string(cfg.n_cycles) + "]");
    cycles.insert(n);
  }
  const double end = cfg.n_cycles * cycle_dur;
  for (double t : cfg.sample_times) {
    if (t < 0.0 || t > end * (1.0 + 1e-12))
      throw UsageError("sample time " + fmt12(t) + " s is outside [0, " + fmt12(end) + "] s");
    cycles.insert(cycle_dur > 0.0 ? static_cast<int>(std::lround(t / cycle_dur)) : 0);
  }
  return {cycles.begin(), cycles.end()};
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.system.validate();
  if (cfg.n_cycles < 0) throw UsageError("n_cycles must be non-negative");
  const Subspace p(cfg.protected_basis);

  ScenarioResult res;
  res.config = cfg;
  res.schedule = superzeno_schedule(cfg.t);
  const CycleProgram protected_cycle = build_cycle(cfg.system, p, res.schedule, cfg.mode, cfg.flags.crusher_on);
  res.cycle_duration = protected_cycle.total_duration;
  res.sampled_cycles = sample_schedule(cfg, res.cycle_duration);

  const DensityMatrix rho0 = pseudopure(cfg.initial_state, cfg.polarization);
  NoiseFlags bare = cfg.flags;
  bare.crusher_on = false;

  auto protected_run = std::async(std::launch::async, [&] {
    return run_protection(rho0, protected_cycle, cfg.n_cycles, cfg.system, cfg.flags);
  });
  const auto unprotected = run_protection(rho0, free_cycle(res.cycle_duration), cfg.n_cycles, cfg.system, bare);
  const auto protected_traj = protected_run.get();

  const DensityMatrix reference = pseudopure(cfg.initial_state, 1.0);
  for (int n : res.sampled_cycles) {
    const auto idx = static_cast<std::size_t>(n);
    for (bool is_protected : {false, true}) {
      const auto& point = is_protected ? protected_traj[idx] : unprotected[idx];
      TomoDump dump{point.time, n, is_protected, {}, Operator(4)};
      const DensityMatrix m = measured_state(point.rho, cfg, &dump.records);
      res.points.push_back({point.time, n, is_protected, fidelity(reference, m), leakage(m), entanglement_eta(m)});
      if (cfg.dump_tomo && cfg.tomography) {
        dump.rho = m.op();
        res.dumps.push_back(std::move(dump));
      }
    }
  }
  return res;
}

std::string to_csv(const std::vector<TimeSeriesPoint>& points) {
  std::string out = "time_s,branch,fidelity,leakage,eta\n";
  for (const auto& p : points) {
    out += fmt12(p.time) + ',' + (p.protected_branch ? "protected" : "unprotected") + ',' + fmt12(p.fidelity) + ',' +
           fmt12(p.leakage) + ',' + fmt12(p.eta) + '\n';
  }
  return out;
}

std::string manifest_json(const ScenarioResult& r) {
  const auto& c = r.config;
  const auto& s = c.system;
  json flags{{"relaxation", c.flags.relaxation_on},
             {"disorder", c.flags.disorder_on},
             {"perturbation", c.flags.perturbation_on},
             {"crusher", c.flags.crusher_on}};
  json system{{"nu1_hz", s.nu1},
              {"nu2_hz", s.nu2},
              {"j12_hz", s.j12},
              {"t1_s", {s.t1[0], s.t1[1]}},
              {"t2_s", {s.t2[0], s.t2[1]}},
              {"dephasing_correlation", s.dephasing_correlation},
              {"inhomogeneity_sigma_hz", s.inhomogeneity_sigma},
              {"ensemble_samples", s.ensemble_samples},
              {"perturbation_eps_hz", s.perturbation_eps},
              {"pulse_angle_error", s.pulse_angle_error},
              {"pulse_duration_s", s.pulse_duration},
              {"max_step_s", s.max_step}};
  json basis = json::array();
  for (const auto& k : c.protected_basis) basis.push_back(ket_json(k));

  const CycleProgram cycle = cycle_for(c);
  json events = json::array();
  for (const auto& e : cycle.events) {
    if (const auto* f = std::get_if<FreeEvolutionEvent>(&e))
      events.push_back({{"type", "free"}, {"duration_s", f->duration}});
    else if (const auto* k = std::get_if<KickEvent>(&e))
      events.push_back({{"type", "kick"}, {"label", k->label}, {"duration_s", k->duration}});
    else
      events.push_back({{"type", "crusher"}, {"duration_s", 0.0}});
  }
  json sample_times = json::array();
  for (int n : r.sampled_cycles) sample_times.push_back(n * r.cycle_duration);

  json doc{{"software", {{"name", "superzeno"}, {"version", SUPERZENO_VERSION}}},
           {"scenario",
            {{"name", c.name},
             {"id", to_string(c.id)},
             {"initial", c.initial_label},
             {"initial_state", ket_json(c.initial_state)},
             {"polarization", c.polarization},
             {"subspace", c.subspace_label},
             {"subspace_basis", basis},
             {"t_s", c.t},
             {"n_cycles", c.n_cycles},
             {"mode", to_string(c.mode)},
             {"flags", flags},
             {"system", system},
             {"sample_every", c.sample_every},
             {"sample_cycles", c.sample_cycles},
             {"sample_times_s", c.sample_times},
             {"tomography", c.tomography}}},
           {"schedule", {{"coefficients", r.schedule.coefficients}, {"intervals_s", r.schedule.intervals()}}},
           {"cycle", {{"duration_s", r.cycle_duration}, {"events", events}}},
           {"samples", {{"cycles", r.sampled_cycles}, {"times_s", sample_times}}}};
  return doc.dump(2) + "\n";
}

std::string tomo_dump_json(const ScenarioResult& r) {
  json arr = json::array();
  for (const auto& d : r.dumps) {
    json records = json::object();
    for (const auto& rec : d.records) records[to_string(rec.setting)] = rec.values;
    arr.push_back({{"time_s", d.time},
                   {"cycle", d.cycle},
                   {"branch", d.protected_branch ? "protected" : "unprotected"},
                   {"records", records},
                   {"rho", matrix_json(d.rho)}});
  }
  return arr.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit(const ScenarioResult& result, const std::filesystem::path& prefix) {
  std::vector<std::filesystem::path> written;
  const auto with = [&](const char* ext) { return std::filesystem::path(prefix.string() + ext); };
  write_file(with(".csv"), to_csv(result.points));
  written.push_back(with(".csv"));
  write_file(with(".json"), manifest_json(result));
  written.push_back(with(".json"));
  if (result.config.dump_tomo) {
    write_file(with(".tomo.json"), tomo_dump_json(result));
    written.push_back(with(".tomo.json"));
  }
  return written;
}

}  // namespace superzeno
