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

#include "superzeno/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>

#include "superzeno/errors.hpp"

namespace superzeno {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

// Splits on commas and/or whitespace.
std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Ctx {
  const std::string& source;
  const IniEntry& e;
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigFileError(source, e.line, "'" + e.key + "': " + msg);
  }
};

double to_double(const Ctx& c, const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    c.fail("expected a number, got '" + s + "'");
  }
  if (pos != s.size() || !std::isfinite(v)) c.fail("expected a number, got '" + s + "'");
  return v;
}

int to_int(const Ctx& c, const std::string& s) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    c.fail("expected an integer, got '" + s + "'");
  }
  if (pos != s.size() || v < -1000000000L || v > 1000000000L) c.fail("expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

bool to_bool(const Ctx& c, const std::string& s) {
  const auto v = lower(s);
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  c.fail("expected a boolean, got '" + s + "'");
}

std::array<double, 2> to_pair(const Ctx& c, const std::string& s) {
  const auto items = split_list(s);
  if (items.size() == 1) {
    const double v = to_double(c, items[0]);
    return {v, v};
  }
  if (items.size() == 2) return {to_double(c, items[0]), to_double(c, items[1])};
  c.fail("expected one value or two per-spin values");
}

// Four real amplitudes, or eight numbers as (re, im) pairs.
Ket to_ket(const Ctx& c, const std::string& s) {
  const auto items = split_list(s);
  Ket k{};
  if (items.size() == 4) {
    for (std::size_t i = 0; i < 4; ++i) k[i] = to_double(c, items[i]);
  } else if (items.size() == 8) {
    for (std::size_t i = 0; i < 4; ++i) k[i] = cplx(to_double(c, items[2 * i]), to_double(c, items[2 * i + 1]));
  } else {
    c.fail("a state vector needs 4 real or 8 (re, im) entries");
  }
  const double n = norm(k);
  if (!(n > 0.0)) c.fail("state vector is zero");
  for (auto& x : k) x /= n;
  return k;
}

Ket named_state(const Ctx& c, const std::string& s) {
  const auto v = lower(s);
  if (v == "00") return basis_ket(0);
  if (v == "01") return basis_ket(1);
  if (v == "10") return basis_ket(2);
  if (v == "11") return basis_ket(3);
  if (v == "singlet") return singlet_ket();
  if (v == "triplet") {
    const double r = 1.0 / std::sqrt(2.0);
    return Ket{0.0, r, r, 0.0};
  }
  c.fail("unknown state '" + s + "' (00, 01, 10, 11, singlet, triplet)");
}

std::vector<Ket> named_subspace(const Ctx& c, const std::string& s) {
  const auto v = lower(s);
  if (v == "11") return Subspace::state11().basis();
  if (v == "singlet") return Subspace::singlet().basis();
  if (v == "zq" || v == "01+10") return Subspace::zero_quantum().basis();
  c.fail("unknown subspace '" + s + "' (11, singlet, zq)");
}

bool apply_system_key(SpinSystem& sys, const Ctx& c) {
  const auto& k = c.e.key;
  const auto& v = c.e.value;
  if (k == "nu1") sys.nu1 = to_double(c, v);
  else if (k == "nu2") sys.nu2 = to_double(c, v);
  else if (k == "j12") sys.j12 = to_double(c, v);
  else if (k == "t1") sys.t1 = to_pair(c, v);
  else if (k == "t2") sys.t2 = to_pair(c, v);
  else if (k == "dephasing_correlation") sys.dephasing_correlation = to_double(c, v);
  else if (k == "sigma") sys.inhomogeneity_sigma = to_double(c, v);
  else if (k == "ensemble_samples") sys.ensemble_samples = to_int(c, v);
  else if (k == "perturbation_eps") sys.perturbation_eps = to_double(c, v);
  else if (k == "pulse_angle_error") sys.pulse_angle_error = to_double(c, v);
  else if (k == "pulse_duration") sys.pulse_duration = to_double(c, v);
  else if (k == "max_step") sys.max_step = to_double(c, v);
  else return false;
  return true;
}

}  // namespace

std::vector<IniSection> parse_ini(std::istream& in, const std::string& source) {
  std::vector<IniSection> sections;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find_first_of(";#");
    if (hash != std::string::npos) s.erase(hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigFileError(source, line, "unterminated section header");
      const auto name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) throw ConfigFileError(source, line, "empty section name");
      for (const auto& prev : sections)
        if (prev.name == name)
          throw ConfigFileError(source, line, "duplicate section [" + name + "] (first at line " +
                                                  std::to_string(prev.line) + ")");
      sections.push_back({name, line, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigFileError(source, line, "expected 'key = value'");
    if (sections.empty()) throw ConfigFileError(source, line, "key outside of any section");
    IniEntry e{lower(trim(s.substr(0, eq))), trim(s.substr(eq + 1)), line};
    if (e.key.empty()) throw ConfigFileError(source, line, "empty key");
    if (e.value.empty()) throw ConfigFileError(source, line, "empty value for '" + e.key + "'");
    auto& entries = sections.back().entries;
    for (const auto& prev : entries)
      if (prev.key == e.key && e.key != "protect_vector")
        throw ConfigFileError(source, line, "duplicate key '" + e.key + "' (first at line " +
                                                std::to_string(prev.line) + ")");
    entries.push_back(std::move(e));
  }
  if (in.bad()) throw ConfigFileError(source, 0, "read error");
  return sections;
}

std::vector<ScenarioConfig> load_scenarios(std::istream& in, const std::string& source) {
  const auto sections = parse_ini(in, source);

  SpinSystem global;
  for (const auto& sec : sections) {
    if (sec.name != "system") continue;
    for (const auto& e : sec.entries) {
      const Ctx c{source, e};
      if (!apply_system_key(global, c)) c.fail("unknown system key");
    }
  }

  std::vector<ScenarioConfig> out;
  for (const auto& sec : sections) {
    if (sec.name == "system") continue;

    // The preset is applied before any override, wherever the key appears.
    ScenarioId id = scenario_from_string(sec.name).value_or(ScenarioId::Custom);
    for (const auto& e : sec.entries) {
      if (e.key != "scenario") continue;
      auto parsed = scenario_from_string(lower(e.value));
      if (!parsed) Ctx{source, e}.fail("unknown scenario '" + e.value + "'");
      id = *parsed;
    }
    ScenarioConfig cfg = preset(id);
    cfg.name = sec.name;
    cfg.output = sec.name;
    cfg.system = global;
    bool own_cycles = false;
    std::vector<Ket> custom_basis;
    int custom_line = 0;

    for (const auto& e : sec.entries) {
      const Ctx c{source, e};
      const auto& k = e.key;
      const auto& v = e.value;
      if (k == "scenario") continue;
      if (apply_system_key(cfg.system, c)) continue;
      if (k == "initial") {
        cfg.initial_state = named_state(c, v);
        cfg.initial_label = lower(v);
      } else if (k == "initial_vector") {
        cfg.initial_state = to_ket(c, v);
        cfg.initial_label = "custom";
      } else if (k == "protect") {
        cfg.protected_basis = named_subspace(c, v);
        cfg.subspace_label = lower(v) == "zq" ? "01+10" : lower(v);
      } else if (k == "protect_vector") {
        custom_basis.push_back(to_ket(c, v));
        custom_line = e.line;
      } else if (k == "polarization") {
        cfg.polarization = to_double(c, v);
        if (cfg.polarization < 0.0 || cfg.polarization > 1.0) c.fail("polarization must lie in [0, 1]");
      } else if (k == "t") {
        cfg.t = to_double(c, v);
        if (!(cfg.t > 0.0)) c.fail("t must be positive");
      } else if (k == "n_cycles") {
        cfg.n_cycles = to_int(c, v);
        if (cfg.n_cycles < 0) c.fail("n_cycles must be non-negative");
      } else if (k == "mode") {
        try {
          cfg.mode = kick_mode_from_string(lower(v));
        } catch (const std::exception& ex) {
          c.fail(ex.what());
        }
      } else if (k == "relaxation") {
        cfg.flags.relaxation_on = to_bool(c, v);
      } else if (k == "disorder") {
        cfg.flags.disorder_on = to_bool(c, v);
      } else if (k == "perturbation") {
        cfg.flags.perturbation_on = to_bool(c, v);
      } else if (k == "crusher") {
        cfg.flags.crusher_on = to_bool(c, v);
      } else if (k == "sample_every") {
        cfg.sample_every = to_int(c, v);
        if (cfg.sample_every < 0) c.fail("sample_every must be non-negative");
      } else if (k == "sample_cycles") {
        cfg.sample_cycles.clear();
        own_cycles = true;
        for (const auto& item : split_list(v)) cfg.sample_cycles.push_back(to_int(c, item));
      } else if (k == "sample_times") {
        cfg.sample_times.clear();
        for (const auto& item : split_list(v)) cfg.sample_times.push_back(to_double(c, item));
      } else if (k == "tomography") {
        cfg.tomography = to_bool(c, v);
      } else if (k == "dump_tomo") {
        cfg.dump_tomo = to_bool(c, v);
      } else if (k == "output") {
        cfg.output = v;
      } else {
        c.fail("unknown key");
      }
    }

    if (!own_cycles)  // preset sample cycles only apply while they fit a shortened run
      std::erase_if(cfg.sample_cycles, [&](int n) { return n > cfg.n_cycles; });

    if (!custom_basis.empty()) {
      try {
        Subspace check(custom_basis);
      } catch (const std::exception& ex) {
        throw ConfigFileError(source, custom_line, std::string("protect_vector: ") + ex.what());
      }
      cfg.protected_basis = custom_basis;
      cfg.subspace_label = "custom";
    }
    if (cfg.protected_basis.empty())
      throw ConfigFileError(source, sec.line, "[" + sec.name + "] has no protected subspace");

    // Whole-scenario checks: physical parameters, circuit availability, sample ranges.
    try {
      cfg.system.validate();
      sample_schedule(cfg, cycle_duration(cfg));
    } catch (const ConfigFileError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ConfigFileError(source, sec.line, "[" + sec.name + "]: " + ex.what());
    }
    out.push_back(std::move(cfg));
  }
  if (out.empty()) throw ConfigFileError(source, 0, "no scenario sections");
  return out;
}

std::vector<ScenarioConfig> load_scenarios(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigFileError(path.string(), 0, "cannot open file");
  return load_scenarios(in, path.string());
}

}  // namespace superzeno
