#pragma once

// Scenario configuration: flat "key = value" text with dotted keys.
//
//   version = 1
//   scenario.name = my-run
//   field.gamma = 300
//
// Blank lines and "#" comments are ignored; unknown keys, duplicate keys,
// bad values and a missing version are ParseErrors. Environment variables
// UNRUH_<KEY> (dots written as "__", letters upper case) override file values,
// e.g. UNRUH_FIELD__GAMMA=400.

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "unruh/error.hpp"
#include "unruh/fields.hpp"

namespace unruh {

inline constexpr int kConfigVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kEnvPrefix = "UNRUH_";

struct ScenarioConfig {
  std::string name = "custom";
  LabFieldConfig field;

  // beam
  double n_electrons = 1.0e9;
  double bunching = 1.0;
  bool coherent = false;

  // trajectory
  double tol = 1e-9;
  std::size_t min_samples_per_cycle = 64;
  double span_cycles = 0.0;  // half-span; 0 = cover the pulse automatically

  // spectra (wave numbers in units of the rest-frame omega)
  double k_min = 0.5;
  double k_max = 1.5;
  std::size_t n_k = 201;
  double theta = 1.5707963267948966;  // rest-frame direction of k
  double phi = 0.0;
  double partner_theta = 1.5707963267948966;
  double partner_phi = 3.141592653589793;

  // map
  std::size_t map_n_energy = 128;
  std::size_t map_n_theta = 128;
  double map_e_max_eV = 2.0e6;
  double map_theta_max = 0.01;
  std::size_t map_n_azimuth = 8;
  std::size_t map_energy_subsamples = 1;
  std::size_t map_partner_polar = 32;
  std::size_t map_partner_azimuth = 16;
  bool map_normalize = true;
  bool map_images = true;

  // stats
  double squeezing = -1.0;  // |xi|; negative = derive from the coherent electron count
  std::size_t stats_n_max = 60;

  // run
  std::string output_dir = "out";
  std::size_t workers = 1;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& key, const std::string& text, int line) {
  const char* b = text.data();
  const char* e = b + text.size();
  double v = 0.0;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || !std::isfinite(v)) {
    throw ParseError("bad number '" + text + "' for " + key, key, line);
  }
  return v;
}

inline std::size_t parse_count(const std::string& key, const std::string& text, int line) {
  std::size_t v = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) {
    throw ParseError("bad integer '" + text + "' for " + key, key, line);
  }
  return v;
}

inline bool parse_bool(const std::string& key, const std::string& text, int line) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError("bad boolean '" + text + "' for " + key, key, line);
}

struct KeySpec {
  std::string key;
  std::function<void(ScenarioConfig&, const std::string&, int)> set;
  std::function<std::string(const ScenarioConfig&)> get;
  bool in_hash = true;
};

inline const std::vector<KeySpec>& key_table() {
  using C = ScenarioConfig;
  static const std::vector<KeySpec> table = [] {
    std::vector<KeySpec> t;
    auto real = [&](const char* key, double C::*mem, double lo, double hi) {
      t.push_back({key,
                   [=](C& c, const std::string& s, int line) {
                     const double v = parse_double(key, s, line);
                     if (!(v >= lo && v <= hi)) {
                       throw ParseError(std::string(key) + " = " + s + " outside [" +
                                            fmt_double(lo) + ", " + fmt_double(hi) + "]",
                                        key, line);
                     }
                     c.*mem = v;
                   },
                   [=](const C& c) { return fmt_double(c.*mem); }});
    };
    auto field_real = [&](const char* key, double LabFieldConfig::*mem, double lo, double hi) {
      t.push_back({key,
                   [=](C& c, const std::string& s, int line) {
                     const double v = parse_double(key, s, line);
                     if (!(v >= lo && v <= hi)) {
                       throw ParseError(std::string(key) + " = " + s + " outside [" +
                                            fmt_double(lo) + ", " + fmt_double(hi) + "]",
                                        key, line);
                     }
                     c.field.*mem = v;
                   },
                   [=](const C& c) { return fmt_double(c.field.*mem); }});
    };
    auto count = [&](const char* key, std::size_t C::*mem, std::size_t lo, std::size_t hi,
                     bool in_hash = true) {
      t.push_back({key,
                   [=](C& c, const std::string& s, int line) {
                     const std::size_t v = parse_count(key, s, line);
                     if (v < lo || v > hi) {
                       throw ParseError(std::string(key) + " = " + s + " outside [" +
                                            std::to_string(lo) + ", " + std::to_string(hi) + "]",
                                        key, line);
                     }
                     c.*mem = v;
                   },
                   [=](const C& c) { return std::to_string(c.*mem); }, in_hash});
    };
    auto flag = [&](const char* key, bool C::*mem) {
      t.push_back({key, [=](C& c, const std::string& s, int line) { c.*mem = parse_bool(key, s, line); },
                   [=](const C& c) { return std::string(c.*mem ? "true" : "false"); }});
    };

    t.push_back({"scenario.name",
                 [](C& c, const std::string& s, int line) {
                   if (s.empty() || s.find_first_of(",\"\n") != std::string::npos) {
                     throw ParseError("scenario.name must be non-empty without commas or quotes",
                                      "scenario.name", line);
                   }
                   c.name = s;
                 },
                 [](const C& c) { return c.name; }});
    t.push_back({"field.kind",
                 [](C& c, const std::string& s, int line) {
                   if (s == "laser") c.field.kind = FieldKind::laser;
                   else if (s == "undulator") c.field.kind = FieldKind::undulator;
                   else throw ParseError("field.kind must be laser or undulator", "field.kind", line);
                 },
                 [](const C& c) {
                   return std::string(c.field.kind == FieldKind::laser ? "laser" : "undulator");
                 }});
    t.push_back({"field.envelope",
                 [](C& c, const std::string& s, int line) {
                   if (s == "gaussian") c.field.envelope_shape = EnvelopeShape::gaussian;
                   else if (s == "rectangular") c.field.envelope_shape = EnvelopeShape::rectangular;
                   else throw ParseError("field.envelope must be gaussian or rectangular",
                                         "field.envelope", line);
                 },
                 [](const C& c) {
                   return std::string(c.field.envelope_shape == EnvelopeShape::gaussian
                                          ? "gaussian"
                                          : "rectangular");
                 }});
    field_real("field.gamma", &LabFieldConfig::gamma, 1.0, 1.0e7);
    field_real("field.photon_energy_ev", &LabFieldConfig::photon_energy_lab_eV, 1e-6, 1e6);
    field_real("field.intensity_w_cm2", &LabFieldConfig::intensity_lab_W_cm2, 0.0, 1e24);
    field_real("field.halfwidth_cycles", &LabFieldConfig::envelope_halfwidth_cycles, 1.0, 1e5);
    t.push_back({"field.counter_propagating",
                 [](C& c, const std::string& s, int line) {
                   c.field.counter_propagating = parse_bool("field.counter_propagating", s, line);
                 },
                 [](const C& c) { return std::string(c.field.counter_propagating ? "true" : "false"); }});
    field_real("field.period_m", &LabFieldConfig::period_lab_m, 1e-6, 10.0);
    field_real("field.k_factor", &LabFieldConfig::K_factor, 0.0, 100.0);
    field_real("field.n_periods", &LabFieldConfig::n_periods, 2.0, 1e5);
    field_real("field.carrier_phase", &LabFieldConfig::carrier_phase, -7.0, 7.0);

    real("beam.n_electrons", &C::n_electrons, 0.0, 1e20);
    real("beam.bunching", &C::bunching, 0.0, 1.0);
    flag("beam.coherent", &C::coherent);

    real("trajectory.tol", &C::tol, 1e-12, 1e-3);
    count("trajectory.min_samples_per_cycle", &C::min_samples_per_cycle, 16, 1u << 20);
    real("trajectory.span_cycles", &C::span_cycles, 0.0, 1e6);

    real("spectrum.k_min", &C::k_min, 0.0, 100.0);
    real("spectrum.k_max", &C::k_max, 0.0, 100.0);
    count("spectrum.n_k", &C::n_k, 2, 1000000);
    real("spectrum.theta", &C::theta, 0.0, 3.141592653589793);
    real("spectrum.phi", &C::phi, -7.0, 7.0);
    real("spectrum.partner_theta", &C::partner_theta, 0.0, 3.141592653589793);
    real("spectrum.partner_phi", &C::partner_phi, -7.0, 7.0);

    count("map.n_energy", &C::map_n_energy, 16, 4096);
    count("map.n_theta", &C::map_n_theta, 16, 4096);
    real("map.e_max_ev", &C::map_e_max_eV, 1e-3, 1e12);
    real("map.theta_max", &C::map_theta_max, 1e-9, 3.0);
    count("map.n_azimuth", &C::map_n_azimuth, 8, 1024);
    count("map.energy_subsamples", &C::map_energy_subsamples, 1, 256);
    count("map.partner_polar", &C::map_partner_polar, 2, 512);
    count("map.partner_azimuth", &C::map_partner_azimuth, 2, 512);
    flag("map.normalize", &C::map_normalize);
    flag("map.images", &C::map_images);

    real("stats.squeezing", &C::squeezing, -1.0, 50.0);
    count("stats.n_max", &C::stats_n_max, 1, 100000);

    t.push_back({"output.dir",
                 [](C& c, const std::string& s, int line) {
                   if (s.empty()) throw ParseError("output.dir must not be empty", "output.dir", line);
                   c.output_dir = s;
                 },
                 [](const C& c) { return c.output_dir; }, false});
    count("run.workers", &C::workers, 1, 1024, false);
    return t;
  }();
  return table;
}

inline const KeySpec* find_key(const std::string& key) {
  for (const auto& k : key_table()) {
    if (k.key == key) return &k;
  }
  return nullptr;
}

inline std::string env_name(const std::string& key) {
  std::string out = kEnvPrefix;
  for (char ch : key) {
    if (ch == '.') out += "__";
    else out += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  return out;
}

}  // namespace detail

// Cross-key checks after all values are in.
inline void check_config(const ScenarioConfig& c) {
  if (!(c.k_max > c.k_min)) throw ParseError("spectrum.k_max must exceed spectrum.k_min", "spectrum.k_max");
  if (c.field.kind == FieldKind::undulator && !(c.field.gamma > 1.0)) {
    throw ParseError("undulator needs field.gamma > 1", "field.gamma");
  }
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig1-laser", "undulator-fel"};
  return names;
}

inline ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c;
  if (name == "fig1-laser") {
    c.name = name;
    c.field.kind = FieldKind::laser;
    c.field.gamma = 300.0;
    c.field.photon_energy_lab_eV = 2.5;
    c.field.intensity_lab_W_cm2 = 1.0e18;
    c.field.envelope_halfwidth_cycles = 100.0;
    c.field.envelope_shape = EnvelopeShape::gaussian;
    c.n_electrons = 1.0e9;
    c.bunching = 1.0;
    c.coherent = false;
    return c;
  }
  if (name == "undulator-fel") {
    c.name = name;
    c.field.kind = FieldKind::undulator;
    c.field.gamma = 4000.0;
    c.field.period_lab_m = 0.01;
    c.field.K_factor = 0.9;
    c.field.n_periods = 100.0;
    c.field.envelope_shape = EnvelopeShape::rectangular;
    c.n_electrons = 6.0e9;
    c.bunching = 0.01;
    c.coherent = true;
    return c;
  }
  throw ParseError("unknown preset '" + name + "'", "preset");
}

// Applies "key = value" text on top of base. The text must contain version.
inline ScenarioConfig parse_config_text(const std::string& text, ScenarioConfig base = {}) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool have_version = false;
  std::map<std::string, int> seen;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", s, line);
    const std::string key = detail::trim(s.substr(0, eq));
    const std::string value = detail::trim(s.substr(eq + 1));
    if (auto it = seen.find(key); it != seen.end()) {
      throw ParseError("duplicate key " + key + " (first on line " + std::to_string(it->second) + ")",
                       key, line);
    }
    seen[key] = line;
    if (key == "version") {
      const std::size_t v = detail::parse_count(key, value, line);
      if (v != static_cast<std::size_t>(kConfigVersion)) {
        throw ParseError("unsupported version " + value, key, line);
      }
      have_version = true;
      continue;
    }
    if (key == "scenario.preset") {
      if (seen.size() > 1 + (have_version ? 1u : 0u)) {
        throw ParseError("scenario.preset must precede other keys", key, line);
      }
      try {
        base = preset(value);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), key, line);
      }
      continue;
    }
    const auto* spec = detail::find_key(key);
    if (!spec) throw ParseError("unknown key " + key, key, line);
    spec->set(base, value, line);
  }
  if (!have_version) throw ParseError("missing version", "version", 0);
  return base;
}

// Environment overrides; getenv is injectable for tests.
inline void apply_env_overrides(ScenarioConfig& c,
                                const std::function<const char*(const char*)>& getenv_fn =
                                    [](const char* n) { return std::getenv(n); }) {
  for (const auto& spec : detail::key_table()) {
    const std::string name = detail::env_name(spec.key);
    if (const char* v = getenv_fn(name.c_str())) spec.set(c, detail::trim(v), 0);
  }
}

inline ScenarioConfig parse_config(const std::string& path, const std::string& preset_name = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file " + path, "config", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  ScenarioConfig base = preset_name.empty() ? ScenarioConfig{} : preset(preset_name);
  ScenarioConfig c = parse_config_text(ss.str(), base);
  apply_env_overrides(c);
  check_config(c);
  return c;
}

// All effective values, one "key = value" per line in table order.
inline std::string echo_config(const ScenarioConfig& c, bool hashed_only = false) {
  std::string out = "version = " + std::to_string(kConfigVersion) + "\n";
  for (const auto& spec : detail::key_table()) {
    if (hashed_only && !spec.in_hash) continue;
    out += spec.key + " = " + spec.get(c) + "\n";
  }
  return out;
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Hash of the physics-relevant settings (worker count and output dir excluded).
inline std::string config_hash(const ScenarioConfig& c) {
  return hex64(fnv1a64(echo_config(c, true)));
}

}  // namespace unruh
