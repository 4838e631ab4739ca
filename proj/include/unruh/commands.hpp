#pragma once

// Command dispatch for the CLI: each command computes its artifacts in
// memory, writes them under the output directory with a provenance header,
// and finishes with manifest.json. Files written by a failed run are removed.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "unruh/amplitudes.hpp"
#include "unruh/config.hpp"
#include "unruh/estimates.hpp"
#include "unruh/fields.hpp"
#include "unruh/labframe.hpp"
#include "unruh/quantum_optics.hpp"
#include "unruh/trajectory.hpp"

namespace unruh {

enum ExitCode : int { kExitOk = 0, kExitCompute = 1, kExitInvalid = 2 };

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate", "trajectory", "larmor-spectrum",
                                              "pair-spectrum", "map", "estimate", "stats"};
  return names;
}

struct Artifact {
  std::string name;
  std::string content;
};

namespace detail {

inline std::string provenance(const std::string& command, const ScenarioConfig& c,
                              const char* lead = "# ") {
  std::string s;
  s += std::string(lead) + "tool: unruh_sim " + kToolVersion + "\n";
  s += std::string(lead) + "command: " + command + "\n";
  s += std::string(lead) + "scenario: " + c.name + "\n";
  s += std::string(lead) + "config_hash: " + config_hash(c) + "\n";
  return s;
}

inline double half_span(const RestFrameField& field, const ScenarioConfig& c) {
  return c.span_cycles > 0.0 ? c.span_cycles * field.period() : symmetric_half_span(field);
}

// Numeric trajectory fine enough for wave numbers up to k_need.
inline Trajectory trajectory_for(const RestFrameField& field, const ScenarioConfig& c,
                                 double k_need) {
  TrajectoryOptions opt;
  opt.tol = c.tol;
  opt.min_samples_per_cycle =
      std::max(c.min_samples_per_cycle, samples_per_cycle_for(k_need, field.omega));
  const double L = half_span(field, c);
  return integrate_trajectory(field, -L, L, opt);
}

inline MapGrid map_grid(const ScenarioConfig& c) {
  MapGrid g;
  g.n_energy = c.map_n_energy;
  g.n_theta = c.map_n_theta;
  g.e_max_eV = c.map_e_max_eV;
  g.theta_max = c.map_theta_max;
  g.n_azimuth = c.map_n_azimuth;
  g.energy_subsamples = c.map_energy_subsamples;
  return g;
}

inline std::string kv_line(const char* key, double v) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-22s %.6e\n", key, v);
  return buf;
}

inline std::string kv_line(const char* key, const std::string& v) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-22s %s\n", key, v.c_str());
  return buf;
}

inline std::vector<Artifact> cmd_validate(const ScenarioConfig& c, const RestFrameField& field,
                                          bool& violated) {
  const ValidityReport rep = validate(field);
  std::string csv = provenance("validate", c) + "item,value,flag\n";
  char buf[200];
  for (const auto& it : rep.items) {
    std::snprintf(buf, sizeof buf, "%s,%.17g,%s\n", it.name.c_str(), it.value,
                  validity_name(it.flag));
    csv += buf;
  }
  csv += std::string("relativistic_saturation,") + (rep.relativistic_saturation ? "1" : "0") + "," +
         (rep.relativistic_saturation ? "violated" : "ok") + "\n";
  violated = rep.worst() == Validity::violated || rep.relativistic_saturation;
  return {{"validity.csv", csv}};
}

inline std::vector<Artifact> cmd_trajectory(const ScenarioConfig& c, const RestFrameField& field) {
  const Trajectory tr = trajectory_for(field, c, field.omega);
  std::ostringstream os;
  os << provenance("trajectory", c);
  write_trajectory_csv(os, tr);
  return {{"trajectory.csv", os.str()}};
}

inline std::vector<Artifact> cmd_larmor_spectrum(const ScenarioConfig& c,
                                                 const RestFrameField& field) {
  const double w = field.omega;
  const Trajectory tr = trajectory_for(field, c, c.k_max * w);
  const Vec3 n = rest_direction(c.theta, c.phi);
  std::string csv = provenance("larmor-spectrum", c) + "k,k_over_omega,sum_abs_alpha_sq\n";
  char buf[200];
  for (std::size_t i = 0; i < c.n_k; ++i) {
    const double x = c.k_min + (c.k_max - c.k_min) * static_cast<double>(i) /
                                   static_cast<double>(c.n_k - 1);
    if (!(x > 0.0)) continue;
    const double k = x * w;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", k, x,
                  larmor_polarization_sum(tr, n * k));
    csv += buf;
  }
  return {{"larmor_spectrum.csv", csv}};
}

inline std::vector<Artifact> cmd_pair_spectrum(const ScenarioConfig& c,
                                               const RestFrameField& field) {
  const double w = field.omega;
  const Trajectory tr = trajectory_for(field, c, c.k_max * w);
  const Vec3 n1 = rest_direction(c.theta, c.phi);
  const Vec3 n2 = rest_direction(c.partner_theta, c.partner_phi);
  std::vector<PairSpectrumRow> rows;
  for (std::size_t i = 0; i < c.n_k; ++i) {
    const double x = c.k_min + (c.k_max - c.k_min) * static_cast<double>(i) /
                                   static_cast<double>(c.n_k - 1);
    if (!(x > 0.0)) continue;
    const double k = 0.5 * x * w;
    const PhotonMode a = make_mode(n1 * k, 1);
    const PhotonMode b = make_mode(n2 * k, 1);
    const PairAmplitude A = two_photon_amplitude(tr, a, b);
    rows.push_back({k, k, n1.z, n2.z, std::abs(A.F), A.value});
  }
  std::ostringstream os;
  os << provenance("pair-spectrum", c);
  write_pair_spectrum_csv(os, rows);
  return {{"pair_spectrum.csv", os.str()}};
}

inline std::vector<Artifact> cmd_map(const ScenarioConfig& c, const RestFrameField& field,
                                     std::ostream& log) {
  const double gamma = c.field.gamma;
  const MapGrid grid = map_grid(c);
  grid.check();
  const double k_need = std::max(max_rest_wavenumber(grid, gamma), field.omega);
  const Trajectory tr = trajectory_for(field, c, k_need);
  MapOptions mo;
  mo.workers = c.workers;
  mo.scenario = c.name;
  PhaseSpaceMap lm = larmor_map(tr, field, gamma, grid, mo);
  PhaseSpaceMap um =
      unruh_map(tr, field, gamma, grid, {c.map_partner_polar, c.map_partner_azimuth}, mo);
  if (c.map_normalize) {
    const double wT = field.effective_omega_T();
    lm = normalized_to_total(lm, p_larmor(field, wT));
    um = normalized_to_total(um, p_unruh(field, wT));
  }
  const std::string prov = provenance("map", c);
  std::vector<Artifact> out;
  for (const PhaseSpaceMap* m : {&lm, &um}) {
    const std::string base = std::string("map_") + channel_name(m->channel);
    for (bool plane : {false, true}) {
      const std::string stem = base + (plane ? "_plane" : "");
      std::ostringstream os;
      os << prov;
      write_map_csv(os, *m, plane);
      out.push_back({stem + ".csv", os.str()});
      if (c.map_images) {
        std::ostringstream img;
        write_map_pgm(img, *m, plane, provenance("map", c, ""));
        out.push_back({stem + ".pgm", img.str()});
      }
    }
  }
  Aperture ap{blind_spot_lab_angle(gamma), 0.0, 0.5 / gamma};
  EnergyWindow win{0.0, grid.e_max_eV};
  const DominanceSummary dom = dominance_report(lm, um, ap, win);
  std::ostringstream os;
  os << prov;
  os << kv_line("cone_theta", ap.theta_center) << kv_line("cone_half_angle", ap.half_angle);
  write_dominance_report(os, dom);
  out.push_back({"dominance.txt", os.str()});
  log << "map: " << tr.size() << " trajectory samples, " << um.meta.flagged_cells
      << " unruh sub-samples beyond resonance\n";
  return out;
}

inline std::vector<Artifact> cmd_estimate(const ScenarioConfig& c, const RestFrameField& field) {
  const ScenarioEstimate est =
      estimate_scenario(c.name, field, c.n_electrons, c.bunching, c.coherent);
  std::ostringstream txt, csv;
  txt << provenance("estimate", c);
  write_estimate_report(txt, est);
  csv << provenance("estimate", c);
  write_estimate_csv(csv, est);
  return {{"estimate.txt", txt.str()}, {"estimate.csv", csv.str()}};
}

inline std::vector<Artifact> cmd_stats(const ScenarioConfig& c, const RestFrameField& field) {
  TwoModeSqueezedState st;
  if (c.squeezing >= 0.0) {
    st.xi = c.squeezing;
  } else {
    const double n_coh = c.coherent ? c.bunching * c.n_electrons : 1.0;
    st = squeezing_from_amplitude(n_coh, per_electron_mode_amplitude(field));
  }
  const ReducedDistribution d = reduced_single_mode_distribution(st, c.stats_n_max);
  std::ostringstream csv;
  csv << provenance("stats", c);
  write_distribution_csv(csv, d);
  std::string txt = provenance("stats", c);
  txt += kv_line("xi_source", c.squeezing >= 0.0 ? "configured" : "threshold_scaling_estimate");
  txt += kv_line("abs_xi", std::abs(st.xi));
  txt += kv_line("mean_n", squeezed_mean_n(st));
  txt += kv_line("effective_T_eV", effective_temperature(st, field.omega));
  txt += kv_line("truncation_deficit", d.truncation_deficit);
  txt += kv_line("exponential_regime", exponential_regime(st) ? "yes" : "no");
  return {{"distribution.csv", csv.str()}, {"stats.txt", txt}};
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + p.string());
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error("write failed for " + p.string());
}

}  // namespace detail

// Runs one command. Returns 0 on success, 2 on invalid input (or a violated
// regime check for "validate"), 1 on computational failure.
inline int run_command(const std::string& cmd, const ScenarioConfig& c, std::ostream& log,
                       std::ostream& err) {
  namespace fs = std::filesystem;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<fs::path> written;
  const fs::path dir = c.output_dir;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& p : written) {
      if (fs::is_regular_file(p, ec)) fs::remove(p, ec);
    }
  };
  int status = kExitOk;
  try {
    check_config(c);
    const RestFrameField field = rest_frame_equivalent(c.field);
    std::vector<Artifact> arts;
    if (cmd == "validate") {
      bool violated = false;
      arts = detail::cmd_validate(c, field, violated);
      if (violated) status = kExitInvalid;
    } else if (cmd == "trajectory") {
      arts = detail::cmd_trajectory(c, field);
    } else if (cmd == "larmor-spectrum") {
      arts = detail::cmd_larmor_spectrum(c, field);
    } else if (cmd == "pair-spectrum") {
      arts = detail::cmd_pair_spectrum(c, field);
    } else if (cmd == "map") {
      arts = detail::cmd_map(c, field, log);
    } else if (cmd == "estimate") {
      arts = detail::cmd_estimate(c, field);
    } else if (cmd == "stats") {
      arts = detail::cmd_stats(c, field);
    } else {
      err << "unknown command '" << cmd << "'\n";
      return kExitInvalid;
    }

    fs::create_directories(dir);
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& a : arts) {
      const fs::path p = dir / a.name;
      written.push_back(p);
      detail::write_file(p, a.content);
      files.push_back({{"path", a.name},
                       {"bytes", a.content.size()},
                       {"fnv1a64", hex64(fnv1a64(a.content))}});
      log << "wrote " << p.string() << '\n';
    }
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    std::istringstream echo(echo_config(c));
    for (std::string line; std::getline(echo, line);) {
      const auto eq = line.find(" = ");
      cfg[line.substr(0, eq)] = line.substr(eq + 3);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    nlohmann::ordered_json man = {{"tool", "unruh_sim"},
                                  {"version", kToolVersion},
                                  {"command", cmd},
                                  {"scenario", c.name},
                                  {"config_hash", config_hash(c)},
                                  {"workers", c.workers},
                                  {"exit_status", status},
                                  {"wall_time_s", wall},
                                  {"config", cfg},
                                  {"files", files}};
    const fs::path mp = dir / "manifest.json";
    written.push_back(mp);
    detail::write_file(mp, man.dump(2) + "\n");
    return status;
  } catch (const ParseError& e) {
    err << "config error";
    if (!e.key().empty()) err << " [" << e.key() << "]";
    err << ": " << e.what() << '\n';
    cleanup();
    return kExitInvalid;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    cleanup();
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    cleanup();
    return kExitCompute;
  }
}

}  // namespace unruh
