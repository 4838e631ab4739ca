#pragma once

// Closed-form order-of-magnitude estimates. The O(wT/30) and O(wT/3) factors
// are taken literally (exact division); every value here is an
// order-of-magnitude estimate and reports say so.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "unruh/constants.hpp"
#include "unruh/error.hpp"
#include "unruh/fields.hpp"

namespace unruh {

// Above this a first-order perturbative probability is not trusted.
inline constexpr double kPerturbativeLimit = 0.1;

// Lower-bound estimate (alpha^2/(4 pi)^2) (E/E_S)^2 (wT/30).
inline double p_unruh(const RestFrameField& field, double omega_T) {
  if (!(omega_T > 0.0)) throw DomainError("p_unruh: omega_T must be > 0");
  const double a = PC::alpha_qed;
  const double r = field.E0 / schwinger_field();
  return a * a / (16.0 * std::numbers::pi * std::numbers::pi) * r * r * (omega_T / 30.0);
}

// (alpha/(2 pi)) a0^2 (wT/3).
inline double p_larmor(const RestFrameField& field, double omega_T) {
  if (!(omega_T > 0.0)) throw DomainError("p_larmor: omega_T must be > 0");
  return PC::alpha_qed / (2.0 * std::numbers::pi) * field.a0 * field.a0 * (omega_T / 3.0);
}

// (alpha/(80 pi)) (omega/m)^2, independent of the field strength.
inline double unruh_larmor_ratio(double omega_eV) {
  if (!(omega_eV >= 0.0)) throw DomainError("unruh_larmor_ratio: omega must be >= 0");
  const double x = omega_eV / PC::electron_mass_eV;
  return PC::alpha_qed / (80.0 * std::numbers::pi) * x * x;
}

struct PairYield {
  double pairs = 0.0;
  bool capped = false;  // coherent N^2 scaling ran past one pair per shot
};

// Incoherent: N p. Coherent: (b N)^2 p, capped at 1.
inline PairYield pair_yield(double p_single, double n_electrons, double bunching_fraction,
                            bool coherent) {
  if (!(bunching_fraction >= 0.0 && bunching_fraction <= 1.0)) {
    throw DomainError("pair_yield: bunching fraction must lie in [0, 1]");
  }
  if (!coherent) return {n_electrons * p_single, false};
  const double n = bunching_fraction * n_electrons;
  const double y = n * n * p_single;
  if (y > 1.0) return {1.0, true};
  return {y, false};
}

// Coherent electrons needed for exponential growth, (1/alpha) (E_S/E0).
inline double threshold_electrons(double E0, double E_S) {
  if (!(E0 > 0.0)) throw DomainError("threshold_electrons: E0 must be > 0");
  return E_S / (PC::alpha_qed * E0);
}

struct ScenarioEstimate {
  std::string scenario;
  double omega_eV = 0.0;
  double omega_T = 0.0;
  double p_unruh_bound = 0.0;
  double p_larmor = 0.0;
  double ratio = 0.0;           // p_unruh / p_larmor from the two estimates
  double ratio_formula = 0.0;   // alpha/(80 pi) (omega/m)^2
  double pairs_per_shot = 0.0;
  bool yield_capped = false;
  double threshold_electrons = 0.0;
  bool unruh_unreliable = false;
  bool larmor_unreliable = false;

  std::string flags() const {
    std::string f;
    auto add = [&](const char* s) {
      if (!f.empty()) f += ';';
      f += s;
    };
    if (unruh_unreliable) add("unruh_perturbative_estimate_unreliable");
    if (larmor_unreliable) add("larmor_perturbative_estimate_unreliable");
    if (yield_capped) add("coherent_yield_capped");
    if (f.empty()) f = "none";
    return f;
  }
};

inline ScenarioEstimate estimate_scenario(std::string name, const RestFrameField& field,
                                          double n_electrons, double bunching_fraction,
                                          bool coherent) {
  ScenarioEstimate s;
  s.scenario = std::move(name);
  s.omega_eV = field.omega;
  s.omega_T = field.effective_omega_T();
  s.p_unruh_bound = p_unruh(field, s.omega_T);
  s.p_larmor = p_larmor(field, s.omega_T);
  s.ratio = s.p_larmor > 0.0 ? s.p_unruh_bound / s.p_larmor : 0.0;
  s.ratio_formula = unruh_larmor_ratio(field.omega);
  const auto y = pair_yield(s.p_unruh_bound, n_electrons, bunching_fraction, coherent);
  s.pairs_per_shot = y.pairs;
  s.yield_capped = y.capped;
  s.threshold_electrons = field.E0 > 0.0 ? threshold_electrons(field.E0, schwinger_field()) : 0.0;
  s.unruh_unreliable = s.p_unruh_bound > kPerturbativeLimit;
  s.larmor_unreliable = s.p_larmor > kPerturbativeLimit;
  return s;
}

inline void write_estimate_report(std::ostream& os, const ScenarioEstimate& s) {
  char buf[160];
  auto line = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%-22s %.6e\n", key, v);
    os << buf;
  };
  os << "# order-of-magnitude estimates\n";
  std::snprintf(buf, sizeof buf, "%-22s %s\n", "scenario", s.scenario.c_str());
  os << buf;
  line("omega_rest_eV", s.omega_eV);
  line("omega_T", s.omega_T);
  line("p_unruh", s.p_unruh_bound);
  line("p_larmor", s.p_larmor);
  line("ratio", s.ratio);
  line("ratio_formula", s.ratio_formula);
  line("pairs_per_shot", s.pairs_per_shot);
  line("threshold_electrons", s.threshold_electrons);
  std::snprintf(buf, sizeof buf, "%-22s %s\n", "flags", s.flags().c_str());
  os << buf;
}

inline void write_estimate_csv(std::ostream& os, const ScenarioEstimate& s) {
  os << "scenario,p_unruh,p_larmor,ratio,yield,flags\n";
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%s\n", s.scenario.c_str(),
                s.p_unruh_bound, s.p_larmor, s.ratio, s.pairs_per_shot, s.flags().c_str());
  os << buf;
}

}  // namespace unruh
