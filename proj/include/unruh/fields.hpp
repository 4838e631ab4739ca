#pragma once

// Driving-field description: lab-frame laser or undulator, its equivalent
// plane wave in the electron rest frame, and the regime checks.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "unruh/constants.hpp"
#include "unruh/error.hpp"

namespace unruh {

enum class FieldKind { laser, undulator };
enum class EnvelopeShape { gaussian, rectangular };

struct LabFieldConfig {
  FieldKind kind = FieldKind::laser;
  // laser
  double photon_energy_lab_eV = 2.5;
  double intensity_lab_W_cm2 = 1.0e18;
  double envelope_halfwidth_cycles = 100.0;
  bool counter_propagating = true;
  // undulator
  double period_lab_m = 0.01;
  double K_factor = 0.9;
  double n_periods = 100.0;
  // shared
  double gamma = 300.0;
  EnvelopeShape envelope_shape = EnvelopeShape::gaussian;
  double carrier_phase = 0.0;  // 0 puts the cos maximum at the envelope peak
};

// Plane wave in the average rest frame: E = z E0 env(t+x) cos(omega (t+x) + phase),
// propagating along -x.
struct RestFrameField {
  double E0 = 0.0;           // eV^2
  double omega = 1.0;        // eV
  double T_halfwidth = 0.0;  // 1/eV
  EnvelopeShape envelope_shape = EnvelopeShape::gaussian;
  double carrier_phase = 0.0;
  double a0 = 0.0;  // q E0 / (m omega), kept in sync by make()

  static RestFrameField make(double E0, double omega, double T_halfwidth,
                             EnvelopeShape shape, double carrier_phase = 0.0) {
    if (!(omega > 0.0)) throw DomainError("RestFrameField: omega must be > 0");
    RestFrameField f;
    f.E0 = E0;
    f.omega = omega;
    f.T_halfwidth = T_halfwidth;
    f.envelope_shape = shape;
    f.carrier_phase = carrier_phase;
    f.a0 = PC::coupling_q() * E0 / (PC::electron_mass_eV * omega);
    return f;
  }

  // Same pulse shape, field scaled to the given normalized amplitude.
  static RestFrameField from_a0(double a0, double omega, double halfwidth_cycles,
                                EnvelopeShape shape, double carrier_phase = 0.0) {
    const double E0 = a0 * PC::electron_mass_eV * omega / PC::coupling_q();
    return make(E0, omega, halfwidth_cycles * 2.0 * std::numbers::pi / omega, shape,
                carrier_phase);
  }

  double period() const { return 2.0 * std::numbers::pi / omega; }
  double halfwidth_cycles() const { return T_halfwidth / period(); }
  // Quiver amplitude q E0 / (m omega^2).
  double quiver_amplitude() const { return a0 / omega; }

  // Envelope as a function of the wave phase variable s = t + x.
  double envelope(double s) const {
    if (envelope_shape == EnvelopeShape::rectangular) {
      return std::abs(s) <= T_halfwidth ? 1.0 : 0.0;
    }
    if (T_halfwidth <= 0.0) return 0.0;
    const double u = s / T_halfwidth;
    return std::exp(-0.5 * u * u);
  }

  // E_z at phase variable s.
  double Ez(double s) const {
    return E0 * envelope(s) * std::cos(omega * s + carrier_phase);
  }

  // omega*T used by the closed-form estimates: total duration for a
  // rectangular window, the 1/e field half-width for a Gaussian one.
  double effective_omega_T() const {
    return envelope_shape == EnvelopeShape::rectangular ? 2.0 * omega * T_halfwidth
                                                        : omega * T_halfwidth;
  }
};

// beta = sqrt(1 - 1/gamma^2) without cancellation at large gamma.
inline double beta_from_gamma(double gamma) {
  if (!(gamma >= 1.0)) throw DomainError("gamma must be >= 1");
  if (gamma > 1.0e4) {
    const double g2 = 1.0 / (gamma * gamma);
    return 1.0 - 0.5 * g2 - 0.125 * g2 * g2;
  }
  return std::sqrt((gamma - 1.0) * (gamma + 1.0)) / gamma;
}

// 1 - beta, accurate for large gamma.
inline double one_minus_beta(double gamma) {
  const double beta = beta_from_gamma(gamma);
  return 1.0 / (gamma * gamma * (1.0 + beta));
}

// Doppler factor seen by the electron.
inline double doppler_factor(double gamma, bool counter_propagating) {
  const double beta = beta_from_gamma(gamma);
  return counter_propagating ? gamma * (1.0 + beta) : gamma * one_minus_beta(gamma);
}

inline RestFrameField rest_frame_equivalent(const LabFieldConfig& cfg) {
  if (!(cfg.gamma >= 1.0)) throw DomainError("rest_frame_equivalent: gamma must be >= 1");
  const double beta = beta_from_gamma(cfg.gamma);
  if (cfg.kind == FieldKind::laser) {
    if (!(cfg.photon_energy_lab_eV > 0.0)) {
      throw DomainError("rest_frame_equivalent: photon energy must be > 0");
    }
    if (!(cfg.intensity_lab_W_cm2 >= 0.0)) {
      throw DomainError("rest_frame_equivalent: intensity must be >= 0");
    }
    const double D = doppler_factor(cfg.gamma, cfg.counter_propagating);
    const double omega = D * cfg.photon_energy_lab_eV;
    const double E_lab = convert(convert(cfg.intensity_lab_W_cm2, Unit::W_per_cm2, Unit::V_per_m),
                                 Unit::V_per_m, Unit::eV2);
    const double T = cfg.envelope_halfwidth_cycles * 2.0 * std::numbers::pi / omega;
    return RestFrameField::make(D * E_lab, omega, T, cfg.envelope_shape, cfg.carrier_phase);
  }
  // Undulator: static lab field seen as a counter-propagating wave with a0 = K.
  if (!(cfg.period_lab_m > 0.0)) throw DomainError("rest_frame_equivalent: period must be > 0");
  const double k_u = 2.0 * std::numbers::pi * PC::hbar_c_eV_m / cfg.period_lab_m;
  const double omega = cfg.gamma * beta * k_u;
  if (!(omega > 0.0)) throw DomainError("rest_frame_equivalent: undulator needs gamma > 1");
  const double cycles = cfg.envelope_shape == EnvelopeShape::rectangular
                            ? 0.5 * cfg.n_periods
                            : cfg.envelope_halfwidth_cycles;
  return RestFrameField::from_a0(cfg.K_factor, omega, cycles, cfg.envelope_shape,
                                 cfg.carrier_phase);
}

enum class Validity { ok, marginal, violated };

inline const char* validity_name(Validity v) {
  switch (v) {
    case Validity::ok: return "ok";
    case Validity::marginal: return "marginal";
    case Validity::violated: return "violated";
  }
  return "?";
}

inline Validity classify(double ratio) {
  const double r = std::abs(ratio);
  if (r < 0.1) return Validity::ok;
  if (r < 1.0) return Validity::marginal;
  return Validity::violated;
}

struct ValidityItem {
  std::string name;
  double value = 0.0;
  Validity flag = Validity::ok;
};

struct ValidityReport {
  std::vector<ValidityItem> items;
  // q E >= omega m: the pair probability stops growing with E.
  bool relativistic_saturation = false;

  const ValidityItem& at(const std::string& name) const {
    for (const auto& it : items) {
      if (it.name == name) return it;
    }
    throw DomainError("ValidityReport: no item " + name);
  }

  Validity worst() const {
    Validity w = Validity::ok;
    for (const auto& it : items) {
      if (static_cast<int>(it.flag) > static_cast<int>(w)) w = it.flag;
    }
    return w;
  }
};

inline ValidityReport validate(const RestFrameField& field) {
  ValidityReport rep;
  const double a0 = field.a0;
  auto add = [&](std::string name, double value) {
    rep.items.push_back({std::move(name), value, classify(value)});
  };
  add("a0", a0);
  add("a0_squared", a0 * a0);
  add("omega_over_m", field.omega / PC::electron_mass_eV);
  // mu_B * B / omega with B = E/c in tesla.
  const double E_si = convert(field.E0, Unit::eV2, Unit::V_per_m);
  const double B_tesla = E_si / PC::c_m_s;
  add("spin_ratio", PC::bohr_magneton_eV_T * B_tesla / field.omega);
  add("v_max_squared", a0 * a0);
  rep.relativistic_saturation = std::abs(a0) >= 1.0;
  return rep;
}

}  // namespace unruh
