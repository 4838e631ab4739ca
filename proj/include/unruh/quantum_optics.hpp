#pragma once

// Photon statistics: coherent state (classical channel) and two-mode squeezed
// vacuum (pair channel), including the thermal single-mode marginal.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <ostream>
#include <vector>

#include "unruh/constants.hpp"
#include "unruh/error.hpp"
#include "unruh/fields.hpp"

namespace unruh {

struct CoherentState {
  std::complex<double> alpha;
};

struct TwoModeSqueezedState {
  std::complex<double> xi;
};

inline double coherent_mean_n(const CoherentState& s) { return std::norm(s.alpha); }

inline double squeezed_mean_n(const TwoModeSqueezedState& s) {
  const double sh = std::sinh(std::abs(s.xi));
  return sh * sh;
}

// Beyond |xi| ~ 1 the occupation grows exponentially instead of quadratically.
inline bool exponential_regime(const TwoModeSqueezedState& s) { return std::abs(s.xi) >= 1.0; }

struct ReducedDistribution {
  std::vector<double> p;  // p_0 .. p_nmax
  double truncation_deficit = 0.0;
};

// Tr_2 |xi><xi| is diagonal with p_n = tanh^{2n}|xi| / cosh^2|xi|.
inline ReducedDistribution reduced_single_mode_distribution(const TwoModeSqueezedState& s,
                                                            std::size_t n_max) {
  const double r = std::abs(s.xi);
  const double t2 = std::tanh(r) * std::tanh(r);
  const double c2 = std::cosh(r) * std::cosh(r);
  ReducedDistribution d;
  d.p.resize(n_max + 1);
  double pn = 1.0 / c2;
  double sum = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    d.p[n] = pn;
    sum += pn;
    pn *= t2;
  }
  d.truncation_deficit = 1.0 - sum;
  return d;
}

// Canonical-ensemble temperature of a mode of energy omega, from
// p_1/p_0 = exp(-omega/T). Infinite occupation ratio 0 gives T = 0.
inline double effective_temperature(const TwoModeSqueezedState& s, double mode_energy_eV) {
  const double t2 = std::tanh(std::abs(s.xi)) * std::tanh(std::abs(s.xi));
  if (t2 <= 0.0) return 0.0;
  return mode_energy_eV / (-std::log(t2));
}

// Heuristic per-electron mode amplitude alpha E0 / E_S (geometry ignored);
// N coherent electrons give |xi| = N alpha E0 / E_S, i.e. |xi| = 1 at the
// threshold_electrons() count.
inline double per_electron_mode_amplitude(const RestFrameField& field) {
  return PC::alpha_qed * field.E0 / schwinger_field();
}

inline TwoModeSqueezedState squeezing_from_amplitude(double n_coherent, double mode_amplitude) {
  return {std::complex<double>(n_coherent * mode_amplitude, 0.0)};
}

inline void write_distribution_csv(std::ostream& os, const ReducedDistribution& d) {
  os << "n,p_n\n";
  char buf[96];
  for (std::size_t n = 0; n < d.p.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", n, d.p[n]);
    os << buf;
  }
}

}  // namespace unruh
