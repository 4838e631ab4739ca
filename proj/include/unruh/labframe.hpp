#pragma once

// Lab-frame photon kinematics and the energy-angle phase-space maps.
//
// Geometry: the electron beam moves along +x in the lab; the rest-frame wave
// propagates along -x and is polarized along z. Polar angles are measured from
// +x, azimuths from +z towards +y, so azimuth 0 is the polarization plane.
//
// Map values are photon densities d^2N/(dE dOmega) in the lab, averaged over
// the azimuth nodes (per-azimuth slices are kept as well). Rest-frame mode
// densities are converted with d^3k/k invariant, i.e. d^2N/(dE dOmega) =
// E k_rest rho_rest(k). Absolute scales follow the V = 1 convention and the
// narrow-band pair treatment; only channel-internal structure and
// renormalized comparisons are meaningful.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "unruh/amplitudes.hpp"
#include "unruh/constants.hpp"
#include "unruh/error.hpp"
#include "unruh/fields.hpp"
#include "unruh/parallel.hpp"
#include "unruh/resonant_table.hpp"
#include "unruh/trajectory.hpp"
#include "unruh/vec3.hpp"

namespace unruh {

struct LabPhoton {
  double energy;  // eV
  double theta;
  double phi;
};

struct RestPhoton {
  double omega;  // eV
  double theta;
  double phi;
};

// Rest frame -> lab for a boost gamma along +x.
inline LabPhoton boost_photon(double omega_rest, double theta_rest, double phi, double gamma) {
  if (!(theta_rest >= 0.0 && theta_rest <= std::numbers::pi)) {
    throw DomainError("boost_photon: theta_rest outside [0, pi]");
  }
  const double beta = beta_from_gamma(gamma);
  const double omb = one_minus_beta(gamma);
  const double c2 = std::cos(0.5 * theta_rest);
  const double one_plus_bcos = omb + 2.0 * beta * c2 * c2;  // 1 + beta cos(theta)
  const double cos_plus_beta = 2.0 * c2 * c2 - omb;          // cos(theta) + beta
  const double theta_lab = std::atan2(std::sin(theta_rest), gamma * cos_plus_beta);
  return {gamma * one_plus_bcos * omega_rest, theta_lab, phi};
}

inline RestPhoton unboost_photon(double energy_lab, double theta_lab, double phi, double gamma) {
  const double beta = beta_from_gamma(gamma);
  const double omb = one_minus_beta(gamma);
  const double s2 = std::sin(0.5 * theta_lab);
  const double one_minus_bcos = omb + 2.0 * beta * s2 * s2;  // 1 - beta cos(theta)
  const double cos_minus_beta = omb - 2.0 * s2 * s2;         // cos(theta) - beta
  const double theta_rest = std::atan2(std::sin(theta_lab), gamma * cos_minus_beta);
  return {gamma * one_minus_bcos * energy_lab, theta_rest, phi};
}

// Lab polar angle of the rest-frame polarization axis (the Larmor blind spot).
inline double blind_spot_lab_angle(double gamma) {
  return boost_photon(1.0, 0.5 * std::numbers::pi, 0.0, gamma).theta;
}

inline Vec3 rest_direction(double theta, double phi) {
  const double s = std::sin(theta);
  return {std::cos(theta), s * std::sin(phi), s * std::cos(phi)};
}

enum class Channel { larmor, unruh };

inline const char* channel_name(Channel c) { return c == Channel::larmor ? "larmor" : "unruh"; }

struct MapGrid {
  std::size_t n_energy = 128;
  std::size_t n_theta = 128;
  double e_max_eV = 2.0e6;
  double theta_max = 0.01;
  std::size_t n_azimuth = 8;
  // Midpoint sub-samples per energy cell; values are cell averages.
  std::size_t energy_subsamples = 1;

  void check() const {
    if (n_energy < 16 || n_theta < 16) throw DomainError("MapGrid: need at least 16x16 cells");
    if (n_azimuth < 8) throw DomainError("MapGrid: need at least 8 azimuth nodes");
    if (energy_subsamples < 1) throw DomainError("MapGrid: energy_subsamples must be >= 1");
    if (!(e_max_eV > 0.0) || !(theta_max > 0.0) || theta_max >= std::numbers::pi) {
      throw DomainError("MapGrid: bad axis range");
    }
  }

  double energy_step() const { return e_max_eV / static_cast<double>(n_energy); }
  double energy(std::size_t m) const { return static_cast<double>(m + 1) * energy_step(); }
  double theta(std::size_t i) const {
    return theta_max * static_cast<double>(i) / static_cast<double>(n_theta - 1);
  }
  double phi(std::size_t a) const {
    return 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(n_azimuth);
  }
  // Lab energy of sub-sample s inside cell m.
  double sub_energy(std::size_t m, std::size_t s) const {
    const double dE = energy_step();
    return energy(m) - 0.5 * dE +
           (static_cast<double>(s) + 0.5) * dE / static_cast<double>(energy_subsamples);
  }
};

// Largest rest-frame wave number a map on this grid needs to evaluate.
inline double max_rest_wavenumber(const MapGrid& grid, double gamma) {
  const double e_top = grid.sub_energy(grid.n_energy - 1, grid.energy_subsamples - 1);
  return unboost_photon(e_top, grid.theta_max, 0.0, gamma).omega;
}

struct PartnerQuadrature {
  std::size_t n_polar = 32;
  std::size_t n_azimuth = 16;
};

struct MapMetadata {
  std::string scenario;
  double gamma = 1.0;
  double omega = 0.0;
  std::size_t trajectory_samples = 0;
  double trajectory_dt = 0.0;
  std::size_t partner_polar = 0;
  std::size_t partner_azimuth = 0;
  double bandwidth_factor = 0.0;  // unruh: int dK |F|^2 / |F(omega)|^2
  std::size_t flagged_cells = 0;  // unruh: sub-samples with k_rest >= omega
  double display_min = 0.0;
  double display_max = 0.0;
  double normalization = 1.0;  // factor applied to the raw values
};

struct PhaseSpaceMap {
  Channel channel = Channel::larmor;
  MapGrid grid;
  std::vector<double> energy_axis;
  std::vector<double> theta_axis;
  std::vector<double> phi_axis;
  std::vector<double> values;  // azimuth average, [m * n_theta + i]
  std::vector<double> slices;  // [(a * n_energy + m) * n_theta + i]
  MapMetadata meta;

  double value(std::size_t m, std::size_t i) const { return values[m * grid.n_theta + i]; }
  double slice(std::size_t a, std::size_t m, std::size_t i) const {
    return slices[(a * grid.n_energy + m) * grid.n_theta + i];
  }
  // Polarization-plane section: average of the azimuth nodes at 0 and pi.
  double plane_value(std::size_t m, std::size_t i) const {
    const std::size_t half = grid.n_azimuth / 2;
    if (grid.n_azimuth % 2 == 0) return 0.5 * (slice(0, m, i) + slice(half, m, i));
    return slice(0, m, i);
  }
};

namespace detail {

inline double theta_weight(const MapGrid& g, std::size_t i) {
  const double dth = g.theta_max / static_cast<double>(g.n_theta - 1);
  return (i == 0 || i + 1 == g.n_theta) ? 0.5 * dth : dth;
}

// dE dOmega measure of one (azimuth node, energy cell, theta node) sample.
inline double cell_measure(const MapGrid& g, std::size_t m, std::size_t i) {
  (void)m;
  return g.energy_step() * theta_weight(g, i) * std::sin(g.theta(i)) * 2.0 * std::numbers::pi /
         static_cast<double>(g.n_azimuth);
}

inline PhaseSpaceMap empty_map(Channel ch, const MapGrid& grid) {
  PhaseSpaceMap map;
  map.channel = ch;
  map.grid = grid;
  for (std::size_t m = 0; m < grid.n_energy; ++m) map.energy_axis.push_back(grid.energy(m));
  for (std::size_t i = 0; i < grid.n_theta; ++i) map.theta_axis.push_back(grid.theta(i));
  for (std::size_t a = 0; a < grid.n_azimuth; ++a) map.phi_axis.push_back(grid.phi(a));
  map.values.assign(grid.n_energy * grid.n_theta, 0.0);
  map.slices.assign(grid.n_azimuth * grid.n_energy * grid.n_theta, 0.0);
  return map;
}

inline void finish_map(PhaseSpaceMap& map) {
  const auto& g = map.grid;
  for (std::size_t m = 0; m < g.n_energy; ++m) {
    for (std::size_t i = 0; i < g.n_theta; ++i) {
      double s = 0.0;
      for (std::size_t a = 0; a < g.n_azimuth; ++a) s += map.slice(a, m, i);
      map.values[m * g.n_theta + i] = s / static_cast<double>(g.n_azimuth);
    }
  }
  double vmax = 0.0, vmin_pos = 0.0;
  for (double v : map.values) {
    vmax = std::max(vmax, v);
    if (v > 0.0 && (vmin_pos == 0.0 || v < vmin_pos)) vmin_pos = v;
  }
  map.meta.display_max = vmax;
  map.meta.display_min = std::max(vmin_pos, vmax * 1e-12);
}

// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
inline void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const auto nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        const auto jd = static_cast<double>(j);
        p0 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p2) / jd;
      }
      dp = nd * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace detail

inline double integrated_total(const PhaseSpaceMap& map) {
  const auto& g = map.grid;
  double total = 0.0;
  for (std::size_t a = 0; a < g.n_azimuth; ++a) {
    for (std::size_t m = 0; m < g.n_energy; ++m) {
      for (std::size_t i = 0; i < g.n_theta; ++i) {
        total += map.slice(a, m, i) * detail::cell_measure(g, m, i);
      }
    }
  }
  return total;
}

// Copy rescaled so that integrated_total() equals target.
inline PhaseSpaceMap normalized_to_total(const PhaseSpaceMap& map, double target) {
  const double total = integrated_total(map);
  if (!(total > 0.0)) throw DomainError("normalized_to_total: map has zero total");
  PhaseSpaceMap out = map;
  const double s = target / total;
  for (double& v : out.values) v *= s;
  for (double& v : out.slices) v *= s;
  out.meta.normalization *= s;
  out.meta.display_min *= s;
  out.meta.display_max *= s;
  return out;
}

struct MapOptions {
  std::size_t workers = 1;
  std::string scenario;
};

// Larmor channel. For each (theta, azimuth) node the rest-frame direction is
// fixed and the rest wave numbers of the energy sub-samples are uniformly
// spaced, so exp(i k tau_j) is advanced by a per-sample phasor recurrence
// (tau = t - n.r); each value is the same trapezoid sum larmor_current forms.
inline PhaseSpaceMap larmor_map(const Trajectory& tr, const RestFrameField& field, double gamma,
                                const MapGrid& grid, const MapOptions& opt = {}) {
  grid.check();
  detail::check_resolution(tr, max_rest_wavenumber(grid, gamma), "larmor_map");
  PhaseSpaceMap map = detail::empty_map(Channel::larmor, grid);
  map.meta.scenario = opt.scenario;
  map.meta.gamma = gamma;
  map.meta.omega = field.omega;
  map.meta.trajectory_samples = tr.size();
  map.meta.trajectory_dt = tr.dt;

  const std::size_t n = tr.size();
  const std::size_t nf = grid.n_energy * grid.energy_subsamples;
  const double q = PC::coupling_q();
  const double mode_norm = 1.0 / std::pow(2.0 * std::numbers::pi, 3);
  const double dE_sub = grid.energy_step() / static_cast<double>(grid.energy_subsamples);

  parallel_for(grid.n_theta * grid.n_azimuth, opt.workers, [&](std::size_t task) {
    const std::size_t i = task % grid.n_theta;
    const std::size_t a = task / grid.n_theta;
    const RestPhoton rp0 = unboost_photon(1.0, grid.theta(i), grid.phi(a), gamma);
    const double D = 1.0 / rp0.omega;  // E_lab / k_rest along this direction
    const Vec3 nh = rest_direction(rp0.theta, rp0.phi);
    const double k_start = grid.sub_energy(0, 0) / D;
    const double dk = dE_sub / D;

    std::vector<double> jxr(nf, 0.0), jxi(nf, 0.0), jyr(nf, 0.0), jyi(nf, 0.0), jzr(nf, 0.0),
        jzi(nf, 0.0);
    constexpr std::size_t B = 256;
    std::array<double, B> pr{}, pim{}, wr{}, wi{}, vx{}, vy{}, vz{};
    for (std::size_t j0 = 0; j0 < n; j0 += B) {
      const std::size_t nb = std::min(B, n - j0);
      for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t j = j0 + b;
        const double tau = tr.t[j] - dot(nh, tr.r[j]);
        const double w = detail::trapezoid_weight(j, n, tr.dt);
        pr[b] = w * std::cos(k_start * tau);
        pim[b] = w * std::sin(k_start * tau);
        wr[b] = std::cos(dk * tau);
        wi[b] = std::sin(dk * tau);
        vx[b] = tr.v[j].x;
        vy[b] = tr.v[j].y;
        vz[b] = tr.v[j].z;
      }
      for (std::size_t f = 0; f < nf; ++f) {
        double sxr = 0.0, sxi = 0.0, syr = 0.0, syi = 0.0, szr = 0.0, szi = 0.0;
#pragma omp simd reduction(+ : sxr, sxi, syr, syi, szr, szi)
        for (std::size_t b = 0; b < nb; ++b) {
          sxr += vx[b] * pr[b];
          sxi += vx[b] * pim[b];
          syr += vy[b] * pr[b];
          syi += vy[b] * pim[b];
          szr += vz[b] * pr[b];
          szi += vz[b] * pim[b];
          const double nr = pr[b] * wr[b] - pim[b] * wi[b];
          pim[b] = pr[b] * wi[b] + pim[b] * wr[b];
          pr[b] = nr;
        }
        jxr[f] += sxr; jxi[f] += sxi;
        jyr[f] += syr; jyi[f] += syi;
        jzr[f] += szr; jzi[f] += szi;
      }
    }
    for (std::size_t m = 0; m < grid.n_energy; ++m) {
      double acc = 0.0;
      for (std::size_t s = 0; s < grid.energy_subsamples; ++s) {
        const std::size_t f = m * grid.energy_subsamples + s;
        const double E = grid.sub_energy(m, s);
        const cplx Jx(jxr[f], jxi[f]), Jy(jyr[f], jyi[f]), Jz(jzr[f], jzi[f]);
        const cplx nJ = nh.x * Jx + nh.y * Jy + nh.z * Jz;
        const double J2 = std::norm(Jx) + std::norm(Jy) + std::norm(Jz);
        acc += E * 0.5 * q * q * std::max(0.0, J2 - std::norm(nJ));
      }
      map.slices[(a * grid.n_energy + m) * grid.n_theta + i] =
          mode_norm * acc / static_cast<double>(grid.energy_subsamples);
    }
  });
  detail::finish_map(map);
  return map;
}

// int dK |F(K)|^2 / |F(omega)|^2 for the envelope in use: sqrt(pi)/T for a
// Gaussian, 2 pi / duration for a rectangular window.
inline double pair_bandwidth_factor(const RestFrameField& field) {
  if (field.envelope_shape == EnvelopeShape::gaussian) {
    return std::sqrt(std::numbers::pi) / field.T_halfwidth;
  }
  return 2.0 * std::numbers::pi / (2.0 * field.T_halfwidth);
}

// Single-photon marginal of the pair channel. The partner energy is pinned at
// k' = omega - k; the partner direction is integrated with Gauss-Legendre in
// cos(theta') times a uniform azimuth rule; |F|^2 comes from the trajectory
// through ResonantPairTable. Sub-samples with k_rest >= omega are zero and
// counted in meta.flagged_cells.
inline PhaseSpaceMap unruh_map(const Trajectory& tr, const RestFrameField& field, double gamma,
                               const MapGrid& grid, const PartnerQuadrature& pq = {},
                               const MapOptions& opt = {}) {
  grid.check();
  if (pq.n_polar < 2 || pq.n_azimuth < 2) throw DomainError("unruh_map: partner quadrature too small");
  const ResonantPairTable table(tr, field.omega, opt.workers);
  PhaseSpaceMap map = detail::empty_map(Channel::unruh, grid);
  map.meta.scenario = opt.scenario;
  map.meta.gamma = gamma;
  map.meta.omega = field.omega;
  map.meta.trajectory_samples = tr.size();
  map.meta.trajectory_dt = tr.dt;
  map.meta.partner_polar = pq.n_polar;
  map.meta.partner_azimuth = pq.n_azimuth;
  map.meta.bandwidth_factor = pair_bandwidth_factor(field);

  std::vector<double> mu, wmu;
  detail::gauss_legendre(pq.n_polar, mu, wmu);
  std::vector<Vec3> partner;
  std::vector<double> pw;
  for (std::size_t p = 0; p < pq.n_polar; ++p) {
    const double st = std::sqrt(std::max(0.0, 1.0 - mu[p] * mu[p]));
    for (std::size_t b = 0; b < pq.n_azimuth; ++b) {
      const double ph = 2.0 * std::numbers::pi * (static_cast<double>(b) + 0.5) /
                        static_cast<double>(pq.n_azimuth);
      partner.push_back({mu[p], st * std::sin(ph), st * std::cos(ph)});
      pw.push_back(wmu[p] * 2.0 * std::numbers::pi / static_cast<double>(pq.n_azimuth));
    }
  }

  const double q = PC::coupling_q();
  const double vertex = q * q / (4.0 * PC::electron_mass_eV);
  const double pref = vertex * vertex * map.meta.bandwidth_factor /
                      std::pow(2.0 * std::numbers::pi, 6);
  const double w = field.omega;
  std::vector<std::size_t> flagged(grid.n_theta * grid.n_azimuth, 0);

  parallel_for(grid.n_theta * grid.n_azimuth, opt.workers, [&](std::size_t task) {
    const std::size_t i = task % grid.n_theta;
    const std::size_t a = task / grid.n_theta;
    const RestPhoton rp0 = unboost_photon(1.0, grid.theta(i), grid.phi(a), gamma);
    const double inv_D = rp0.omega;
    const Vec3 nh = rest_direction(rp0.theta, rp0.phi);
    for (std::size_t m = 0; m < grid.n_energy; ++m) {
      double acc = 0.0;
      for (std::size_t s = 0; s < grid.energy_subsamples; ++s) {
        const double E = grid.sub_energy(m, s);
        const double k = E * inv_D;
        if (k >= w) {
          ++flagged[task];
          continue;
        }
        const double kp = w - k;
        double sum = 0.0;
        for (std::size_t p = 0; p < partner.size(); ++p) {
          const Vec3& np = partner[p];
          const double c = dot(nh, np);
          const cplx F = table.F(k * nh.x + kp * np.x, k * nh.z + kp * np.z);
          sum += pw[p] * (1.0 + c * c) * std::norm(F);
        }
        // E k_rest rho_rest with rho_rest = pref (k'/k) sum.
        acc += E * pref * kp * sum;
      }
      map.slices[(a * grid.n_energy + m) * grid.n_theta + i] =
          acc / static_cast<double>(grid.energy_subsamples);
    }
  });
  for (auto f : flagged) map.meta.flagged_cells += f;
  detail::finish_map(map);
  return map;
}

struct Aperture {
  double theta_center = 0.0;
  double phi_center = 0.0;
  double half_angle = 0.0;
};

struct EnergyWindow {
  double e_min_eV = 0.0;
  double e_max_eV = 0.0;
};

struct DominanceSummary {
  double larmor_window = 0.0;
  double unruh_window = 0.0;
  double larmor_cone = 0.0;
  double unruh_cone = 0.0;
  double larmor_outside = 0.0;
  double unruh_outside = 0.0;
  // nullopt when the Larmor denominator vanishes.
  std::optional<double> ratio_window;
  std::optional<double> ratio_cone;
  std::optional<double> ratio_outside;
  std::optional<double> improvement;  // ratio_cone / ratio_window
};

inline std::optional<double> safe_ratio(double num, double den) {
  if (!(den > 0.0) || !std::isfinite(num)) return std::nullopt;
  return num / den;
}

inline double lab_angle_between(double th1, double ph1, double th2, double ph2) {
  const Vec3 a{std::cos(th1), std::sin(th1) * std::sin(ph1), std::sin(th1) * std::cos(ph1)};
  const Vec3 b{std::cos(th2), std::sin(th2) * std::sin(ph2), std::sin(th2) * std::cos(ph2)};
  return 2.0 * std::asin(std::min(1.0, 0.5 * norm(a - b)));
}

inline DominanceSummary dominance_report(const PhaseSpaceMap& larmor, const PhaseSpaceMap& unruh,
                                         const Aperture& aperture, const EnergyWindow& window) {
  if (larmor.energy_axis != unruh.energy_axis || larmor.theta_axis != unruh.theta_axis ||
      larmor.phi_axis != unruh.phi_axis) {
    throw DomainError("dominance_report: maps do not share a grid");
  }
  const auto& g = larmor.grid;
  DominanceSummary s;
  for (std::size_t a = 0; a < g.n_azimuth; ++a) {
    for (std::size_t m = 0; m < g.n_energy; ++m) {
      const double E = g.energy(m);
      if (E < window.e_min_eV || E > window.e_max_eV) continue;
      for (std::size_t i = 0; i < g.n_theta; ++i) {
        const double meas = detail::cell_measure(g, m, i);
        const double l = larmor.slice(a, m, i) * meas;
        const double u = unruh.slice(a, m, i) * meas;
        s.larmor_window += l;
        s.unruh_window += u;
        const bool in_cone = lab_angle_between(g.theta(i), g.phi(a), aperture.theta_center,
                                               aperture.phi_center) <= aperture.half_angle;
        if (in_cone) {
          s.larmor_cone += l;
          s.unruh_cone += u;
        } else {
          s.larmor_outside += l;
          s.unruh_outside += u;
        }
      }
    }
  }
  s.ratio_window = safe_ratio(s.unruh_window, s.larmor_window);
  s.ratio_cone = safe_ratio(s.unruh_cone, s.larmor_cone);
  s.ratio_outside = safe_ratio(s.unruh_outside, s.larmor_outside);
  if (s.ratio_window && s.ratio_cone && *s.ratio_window > 0.0) {
    s.improvement = *s.ratio_cone / *s.ratio_window;
  }
  return s;
}

inline void write_dominance_report(std::ostream& os, const DominanceSummary& s) {
  char buf[160];
  auto num = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%-18s %.6e\n", key, v);
    os << buf;
  };
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) {
      num(key, *v);
    } else {
      std::snprintf(buf, sizeof buf, "%-18s undefined\n", key);
      os << buf;
    }
  };
  num("larmor_window", s.larmor_window);
  num("unruh_window", s.unruh_window);
  num("larmor_cone", s.larmor_cone);
  num("unruh_cone", s.unruh_cone);
  opt("ratio_window", s.ratio_window);
  opt("ratio_cone", s.ratio_cone);
  opt("ratio_outside", s.ratio_outside);
  opt("improvement", s.improvement);
}

// Axes header rows, then one row of theta values per energy (row-major).
inline void write_map_csv(std::ostream& os, const PhaseSpaceMap& map, bool plane_section = false) {
  char buf[64];
  const auto& g = map.grid;
  os << "# channel: " << channel_name(map.channel)
     << (plane_section ? " (polarization-plane section)" : " (azimuth average)") << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", map.meta.normalization);
  os << "# normalization: " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", map.meta.display_min);
  os << "# display_min: " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", map.meta.display_max);
  os << "# display_max: " << buf << '\n';
  os << "# flagged_cells: " << map.meta.flagged_cells << '\n';
  os << "energy_eV";
  for (double e : map.energy_axis) {
    std::snprintf(buf, sizeof buf, ",%.17g", e);
    os << buf;
  }
  os << "\ntheta_rad";
  for (double t : map.theta_axis) {
    std::snprintf(buf, sizeof buf, ",%.17g", t);
    os << buf;
  }
  os << '\n';
  for (std::size_t m = 0; m < g.n_energy; ++m) {
    for (std::size_t i = 0; i < g.n_theta; ++i) {
      const double v = plane_section ? map.plane_value(m, i) : map.value(m, i);
      std::snprintf(buf, sizeof buf, "%s%.17g", i == 0 ? "" : ",", v);
      os << buf;
    }
    os << '\n';
  }
}

// Binary P5 grayscale, log scale between display_min and display_max; zero
// cells are black. Width = theta, height = energy with the highest energy on top.
// Lines of `comment` are emitted as "#" header comments.
inline void write_map_pgm(std::ostream& os, const PhaseSpaceMap& map, bool plane_section = false,
                          const std::string& comment = {}) {
  const auto& g = map.grid;
  os << "P5\n";
  std::size_t pos = 0;
  while (pos < comment.size()) {
    auto nl = comment.find('\n', pos);
    if (nl == std::string::npos) nl = comment.size();
    os << "# " << comment.substr(pos, nl - pos) << '\n';
    pos = nl + 1;
  }
  os << g.n_theta << ' ' << g.n_energy << "\n255\n";
  const double lo = std::log10(map.meta.display_min);
  const double hi = std::log10(map.meta.display_max);
  for (std::size_t row = 0; row < g.n_energy; ++row) {
    const std::size_t m = g.n_energy - 1 - row;
    for (std::size_t i = 0; i < g.n_theta; ++i) {
      const double v = plane_section ? map.plane_value(m, i) : map.value(m, i);
      std::uint8_t px = 0;
      if (v > 0.0 && hi > lo) {
        const double p = std::clamp(v, map.meta.display_min, map.meta.display_max);
        px = static_cast<std::uint8_t>(std::lround(255.0 * (std::log10(p) - lo) / (hi - lo)));
      } else if (v > 0.0) {
        px = 255;
      }
      os.put(static_cast<char>(px));
    }
  }
}

}  // namespace unruh
