#pragma once

// Two-photon (pair) and one-photon (Larmor) amplitudes on a sampled path.
//
// Quantization-volume contract: every amplitude here is evaluated with V = 1.
// Probabilities are only formed through mode sums sum_k -> (2 pi)^-3 int d^3k,
// under which V cancels; nothing downstream relies on V's value.

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "unruh/constants.hpp"
#include "unruh/error.hpp"
#include "unruh/fields.hpp"
#include "unruh/trajectory.hpp"
#include "unruh/vec3.hpp"

namespace unruh {

using cplx = std::complex<double>;

struct PhotonMode {
  Vec3 k;      // wave vector, eV
  int lambda;  // polarization index, 1 or 2
  Vec3 e;      // polarization unit vector

  double energy() const { return norm(k); }
  Vec3 direction() const { return normalized(k); }
};

struct PairAmplitude {
  cplx value;
  std::pair<PhotonMode, PhotonMode> modes;
  cplx F;  // raw time integral
};

// (e1, e2) transverse to k_hat: e1 follows z projected out of k_hat (x when k_hat
// is along z), e2 = k_hat x e1, so (e1, e2, k_hat) is right handed.
inline std::pair<Vec3, Vec3> polarization_basis(const Vec3& k_hat) {
  if (std::abs(norm(k_hat) - 1.0) > 1e-9) {
    throw DomainError("polarization_basis: direction is not a unit vector");
  }
  const Vec3 zk = cross(kUnitZ, k_hat);
  Vec3 e1;
  if (norm(zk) > 1e-9) {
    e1 = normalized(kUnitZ - k_hat * dot(kUnitZ, k_hat));
  } else {
    e1 = kUnitX;
  }
  const Vec3 e2 = cross(k_hat, e1);
  return {e1, e2};
}

inline PhotonMode make_mode(const Vec3& k, int lambda) {
  const double kk = norm(k);
  if (!(kk > 0.0)) throw DomainError("make_mode: photon energy must be > 0");
  if (lambda != 1 && lambda != 2) throw DomainError("make_mode: lambda must be 1 or 2");
  const auto [e1, e2] = polarization_basis(k * (1.0 / kk));
  return {k, lambda, lambda == 1 ? e1 : e2};
}

namespace detail {

inline void check_resolution(const Trajectory& tr, double k_max, const char* who) {
  if (tr.size() < 2) throw ResolutionError(std::string(who) + ": trajectory has < 2 samples", 2);
  if (k_max * tr.dt >= 0.1) {
    const double span = tr.t_end() - tr.t_begin();
    const auto required = static_cast<std::size_t>(std::ceil(k_max * span / 0.1)) + 1;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%s: grid under-resolved (k dt = %.3g >= 0.1); need >= %zu samples", who,
                  k_max * tr.dt, required);
    throw ResolutionError(buf, required);
  }
}

inline double trapezoid_weight(std::size_t i, std::size_t n, double dt) {
  return (i == 0 || i + 1 == n) ? 0.5 * dt : dt;
}

}  // namespace detail

// F = i int dt exp{i K t - i Kvec . r(t)},  K = |k| + |k'|, Kvec = k + k'.
inline cplx two_photon_F(const Trajectory& tr, const Vec3& k, const Vec3& kp) {
  const double K = norm(k) + norm(kp);
  detail::check_resolution(tr, K, "two_photon_F");
  const Vec3 Kv = k + kp;
  const std::size_t n = tr.size();
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double ph = K * tr.t[j] - dot(Kv, tr.r[j]);
    const double w = detail::trapezoid_weight(j, n, tr.dt);
    re += w * std::cos(ph);
    im += w * std::sin(ph);
  }
  return cplx(0.0, 1.0) * cplx(re, im);
}

// A = (q^2 / 4m) (e.e') / sqrt(k k') F, V = 1.
inline PairAmplitude two_photon_amplitude(const Trajectory& tr, const PhotonMode& a,
                                          const PhotonMode& b) {
  const double q = PC::coupling_q();
  const cplx F = two_photon_F(tr, a.k, b.k);
  const double pref = q * q / (4.0 * PC::electron_mass_eV) * dot(a.e, b.e) /
                      std::sqrt(a.energy() * b.energy());
  return {pref * F, {a, b}, F};
}

// Closed form at resonance k + k' = omega:
// A = (q^3 E / 8 m^2) (e.e') / omega^3 (k_z + k'_z) / sqrt(k k') omega T, V = 1.
inline cplx resonant_amplitude(const RestFrameField& field, const PhotonMode& a,
                               const PhotonMode& b, double omega_T) {
  const double ksum = a.energy() + b.energy();
  if (std::abs(ksum - field.omega) > 1e-6 * field.omega) {
    throw DomainError("resonant_amplitude: modes are off resonance (k + k' != omega)");
  }
  const double q = PC::coupling_q();
  const double m = PC::electron_mass_eV;
  const double w = field.omega;
  return (q * q * q * field.E0 / (8.0 * m * m)) * dot(a.e, b.e) / (w * w * w) *
         (a.k.z + b.k.z) / std::sqrt(a.energy() * b.energy()) * omega_T;
}

// J = int dt v(t) exp{i k t - i kvec . r(t)}.
inline std::array<cplx, 3> larmor_current(const Trajectory& tr, const Vec3& kvec) {
  const double k = norm(kvec);
  detail::check_resolution(tr, k, "larmor_amplitude");
  const std::size_t n = tr.size();
  std::array<double, 3> re{}, im{};
  for (std::size_t j = 0; j < n; ++j) {
    const double ph = k * tr.t[j] - dot(kvec, tr.r[j]);
    const double w = detail::trapezoid_weight(j, n, tr.dt);
    const double c = w * std::cos(ph), s = w * std::sin(ph);
    const Vec3& v = tr.v[j];
    re[0] += v.x * c; im[0] += v.x * s;
    re[1] += v.y * c; im[1] += v.y * s;
    re[2] += v.z * c; im[2] += v.z * s;
  }
  return {cplx(re[0], im[0]), cplx(re[1], im[1]), cplx(re[2], im[2])};
}

// alpha = q int dt (e . v) / sqrt(2 k) exp{i k t - i k . r}, V = 1.
inline cplx larmor_amplitude(const Trajectory& tr, const PhotonMode& mode) {
  const auto J = larmor_current(tr, mode.k);
  const cplx eJ = mode.e.x * J[0] + mode.e.y * J[1] + mode.e.z * J[2];
  return PC::coupling_q() / std::sqrt(2.0 * mode.energy()) * eJ;
}

// sum over both polarizations of |alpha|^2 = q^2 / (2k) (|J|^2 - |n.J|^2).
inline double larmor_polarization_sum(const Trajectory& tr, const Vec3& kvec) {
  const auto J = larmor_current(tr, kvec);
  const double k = norm(kvec);
  const Vec3 n = kvec * (1.0 / k);
  const cplx nJ = n.x * J[0] + n.y * J[1] + n.z * J[2];
  const double J2 = std::norm(J[0]) + std::norm(J[1]) + std::norm(J[2]);
  const double q = PC::coupling_q();
  return q * q / (2.0 * k) * std::max(0.0, J2 - std::norm(nJ));
}

// sum_{lambda, lambda'} (e_{k,lambda} . e_{k',lambda'})^2 by explicit basis sums.
inline double polarization_pair_sum(const Vec3& k_hat, const Vec3& kp_hat) {
  const auto [a1, a2] = polarization_basis(k_hat);
  const auto [b1, b2] = polarization_basis(kp_hat);
  double s = 0.0;
  for (const Vec3& a : {a1, a2}) {
    for (const Vec3& b : {b1, b2}) {
      const double d = dot(a, b);
      s += d * d;
    }
  }
  return s;
}

struct PairSpectrumRow {
  double k = 0.0;
  double kp = 0.0;
  double cos_theta = 0.0;
  double cos_theta_p = 0.0;
  double abs_F = 0.0;
  cplx amplitude;
};

inline void write_pair_spectrum_csv(std::ostream& os, const std::vector<PairSpectrumRow>& rows) {
  os << "k,k_prime,cos_theta,cos_theta_prime,abs_F,re_A,im_A\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.k, r.kp,
                  r.cos_theta, r.cos_theta_p, r.abs_F, r.amplitude.real(), r.amplitude.imag());
    os << buf;
  }
}

}  // namespace unruh
