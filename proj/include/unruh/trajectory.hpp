#pragma once

// Classical electron path in the average rest frame.
//
// Two producers: the analytic quiver r = z (qE/(m w^2)) env(t) cos(w t), and a
// relativistic RK4 integration of du/dt = -(q/m)(E + v x B), u = gamma v, in
// the plane wave E = z E0 env(t+x) cos(w(t+x)), B = y E_z (wave along -x).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "unruh/error.hpp"
#include "unruh/fields.hpp"
#include "unruh/vec3.hpp"

namespace unruh {

enum class TrajectoryMethod { analytic, relativistic_numeric };

struct Trajectory {
  std::vector<double> t;
  std::vector<Vec3> r;
  std::vector<Vec3> v;
  TrajectoryMethod method = TrajectoryMethod::analytic;
  double dt = 0.0;
  double achieved_tol = 0.0;

  std::size_t size() const { return t.size(); }
  double t_begin() const { return t.front(); }
  double t_end() const { return t.back(); }

  double max_speed() const {
    double m = 0.0;
    for (const auto& vi : v) m = std::max(m, norm(vi));
    return m;
  }
};

struct TrajectoryOptions {
  double tol = 1e-9;
  // Lower bound on the output grid density; amplitude quadrature needs
  // (k + k') dt < 0.1, so callers size this from the largest wave number.
  std::size_t min_samples_per_cycle = 64;
  bool center = true;
};

// Half-span, in whole field cycles, that contains the pulse: rectangular
// envelopes use their half-width, Gaussians are cut where env < tail.
inline double symmetric_half_span(const RestFrameField& field, double tail = 1e-6) {
  const double period = field.period();
  double half = field.T_halfwidth;
  if (field.envelope_shape == EnvelopeShape::gaussian) {
    half = field.T_halfwidth * std::sqrt(2.0 * std::log(1.0 / tail));
  }
  return std::ceil(half / period - 1e-9) * period;
}

// Samples per cycle so that k_max * dt < 0.1 (with a 2% margin).
inline std::size_t samples_per_cycle_for(double k_max, double omega) {
  const double dt_max = 0.1 / k_max;
  const double period = 2.0 * std::numbers::pi / omega;
  return static_cast<std::size_t>(std::ceil(1.02 * period / dt_max));
}

inline Trajectory analytic_quiver(const RestFrameField& field, double t0, double t1,
                                  std::size_t n_samples) {
  if (n_samples < 2) throw DomainError("analytic_quiver: need at least 2 samples");
  if (!(field.omega > 0.0)) throw DomainError("analytic_quiver: omega must be > 0");
  if (!(t1 > t0)) throw DomainError("analytic_quiver: empty time span");
  Trajectory tr;
  tr.method = TrajectoryMethod::analytic;
  tr.dt = (t1 - t0) / static_cast<double>(n_samples - 1);
  tr.t.resize(n_samples);
  tr.r.resize(n_samples);
  tr.v.resize(n_samples);
  const double A = field.quiver_amplitude();
  const double w = field.omega;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = t0 + static_cast<double>(i) * tr.dt;
    const double env = field.envelope(t);
    const double ph = w * t + field.carrier_phase;
    tr.t[i] = t;
    tr.r[i] = {0.0, 0.0, A * env * std::cos(ph)};
    // Envelope derivative neglected (slowly varying envelope).
    tr.v[i] = {0.0, 0.0, -A * w * env * std::sin(ph)};
  }
  return tr;
}

namespace detail {

struct PhaseState {
  Vec3 r;
  Vec3 u;
};

inline PhaseState lorentz_rhs(const RestFrameField& field, double t, const PhaseState& s) {
  const double gam = std::sqrt(1.0 + dot(s.u, s.u));
  const Vec3 v = s.u * (1.0 / gam);
  const double phase_var = t + s.r.x;
  // (q/m) E_z for charge -q; q E0 / m = a0 omega.
  const double f = field.a0 * field.omega * field.envelope(phase_var) *
                   std::cos(field.omega * phase_var + field.carrier_phase);
  PhaseState d;
  d.r = v;
  d.u = {f * v.z, 0.0, -f * (1.0 + v.x)};
  return d;
}

struct RawPath {
  std::vector<Vec3> r;
  std::vector<Vec3> u;
};

inline RawPath rk4_path(const RestFrameField& field, double t0, double t1, std::size_t n_steps) {
  RawPath p;
  p.r.resize(n_steps + 1);
  p.u.resize(n_steps + 1);
  const double h = (t1 - t0) / static_cast<double>(n_steps);
  PhaseState s{};
  p.r[0] = s.r;
  p.u[0] = s.u;
  auto axpy = [](const PhaseState& a, double c, const PhaseState& b) {
    return PhaseState{a.r + b.r * c, a.u + b.u * c};
  };
  for (std::size_t i = 0; i < n_steps; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    const PhaseState k1 = lorentz_rhs(field, t, s);
    const PhaseState k2 = lorentz_rhs(field, t + 0.5 * h, axpy(s, 0.5 * h, k1));
    const PhaseState k3 = lorentz_rhs(field, t + 0.5 * h, axpy(s, 0.5 * h, k2));
    const PhaseState k4 = lorentz_rhs(field, t + h, axpy(s, h, k3));
    s.r += (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r) * (h / 6.0);
    s.u += (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u) * (h / 6.0);
    p.r[i + 1] = s.r;
    p.u[i + 1] = s.u;
  }
  return p;
}

inline Trajectory to_trajectory(const RawPath& p, double t0, double t1) {
  const std::size_t n = p.r.size();
  Trajectory tr;
  tr.method = TrajectoryMethod::relativistic_numeric;
  tr.dt = (t1 - t0) / static_cast<double>(n - 1);
  tr.t.resize(n);
  tr.r = p.r;
  tr.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    tr.t[i] = t0 + static_cast<double>(i) * tr.dt;
    tr.v[i] = p.u[i] * (1.0 / std::sqrt(1.0 + dot(p.u[i], p.u[i])));
  }
  return tr;
}

inline Vec3 trapezoid_mean(const std::vector<Vec3>& xs) {
  Vec3 acc{};
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    acc += xs[i] * w;
  }
  return acc * (1.0 / static_cast<double>(n - 1));
}

}  // namespace detail

// Moves the path into its average rest frame: removes the time-averaged
// velocity (Galilean shift, with the matching linear drift in r) and then the
// time-averaged position.
inline void center_trajectory(Trajectory& tr) {
  const Vec3 v_mean = detail::trapezoid_mean(tr.v);
  const double t0 = tr.t.front();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    tr.v[i] -= v_mean;
    tr.r[i] -= v_mean * (tr.t[i] - t0);
  }
  const Vec3 r_mean = detail::trapezoid_mean(tr.r);
  for (auto& ri : tr.r) ri -= r_mean;
}

// Single RK4 pass with a fixed step count; no centering.
inline Trajectory integrate_fixed(const RestFrameField& field, double t0, double t1,
                                  std::size_t n_steps) {
  if (n_steps < 1) throw DomainError("integrate_fixed: need at least one step");
  if (!(t1 > t0)) throw DomainError("integrate_fixed: empty time span");
  return detail::to_trajectory(detail::rk4_path(field, t0, t1, n_steps), t0, t1);
}

// RK4 with global step halving until two successive grids agree to tol.
// The residual is max(w |dr|, |du|) over the shared samples, a dimensionless
// absolute measure. The finer of the converged pair is returned.
inline Trajectory integrate_trajectory(const RestFrameField& field, double t0, double t1,
                                       const TrajectoryOptions& opt = {}) {
  if (!(opt.tol >= 1e-12 && opt.tol <= 1e-3)) {
    throw DomainError("integrate_trajectory: tol must lie in [1e-12, 1e-3]");
  }
  if (!(t1 > t0)) throw DomainError("integrate_trajectory: empty time span");
  const double cycles = (t1 - t0) / field.period();
  const double start_spc = std::max<double>(16.0, 0.5 * static_cast<double>(opt.min_samples_per_cycle));
  std::size_t n = static_cast<std::size_t>(std::ceil(cycles * start_spc));
  n = std::max<std::size_t>(n, 8);

  constexpr std::size_t kMaxHalvings = 20;
  constexpr std::size_t kMaxSteps = std::size_t{1} << 26;
  detail::RawPath coarse = detail::rk4_path(field, t0, t1, n);
  double residual = 0.0;
  for (std::size_t level = 0; level < kMaxHalvings; ++level) {
    if (2 * n > kMaxSteps) break;
    detail::RawPath fine = detail::rk4_path(field, t0, t1, 2 * n);
    residual = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const Vec3 dr = coarse.r[i] - fine.r[2 * i];
      const Vec3 du = coarse.u[i] - fine.u[2 * i];
      residual = std::max({residual, field.omega * std::abs(dr.x), field.omega * std::abs(dr.y),
                           field.omega * std::abs(dr.z), std::abs(du.x), std::abs(du.y),
                           std::abs(du.z)});
    }
    n *= 2;
    if (residual < opt.tol) {
      Trajectory tr = detail::to_trajectory(fine, t0, t1);
      tr.achieved_tol = residual;
      if (opt.center) center_trajectory(tr);
      if (tr.max_speed() >= 1.0) throw Error("integrate_trajectory: superluminal sample");
      return tr;
    }
    coarse = std::move(fine);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "integrate_trajectory: no convergence after step halving (residual %.3e, tol %.3e)",
                residual, opt.tol);
  throw ConvergenceError(buf, residual);
}

// Convenience: symmetric span around the pulse centre.
inline Trajectory integrate_pulse(const RestFrameField& field, const TrajectoryOptions& opt = {}) {
  const double L = symmetric_half_span(field);
  return integrate_trajectory(field, -L, L, opt);
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,x,y,z,vx,vy,vz\n";
  char buf[512];
  for (std::size_t i = 0; i < tr.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", tr.t[i],
                  tr.r[i].x, tr.r[i].y, tr.r[i].z, tr.v[i].x, tr.v[i].y, tr.v[i].z);
    os << buf;
  }
}

}  // namespace unruh
