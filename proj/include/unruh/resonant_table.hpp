#pragma once

// Fast evaluation of the on-resonance pair integral
//   F(Kvec) = i int dt exp{i w t - i Kx x(t) - i Kz z(t)},  |Kvec| <= w,
// for the planar (y = 0) paths produced by this library.
//
// The z factor is expanded exactly, exp(-i Kz z) = sum_q (-i Kz/w)^q (w z)^q / q!,
// which converges fast because w |z| ~ a0. The x factor is tabulated on a
// uniform Kx grid and interpolated with 4-point Lagrange weights; the grid is
// sized so that h * max|x| <= 0.05 (interpolation error ~1e-7 relative).
// Every moment is the same trapezoid sum two_photon_F would form.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "unruh/amplitudes.hpp"
#include "unruh/error.hpp"
#include "unruh/parallel.hpp"
#include "unruh/trajectory.hpp"

namespace unruh {

class ResonantPairTable {
public:
  ResonantPairTable(const Trajectory& tr, double omega, std::size_t workers = 1)
      : omega_(omega) {
    detail::check_resolution(tr, omega, "ResonantPairTable");
    const std::size_t n = tr.size();
    double x_max = 0.0, wz_max = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (tr.r[j].y != 0.0) throw DomainError("ResonantPairTable: path must lie in the x-z plane");
      x_max = std::max(x_max, std::abs(tr.r[j].x));
      wz_max = std::max(wz_max, omega * std::abs(tr.r[j].z));
    }
    // Series order: next term below 1e-15 relative to the leading one.
    n_terms_ = 1;
    double term = 1.0;
    while (n_terms_ < 200) {
      term *= wz_max / static_cast<double>(n_terms_);
      if (term < 1e-15) break;
      ++n_terms_;
    }
    const auto n_nodes = static_cast<std::size_t>(
        std::max(33.0, std::ceil(2.0 * omega * x_max / 0.05) + 1.0));
    h_ = 2.0 * omega / static_cast<double>(n_nodes - 1);
    // One padding node on each side for the 4-point stencil.
    n_grid_ = n_nodes + 2;
    G_.assign(n_grid_ * n_terms_, cplx{});

    parallel_for(n_grid_, workers, [&](std::size_t g) {
      const double Kx = node(g);
      std::vector<double> re(n_terms_, 0.0), im(n_terms_, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        const double ph = omega * tr.t[j] - Kx * tr.r[j].x;
        const double w = detail::trapezoid_weight(j, n, tr.dt);
        double c = w * std::cos(ph), s = w * std::sin(ph);
        const double wz = omega * tr.r[j].z;
        for (std::size_t q = 0; q < n_terms_; ++q) {
          re[q] += c;
          im[q] += s;
          c *= wz;
          s *= wz;
        }
      }
      // Fold 1/q! into the moments.
      double inv_fact = 1.0;
      for (std::size_t q = 0; q < n_terms_; ++q) {
        if (q > 0) inv_fact /= static_cast<double>(q);
        G_[g * n_terms_ + q] = cplx(re[q], im[q]) * inv_fact;
      }
    });
  }

  double omega() const { return omega_; }
  std::size_t series_terms() const { return n_terms_; }
  std::size_t grid_nodes() const { return n_grid_; }

  cplx F(double Kx, double Kz) const {
    const double lim = omega_ * (1.0 + 1e-9);
    if (std::abs(Kx) > lim || std::abs(Kz) > lim) {
      throw DomainError("ResonantPairTable: |K| exceeds omega");
    }
    const double s = (Kx + omega_) / h_;  // position in node units, node(1) = -omega
    auto base = static_cast<std::ptrdiff_t>(std::floor(s));
    base = std::clamp<std::ptrdiff_t>(base, 0, static_cast<std::ptrdiff_t>(n_grid_) - 4);
    // Stencil nodes base..base+3 sit at offsets -1, 0, 1, 2 from node base+1;
    // d is the distance from node base+1 in units of h.
    const double d = s - static_cast<double>(base);
    const double w0 = -d * (d - 1.0) * (d - 2.0) / 6.0;
    const double w1 = (d + 1.0) * (d - 1.0) * (d - 2.0) / 2.0;
    const double w2 = -(d + 1.0) * d * (d - 2.0) / 2.0;
    const double w3 = (d + 1.0) * d * (d - 1.0) / 6.0;
    const cplx* g0 = &G_[static_cast<std::size_t>(base) * n_terms_];
    const cplx* g1 = g0 + n_terms_;
    const cplx* g2 = g1 + n_terms_;
    const cplx* g3 = g2 + n_terms_;
    // Horner in (-i Kz / w).
    const cplx x(0.0, -Kz / omega_);
    cplx acc{};
    for (std::size_t q = n_terms_; q-- > 0;) {
      const cplx gq = w0 * g0[q] + w1 * g1[q] + w2 * g2[q] + w3 * g3[q];
      acc = acc * x + gq;
    }
    return cplx(0.0, 1.0) * acc;
  }

private:
  // node(0) = -omega - h (padding), node(1) = -omega, ...
  double node(std::size_t g) const { return -omega_ + (static_cast<double>(g) - 1.0) * h_; }

  double omega_;
  double h_ = 0.0;
  std::size_t n_terms_ = 1;
  std::size_t n_grid_ = 0;
  std::vector<cplx> G_;
};

}  // namespace unruh
