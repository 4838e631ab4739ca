#pragma once

// Reference computations shared by the unit and acceptance tests. Each one
// takes a different route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

// exp(xi a^+ b^+ - xi* a b)|0,0> built in the invariant span of |n,n>
// (dimension dim) by Taylor-stepping the generator, then traced over b.
// Returns |c_n|^2 for n < dim.
inline std::vector<double> squeezed_reduced_by_construction(std::complex<double> xi,
                                                            std::size_t dim) {
  using C = std::complex<double>;
  const double gnorm = 2.0 * std::abs(xi) * static_cast<double>(dim);
  const auto steps = static_cast<std::size_t>(std::ceil(gnorm / 0.5)) + 1;
  const double h = 1.0 / static_cast<double>(steps);
  std::vector<C> c(dim, C{}), term(dim), next(dim);
  c[0] = 1.0;
  // (G v)_n = xi n v_{n-1} - conj(xi) (n+1) v_{n+1}
  auto apply = [&](const std::vector<C>& v, std::vector<C>& out) {
    for (std::size_t n = 0; n < dim; ++n) {
      C s{};
      if (n > 0) s += xi * static_cast<double>(n) * v[n - 1];
      if (n + 1 < dim) s -= std::conj(xi) * static_cast<double>(n + 1) * v[n + 1];
      out[n] = s;
    }
  };
  for (std::size_t st = 0; st < steps; ++st) {
    term = c;
    std::vector<C> acc = c;
    for (int order = 1; order <= 40; ++order) {
      apply(term, next);
      double mx = 0.0;
      for (std::size_t n = 0; n < dim; ++n) {
        term[n] = next[n] * (h / order);
        acc[n] += term[n];
        mx = std::max(mx, std::abs(term[n]));
      }
      if (mx < 1e-20) break;
    }
    c = acc;
  }
  std::vector<double> p(dim);
  for (std::size_t n = 0; n < dim; ++n) p[n] = std::norm(c[n]);
  return p;
}

}  // namespace oracle
