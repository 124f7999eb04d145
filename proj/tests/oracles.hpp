#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// Faber polynomials of the ellipse with semi-axes (a, b) from the
// Joukowski recurrence: with alpha = (a+b)/2, beta = (a-b)/2 and
// p_{n+1} = z p_n - alpha beta p_{n-1}, p_0 = 2, p_1 = z, the polynomial
// part of Phi^n is p_n / alpha^n for n >= 1 (and 1 for n = 0), because
// p_n(Psi(w)) = alpha^n w^n + beta^n w^-n and the w^-n part vanishes at
// infinity.
inline std::vector<cplx> joukowski_faber(double a, double b, std::size_t n) {
  const double alpha = 0.5 * (a + b);
  const double beta = 0.5 * (a - b);
  if (n == 0) return {cplx{1.0, 0.0}};
  std::vector<cplx> pm1{cplx{2.0, 0.0}};          // p_0
  std::vector<cplx> p{cplx{0.0, 0.0}, {1.0, 0.0}};  // p_1 = z
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<cplx> next(k + 2, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < p.size(); ++j) next[j + 1] += p[j];  // z * p_k
    for (std::size_t j = 0; j < pm1.size(); ++j) next[j] -= alpha * beta * pm1[j];
    pm1 = std::move(p);
    p = std::move(next);
  }
  const double scale = std::pow(alpha, -static_cast<double>(n));
  for (auto& c : p) c *= scale;
  return p;
}

// ((z - c) / r)^n by the Pascal-triangle expansion.
inline std::vector<cplx> disk_faber(cplx c, double r, std::size_t n) {
  std::vector<cplx> poly{cplx{1.0, 0.0}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<cplx> next(poly.size() + 1, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j] / r;
      next[j] -= poly[j] * c / r;
    }
    poly = std::move(next);
  }
  return poly;
}

// Monic polynomial with the given roots, by repeated multiplication.
inline std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> poly{cplx{1.0, 0.0}};
  for (const cplx& r : roots) {
    std::vector<cplx> next(poly.size() + 1, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * r;
    }
    poly = std::move(next);
  }
  return poly;
}

// E[log+ |X|] for the standard Cauchy law by quadrature:
// integral over x >= 1 of log(x) * (2/pi) / (1+x^2) dx, transformed by
// x = e^s into integral over s >= 0 of s * (2/pi) e^s / (1 + e^{2s}) ds,
// a smooth exponentially decaying integrand.  Exact value 2G/pi with G
// Catalan's constant.
inline double cauchy_log_moment(double s_max = 60.0, std::size_t steps = 600000) {
  const double h = s_max / static_cast<double>(steps);
  double acc = 0.0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double s = h * static_cast<double>(i);
    const double f = s * (2.0 / 3.141592653589793) * std::exp(s) / (1.0 + std::exp(2.0 * s));
    acc += (i == 0 || i == steps) ? 0.5 * f : f;
  }
  return acc * h;
}

// Brute-force star discrepancy: sup over a dense grid of anchors t of
// |F_n(t) - t/(2 pi)|.  Lower bound of the exact value.
inline double brute_star_discrepancy(std::vector<double> angles, std::size_t grid) {
  std::sort(angles.begin(), angles.end());
  const double n = static_cast<double>(angles.size());
  double d = 0.0;
  for (std::size_t g = 0; g <= grid; ++g) {
    const double t = 6.283185307179586 * static_cast<double>(g) / static_cast<double>(grid);
    const auto it = std::lower_bound(angles.begin(), angles.end(), t);
    const double frac = static_cast<double>(it - angles.begin()) / n;
    d = std::max(d, std::abs(frac - t / 6.283185307179586));
  }
  return d;
}

}  // namespace oracle
