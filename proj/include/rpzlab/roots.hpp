#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rpzlab/domain.hpp"
#include "rpzlab/polynomial.hpp"

// Simultaneous root finding via the Aberth-Ehrlich iteration with Newton
// corrections from the scaled evaluator, plus the contour-integral
// coefficient recovery A_n = (1/2 pi i) int_{L_R} P(z) / (z B_n(z)) dz.

namespace rpz {

struct representation_invalid_error : std::runtime_error {
  explicit representation_invalid_error(const std::string& what)
      : std::runtime_error(what) {}
};

struct RootSet {
  std::vector<cplx> roots;     // length = degree
  double max_residual = 0.0;   // max_i |p(z_i)| / sum_k |c_k| |z_i|^k
  std::size_t iterations = 0;
  bool converged = false;
};

namespace detail {

// p(z)/p'(z) without overflow: for |z| > 1 both polynomials are evaluated
// in reversed form at 1/z, and the z^deg / z^(deg-1) factors reduce to a
// single factor of z.
inline cplx newton_ratio(const std::vector<cplx>& c, const std::vector<cplx>& dc,
                         cplx z, bool& derivative_zero) {
  const std::size_t deg = c.size() - 1;
  cplx p, dp;
  const double az = std::abs(z);
  if (az <= 1.0) {
    p = c[deg];
    dp = {0.0, 0.0};
    for (std::size_t i = deg; i-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[i];
    }
    derivative_zero = dp == cplx{0.0, 0.0};
    return derivative_zero ? cplx{0.0, 0.0} : p / dp;
  }
  const cplx w = 1.0 / z;
  cplx q{0.0, 0.0};
  for (std::size_t i = 0; i <= deg; ++i) q = q * w + c[i];
  cplx qd{0.0, 0.0};
  for (std::size_t i = deg; i-- > 0;) qd = qd * w + dc[i];
  derivative_zero = qd == cplx{0.0, 0.0};
  return derivative_zero ? cplx{0.0, 0.0} : z * q / qd;
}

inline double fujiwara_radius(const std::vector<cplx>& c) {
  const std::size_t deg = c.size() - 1;
  const double lead = std::log(std::abs(c[deg]));
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < deg; ++k) {
    if (c[k] == cplx{0.0, 0.0}) continue;
    const double e = (std::log(std::abs(c[k])) - lead) / static_cast<double>(deg - k);
    best = std::max(best, e);
  }
  return 2.0 * std::exp(best);
}

}  // namespace detail

/// All roots of p by Aberth-Ehrlich (Gauss-Seidel sweep order).  Exact
/// zero roots from a vanishing coefficient tail are deflated first.
/// Convergence: every correction below tol * (1 + |root|) and the final
/// verification residual below tol.
inline RootSet find_roots(const MonomialPolynomial& p, double tol = 1e-10,
                          std::size_t max_iter = 200) {
  if (p.degree < 1) throw std::invalid_argument("find_roots: degree must be >= 1");
  RootSet out;

  // deflate exact zeros at the origin
  std::size_t k0 = 0;
  while (k0 < p.degree && p.coeffs[k0] == cplx{0.0, 0.0}) ++k0;
  std::vector<cplx> c(p.coeffs.begin() + static_cast<std::ptrdiff_t>(k0), p.coeffs.end());
  out.roots.assign(k0, cplx{0.0, 0.0});
  const std::size_t m = c.size() - 1;  // remaining degree
  if (m == 0) {
    out.converged = true;
    return out;
  }

  std::vector<cplx> dc(m);
  for (std::size_t k = 0; k < m; ++k) dc[k] = static_cast<double>(k + 1) * c[k + 1];

  // initial guesses: Fujiwara circle, golden-angle spacing, mild radius
  // stagger to break symmetry
  const double r0 = detail::fujiwara_radius(c);
  std::vector<cplx> z(m);
  constexpr double kGolden = 0.6180339887498949;
  for (std::size_t i = 0; i < m; ++i) {
    const double frac_a = std::fmod(static_cast<double>(i + 1) * kGolden, 1.0);
    const double frac_r = std::fmod(static_cast<double>(i) * 0.7548776662466927 + 0.31, 1.0);
    z[i] = std::polar(r0 * (0.55 + 0.5 * frac_r), 6.283185307179586 * frac_a);
  }

  std::vector<bool> frozen(m, false);
  std::size_t sweeps = 0;
  bool all_done = false;
  while (sweeps < max_iter && !all_done) {
    ++sweeps;
    all_done = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (frozen[i]) continue;
      bool dzero = false;
      const cplx ni = detail::newton_ratio(c, dc, z[i], dzero);
      cplx wi;
      if (dzero) {
        wi = 0.05 * (1.0 + std::abs(z[i]));  // stationary point: push off it
      } else {
        cplx s{0.0, 0.0};
        for (std::size_t j = 0; j < m; ++j) {
          if (j == i) continue;
          const cplx d = z[i] - z[j];
          const double n2 = d.real() * d.real() + d.imag() * d.imag();
          if (n2 > 0.0) s += std::conj(d) / n2;
        }
        const cplx denom = 1.0 - ni * s;
        wi = denom == cplx{0.0, 0.0} ? ni : ni / denom;
        if (!std::isfinite(wi.real()) || !std::isfinite(wi.imag())) wi = ni;
      }
      z[i] -= wi;
      if (std::abs(wi) <= tol * (1.0 + std::abs(z[i])))
        frozen[i] = true;
      else
        all_done = false;
    }
  }
  out.iterations = sweeps;

  MonomialPolynomial tail;  // deflated polynomial, for the residual pass
  tail.coeffs = c;
  tail.degree = m;
  tail.scale_exp = 0.0;
  double max_rel = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const EvalResult ev = evaluate(tail, z[i]);
    const EvalResult ea = evaluate_abs(tail, std::abs(z[i]));
    const double denom = ea.value.real();
    if (denom > 0.0) max_rel = std::max(max_rel, std::abs(ev.value) / denom);
  }
  out.max_residual = max_rel;
  out.converged = all_done && max_rel <= tol;
  out.roots.insert(out.roots.end(), z.begin(), z.end());
  return out;
}

namespace detail {

inline bool inside_level(const Domain& dom, cplx z, double R) {
  const auto w = try_inverse_map(dom, z);
  if (!w) return true;  // interior to the map's domain: inside any L_R
  return std::abs(*w) < R;
}

}  // namespace detail

/// Recovers A_n of P = sum A_k B_k from the contour integral over L_R.
/// Valid when every root of B_n and the origin lie strictly inside L_R;
/// the integrand is then A_n / z + O(1/z^2) at infinity.
inline cplx recover_coefficient(const MonomialPolynomial& poly,
                                const PolynomialBasis& basis, const Domain& dom,
                                std::size_t n, double R,
                                std::size_t quad_nodes = 0) {
  if (!(R > 1.0))
    throw representation_invalid_error("recover_coefficient: R must exceed 1");
  if (n > basis.nmax)
    throw std::invalid_argument("recover_coefficient: n exceeds basis nmax");

  const MonomialPolynomial bn = make_polynomial(basis.cols[n]);
  if (bn.degree != n)
    throw representation_invalid_error("recover_coefficient: B_n has dropped degree");
  if (n >= 1) {
    const RootSet broots = find_roots(bn, 1e-12, 400);
    for (const cplx& r : broots.roots)
      if (!detail::inside_level(dom, r, R))
        throw representation_invalid_error(
            "recover_coefficient: a zero of B_n lies on or outside L_R");
  }
  if (!detail::inside_level(dom, {0.0, 0.0}, R))
    throw representation_invalid_error("recover_coefficient: origin not inside L_R");

  const std::size_t m = quad_nodes == 0
                            ? std::max<std::size_t>(8 * std::max<std::size_t>(n, 1), 512)
                            : quad_nodes;
  const LevelCurve curve = level_curve(dom, R, m);
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < m; ++j) {
    const double th = 6.283185307179586 * static_cast<double>(j) / static_cast<double>(m);
    const cplx w = std::polar(R, th);
    const cplx zj = curve.points[j];
    const EvalResult evp = evaluate(poly, zj);
    const EvalResult evb = evaluate(bn, zj);
    acc += w * curve.deriv_samples[j] * (evp.value / (zj * evb.value)) *
           std::exp(evp.log_scale - evb.log_scale);
  }
  acc /= static_cast<double>(m);
  return acc * std::exp(poly.scale_exp - bn.scale_exp);
}

}  // namespace rpz
