#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rpzlab/basis.hpp"
#include "rpzlab/coefficients.hpp"

// Assembled random polynomials in monomial form, normalized so the largest
// coefficient modulus is 1 with the true magnitude absorbed into a log
// scale exponent.  Assembly runs entirely in the log domain, so ensembles
// whose coefficients overflow doubles (log-Pareto records reach exp(1e6))
// still produce a usable polynomial; coefficients whose relative size
// underflows double precision drop out, which can lower the effective
// degree -- the honest finite-precision counterpart of the exact-degree
// polynomials in the theory.

namespace rpz {

struct degenerate_polynomial_error : std::runtime_error {
  explicit degenerate_polynomial_error(const std::string& what)
      : std::runtime_error(what) {}
};

struct MonomialPolynomial {
  std::vector<cplx> coeffs;  // normalized: max_k |coeffs[k]| = 1
  double scale_exp = 0.0;    // true coefficient k = coeffs[k] * exp(scale_exp)
  std::size_t degree = 0;    // highest k with coeffs[k] != 0
};

/// Normalizes a raw coefficient vector into the scaled representation.
inline MonomialPolynomial make_polynomial(std::vector<cplx> coeffs,
                                          double extra_scale_exp = 0.0) {
  double max_abs = 0.0;
  for (const cplx& c : coeffs) max_abs = std::max(max_abs, std::abs(c));
  if (!(max_abs >= 1e-300) || !std::isfinite(max_abs))
    throw degenerate_polynomial_error("polynomial is numerically zero");
  MonomialPolynomial p;
  p.scale_exp = std::log(max_abs) + extra_scale_exp;
  const double inv = 1.0 / max_abs;
  for (cplx& c : coeffs) c *= inv;
  while (coeffs.size() > 1 && coeffs.back() == cplx{0.0, 0.0}) coeffs.pop_back();
  p.degree = coeffs.size() - 1;
  p.coeffs = std::move(coeffs);
  return p;
}

/// P_n = sum_{k<=n} A_k B_k in monomial coordinates.  The accumulation is
/// scaled by S = max_k (log|A_k| + log max_j |b_{j,k}|) so no intermediate
/// product can overflow regardless of the coefficient law.
inline MonomialPolynomial assemble(const CoefficientSequence& coeffs,
                                   const PolynomialBasis& basis, std::size_t n) {
  if (n > basis.nmax)
    throw std::invalid_argument("assemble: n exceeds basis nmax");
  if (n >= coeffs.size())
    throw std::invalid_argument("assemble: coefficient sequence too short");

  std::vector<double> col_log_max(n + 1, -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k <= n; ++k) {
    double m = 0.0;
    for (const cplx& b : basis.cols[k]) m = std::max(m, std::abs(b));
    if (m > 0.0) col_log_max[k] = std::log(m);
  }

  double scale = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= n; ++k)
    if (std::isfinite(col_log_max[k]))
      scale = std::max(scale, coeffs.log_abs[k] + col_log_max[k]);
  if (!std::isfinite(scale))
    throw degenerate_polynomial_error("assemble: all terms vanish");

  std::vector<cplx> c(n + 1, cplx{0.0, 0.0});
  for (std::size_t k = 0; k <= n; ++k) {
    if (!std::isfinite(col_log_max[k])) continue;  // zero basis column
    const double e = coeffs.log_abs[k] - scale;
    if (e < -745.0) continue;  // underflows to zero anyway
    const cplx factor = coeffs.phase[k] * std::exp(e);
    const auto& col = basis.cols[k];
    for (std::size_t j = 0; j < col.size(); ++j) c[j] += factor * col[j];
  }
  return make_polynomial(std::move(c), scale);
}

/// p(z) of the *normalized* polynomial in split form value * exp(log_scale).
/// For |z| <= 1 plain Horner needs no scaling (coefficients are <= 1 in
/// modulus); for |z| > 1 the reversed polynomial is evaluated at 1/z and
/// the factor z^degree carried as log modulus deg*log|z| plus unit phase.
struct EvalResult {
  cplx value{0.0, 0.0};
  double log_scale = 0.0;
};

inline EvalResult evaluate(const MonomialPolynomial& p, cplx z) {
  const std::size_t deg = p.degree;
  const double az = std::abs(z);
  EvalResult r;
  if (az <= 1.0) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = deg + 1; i-- > 0;) acc = acc * z + p.coeffs[i];
    r.value = acc;
    r.log_scale = 0.0;
  } else {
    const cplx w = 1.0 / z;
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i <= deg; ++i) acc = acc * w + p.coeffs[i];
    r.value = acc * std::polar(1.0, static_cast<double>(deg) * std::arg(z));
    r.log_scale = static_cast<double>(deg) * std::log(az);
  }
  return r;
}

/// log |p(z)| of the true (unscaled) polynomial; -inf at exact roots.
inline double evaluate_log_abs(const MonomialPolynomial& p, cplx z) {
  const EvalResult r = evaluate(p, z);
  return std::log(std::abs(r.value)) + r.log_scale + p.scale_exp;
}

/// sum_k |c_k| |z|^k in the same split form (used for relative residuals).
inline EvalResult evaluate_abs(const MonomialPolynomial& p, double az) {
  const std::size_t deg = p.degree;
  EvalResult r;
  if (az <= 1.0) {
    double acc = 0.0;
    for (std::size_t i = deg + 1; i-- > 0;) acc = acc * az + std::abs(p.coeffs[i]);
    r.value = acc;
  } else {
    const double w = 1.0 / az;
    double acc = 0.0;
    for (std::size_t i = 0; i <= deg; ++i) acc = acc * w + std::abs(p.coeffs[i]);
    r.value = acc;
    r.log_scale = static_cast<double>(deg) * std::log(az);
  }
  return r;
}

/// Divides by the leading coefficient.  The normalized coefficient shape is
/// unchanged up to a phase; only the scale exponent and phases move, so the
/// constant term's true value |Q(0)| stays computable in the log domain no
/// matter how extreme the inputs were.
inline MonomialPolynomial monic_reduce(const MonomialPolynomial& p) {
  if (p.degree < 1)
    throw std::invalid_argument("monic_reduce: degree must be >= 1");
  const cplx lead = p.coeffs[p.degree];
  if (lead == cplx{0.0, 0.0})
    throw std::invalid_argument("monic_reduce: zero leading coefficient");
  MonomialPolynomial q;
  q.degree = p.degree;
  q.coeffs.resize(p.degree + 1);
  const double alead = std::abs(lead);
  const cplx rot = std::conj(lead) / alead;  // 1/phase(lead)
  for (std::size_t i = 0; i <= p.degree; ++i) q.coeffs[i] = p.coeffs[i] * rot;
  q.scale_exp = -std::log(alead);
  return q;
}

/// log |Q(0)|^(1/deg) of the monic form, computed without leaving the log
/// domain (the Theorem BSS / K = {0} diagnostic).
inline double monic_log_q0_per_degree(const MonomialPolynomial& p) {
  if (p.degree < 1) throw std::invalid_argument("degree must be >= 1");
  const double num = std::log(std::abs(p.coeffs[0]));
  const double den = std::log(std::abs(p.coeffs[p.degree]));
  return (num - den) / static_cast<double>(p.degree);
}

}  // namespace rpz
