#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rpzlab/domain.hpp"

// Polynomial bases B_0..B_nmax as lower-triangular tables of monomial
// coefficients: column k holds b_{0,k}..b_{k,k} with b_{k,k} != 0 (except
// the degenerate shifted-monomial column 0, which is identically zero).
//
// Faber polynomials are produced from the exterior map's Laurent data by
// formal series reversion: Phi(z) = (z/d) V(1/z) with V a power series in
// t = 1/z, and F_n is the polynomial part of Phi^n, read off the first
// n+1 coefficients of V^n.  Szego and Bergman polynomials come from
// modified Gram-Schmidt under trapezoidal boundary quadrature; the area
// inner product is reduced to the boundary by the Stokes identity, so only
// (Psi, Psi') samples are ever needed.

namespace rpz {

struct ill_conditioned_error : std::runtime_error {
  explicit ill_conditioned_error(const std::string& what) : std::runtime_error(what) {}
};

enum class BasisKind { Monomial, ShiftedMonomial, Faber, Szego, Bergman };

inline const char* to_string(BasisKind k) {
  switch (k) {
    case BasisKind::Monomial: return "monomial";
    case BasisKind::ShiftedMonomial: return "shifted-monomial";
    case BasisKind::Faber: return "faber";
    case BasisKind::Szego: return "szego";
    case BasisKind::Bergman: return "bergman";
  }
  return "?";
}

inline BasisKind basis_kind_from_string(const std::string& s) {
  if (s == "monomial") return BasisKind::Monomial;
  if (s == "shifted-monomial" || s == "shifted") return BasisKind::ShiftedMonomial;
  if (s == "faber") return BasisKind::Faber;
  if (s == "szego") return BasisKind::Szego;
  if (s == "bergman") return BasisKind::Bergman;
  throw std::invalid_argument("unknown basis kind: " + s);
}

struct PolynomialBasis {
  BasisKind kind = BasisKind::Monomial;
  std::size_t nmax = 0;
  std::vector<std::vector<cplx>> cols;  // cols[k] = {b_{0,k}, ..., b_{k,k}}
  std::optional<Domain> domain;         // absent for (shifted-)monomial

  /// B_0 of the shifted-monomial family is the zero polynomial.
  bool degenerate_at_zero() const { return kind == BasisKind::ShiftedMonomial; }
};

namespace detail {

// ---- truncated power series in t (index = power, fixed length) ----

inline std::vector<cplx> series_mul(const std::vector<cplx>& a,
                                    const std::vector<cplx>& b,
                                    std::size_t len) {
  std::vector<cplx> out(len, cplx{0.0, 0.0});
  const std::size_t na = std::min(a.size(), len);
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == cplx{0.0, 0.0}) continue;
    const std::size_t nb = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < nb; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline std::vector<cplx> series_inverse(const std::vector<cplx>& a, std::size_t len) {
  std::vector<cplx> inv(len, cplx{0.0, 0.0});
  inv[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < len; ++k) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * inv[k - j];
    inv[k] = -acc * inv[0];
  }
  return inv;
}

// Laurent data (d, c0, tail) of Psi for any domain kind.
struct LaurentData {
  double d;
  cplx c0;
  std::vector<cplx> tail;
};

inline LaurentData laurent_data(const Domain& dom) {
  switch (dom.kind) {
    case DomainKind::Disk:
      return {dom.radius, dom.center, {}};
    case DomainKind::Ellipse:
      return {dom.ellipse_alpha(), {0.0, 0.0}, {cplx{dom.ellipse_beta(), 0.0}}};
    case DomainKind::Laurent:
      return {dom.d, dom.c0, dom.tail};
  }
  return {1.0, {0.0, 0.0}, {}};
}

// Series V(t) with Phi(z) = (z/d) V(1/z), solved to order len-1 from
//   V = 1 - c0 t - sum_j c_j d^j t^{j+1} V^{-j}.
// Each fixed-point pass gains at least one exact order, so len passes
// suffice; in practice the loop exits as soon as V stops changing.
inline std::vector<cplx> phi_series(const LaurentData& ld, std::size_t len) {
  std::vector<cplx> v(len, cplx{0.0, 0.0});
  v[0] = 1.0;
  if (len > 1) v[1] = -ld.c0;
  if (ld.tail.empty()) return v;  // Psi affine: V is exact already

  std::vector<double> djpow(ld.tail.size() + 1, 1.0);
  for (std::size_t j = 1; j <= ld.tail.size(); ++j) djpow[j] = djpow[j - 1] * ld.d;

  for (std::size_t pass = 0; pass < len; ++pass) {
    std::vector<cplx> next(len, cplx{0.0, 0.0});
    next[0] = 1.0;
    if (len > 1) next[1] = -ld.c0;
    const std::vector<cplx> vinv = series_inverse(v, len);
    std::vector<cplx> vinv_j = vinv;
    for (std::size_t j = 1; j <= ld.tail.size(); ++j) {
      if (ld.tail[j - 1] != cplx{0.0, 0.0}) {
        const cplx factor = -ld.tail[j - 1] * djpow[j];
        for (std::size_t i = 0; i + j + 1 < len; ++i)
          next[i + j + 1] += factor * vinv_j[i];
      }
      if (j < ld.tail.size()) vinv_j = series_mul(vinv_j, vinv, len);
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < len; ++i) delta = std::max(delta, std::abs(next[i] - v[i]));
    v.swap(next);
    if (delta == 0.0) break;
  }
  return v;
}

// F_n coefficients (ascending powers of z) from V^n: the coefficient of
// z^{n-j} is d^{-n} [t^j] V^n for j = 0..n.
inline std::vector<cplx> faber_from_power(const std::vector<cplx>& vpow,
                                          double d, std::size_t n) {
  std::vector<cplx> f(n + 1, cplx{0.0, 0.0});
  const double dscale = std::pow(d, -static_cast<double>(n));
  if (!std::isfinite(dscale))
    throw ill_conditioned_error("faber: d^-n not representable at this degree");
  for (std::size_t j = 0; j <= n && j < vpow.size(); ++j) f[n - j] = vpow[j] * dscale;
  return f;
}

inline cplx horner(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

// Quadrature context on the boundary curve L_1 for the orthonormal bases.
struct BoundaryQuad {
  std::size_t m = 0;
  std::vector<cplx> z;           // Psi(w_i)
  std::vector<double> arc_w;     // (2 pi / m) |Psi'(w_i)|
  std::vector<cplx> area_w;      // (pi / m) Psi'(w_i) w_i
};

inline BoundaryQuad boundary_quad(const Domain& dom, std::size_t m) {
  BoundaryQuad q;
  q.m = m;
  q.z.resize(m);
  q.arc_w.resize(m);
  q.area_w.resize(m);
  const double two_pi = 6.283185307179586;
  for (std::size_t i = 0; i < m; ++i) {
    const cplx w = std::polar(1.0, two_pi * static_cast<double>(i) / static_cast<double>(m));
    const cplx dpsi = exterior_map_derivative(dom, w);
    q.z[i] = exterior_map(dom, w);
    q.arc_w[i] = (two_pi / static_cast<double>(m)) * std::abs(dpsi);
    q.area_w[i] = (3.141592653589793 / static_cast<double>(m)) * dpsi * w;
  }
  return q;
}

// <f, g> under arclength: sum w_i f_i conj(g_i).
inline cplx arc_inner(const BoundaryQuad& q, const std::vector<cplx>& f,
                      const std::vector<cplx>& g) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < q.m; ++i) acc += q.arc_w[i] * f[i] * std::conj(g[i]);
  return acc;
}

// <f, g> under area via Stokes: integral over G of f conj(g) dA equals
// (1/2i) contour integral of f(z) conj(G_int(z)) dz with G_int the
// antiderivative of g (zero constant term); g_anti holds G_int's node
// values.
inline cplx area_inner(const BoundaryQuad& q, const std::vector<cplx>& f,
                       const std::vector<cplx>& g_anti) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < q.m; ++i) acc += q.area_w[i] * f[i] * std::conj(g_anti[i]);
  return acc;
}

inline std::vector<cplx> antiderivative(const std::vector<cplx>& coeffs) {
  std::vector<cplx> a(coeffs.size() + 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    a[i + 1] = coeffs[i] / static_cast<double>(i + 1);
  return a;
}

// Modified Gram-Schmidt on the monomials under the requested boundary
// form, with one re-orthogonalization pass.  Throws when the relative norm
// of a candidate collapses (conditioning beyond recovery at this nmax /
// node count).
inline std::vector<std::vector<cplx>> gram_schmidt_basis(const Domain& dom,
                                                         std::size_t nmax,
                                                         std::size_t m,
                                                         bool area) {
  const BoundaryQuad q = boundary_quad(dom, m);

  // power table z_i^k, k <= nmax+1 (the +1 serves antiderivatives)
  std::vector<std::vector<cplx>> pw(nmax + 2, std::vector<cplx>(q.m));
  for (std::size_t i = 0; i < q.m; ++i) pw[0][i] = 1.0;
  for (std::size_t k = 1; k <= nmax + 1; ++k)
    for (std::size_t i = 0; i < q.m; ++i) pw[k][i] = pw[k - 1][i] * q.z[i];

  std::vector<std::vector<cplx>> cols(nmax + 1);
  std::vector<std::vector<cplx>> vals(nmax + 1), anti(nmax + 1);

  for (std::size_t k = 0; k <= nmax; ++k) {
    std::vector<cplx> c(k + 1, cplx{0.0, 0.0});
    c[k] = 1.0;
    std::vector<cplx> v = pw[k];
    std::vector<cplx> va;
    if (area) {
      va.resize(q.m);
      for (std::size_t i = 0; i < q.m; ++i)
        va[i] = pw[k + 1][i] / static_cast<double>(k + 1);
    }
    const double norm0 = std::sqrt(std::abs(
        area ? area_inner(q, v, va) : arc_inner(q, v, v)));

    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        const cplx h = area ? area_inner(q, v, anti[j]) : arc_inner(q, v, vals[j]);
        for (std::size_t i = 0; i <= j; ++i) c[i] -= h * cols[j][i];
        for (std::size_t i = 0; i < q.m; ++i) v[i] -= h * vals[j][i];
        if (area)
          for (std::size_t i = 0; i < q.m; ++i) va[i] -= h * anti[j][i];
      }
    }

    const double nrm2 = (area ? area_inner(q, v, va) : arc_inner(q, v, v)).real();
    const double nrm = nrm2 > 0.0 ? std::sqrt(nrm2) : 0.0;
    if (!(nrm > 1e-12 * norm0) || !std::isfinite(nrm))
      throw ill_conditioned_error(
          "orthonormalization lost all significance at degree " + std::to_string(k) +
          "; raise quadNodes or lower nmax");

    const double inv = 1.0 / nrm;
    for (auto& x : c) x *= inv;
    for (auto& x : v) x *= inv;
    if (area)
      for (auto& x : va) x *= inv;
    // leading-coefficient phase: real and positive
    const cplx lead = c[k];
    const cplx ph = lead / std::abs(lead);
    const cplx rot = std::conj(ph);
    for (auto& x : c) x *= rot;
    for (auto& x : v) x *= rot;
    if (area)
      for (auto& x : va) x *= rot;

    cols[k] = std::move(c);
    vals[k] = std::move(v);
    if (area) anti[k] = std::move(va);
  }
  return cols;
}

}  // namespace detail

inline std::size_t default_quad_nodes(std::size_t nmax) {
  return std::max<std::size_t>(4 * nmax + 16, 256);
}

/// Faber polynomial F_n of the domain, as ascending monomial coefficients.
/// F_0 = 1.
inline std::vector<cplx> faber_polynomial(const Domain& dom, std::size_t n) {
  if (n == 0) return {cplx{1.0, 0.0}};
  const auto ld = detail::laurent_data(dom);
  const std::size_t len = n + 1 + 8;  // truncation guard
  const std::vector<cplx> v = detail::phi_series(ld, len);
  // binary powering of V
  std::vector<cplx> acc{cplx{1.0, 0.0}};
  std::vector<cplx> base = v;
  std::size_t e = n;
  while (e > 0) {
    if (e & 1) acc = detail::series_mul(acc, base, len);
    e >>= 1;
    if (e > 0) base = detail::series_mul(base, base, len);
  }
  return detail::faber_from_power(acc, ld.d, n);
}

/// Builds the full coefficient table of a basis.  quad_nodes = 0 picks the
/// default max(4 nmax + 16, 256); it only matters for szego/bergman.
inline PolynomialBasis build_basis(BasisKind kind, const Domain* dom,
                                   std::size_t nmax, std::size_t quad_nodes = 0) {
  if (nmax < 1) throw std::invalid_argument("build_basis: nmax must be >= 1");
  PolynomialBasis basis;
  basis.kind = kind;
  basis.nmax = nmax;
  basis.cols.resize(nmax + 1);

  switch (kind) {
    case BasisKind::Monomial:
      for (std::size_t k = 0; k <= nmax; ++k) {
        basis.cols[k].assign(k + 1, cplx{0.0, 0.0});
        basis.cols[k][k] = 1.0;
      }
      return basis;
    case BasisKind::ShiftedMonomial:
      basis.cols[0] = {cplx{0.0, 0.0}};  // z^0 - 1: degenerate
      for (std::size_t k = 1; k <= nmax; ++k) {
        basis.cols[k].assign(k + 1, cplx{0.0, 0.0});
        basis.cols[k][k] = 1.0;
        basis.cols[k][0] = -1.0;
      }
      return basis;
    default:
      break;
  }

  if (dom == nullptr)
    throw std::invalid_argument("faber/szego/bergman bases need a domain");
  basis.domain = *dom;

  if (kind == BasisKind::Faber) {
    const auto ld = detail::laurent_data(*dom);
    const std::size_t len = nmax + 1 + 8;
    const std::vector<cplx> v = detail::phi_series(ld, len);
    basis.cols[0] = {cplx{1.0, 0.0}};
    std::vector<cplx> pow{cplx{1.0, 0.0}};
    for (std::size_t n = 1; n <= nmax; ++n) {
      pow = detail::series_mul(pow, v, len);
      basis.cols[n] = detail::faber_from_power(pow, ld.d, n);
    }
    return basis;
  }

  const std::size_t m = quad_nodes == 0 ? default_quad_nodes(nmax) : quad_nodes;
  if (m < 4 * nmax + 16)
    throw std::invalid_argument("build_basis: szego/bergman need quadNodes >= 4*nmax + 16");
  basis.cols = detail::gram_schmidt_basis(*dom, nmax, m, kind == BasisKind::Bergman);
  return basis;
}

inline PolynomialBasis build_basis(BasisKind kind, std::size_t nmax) {
  return build_basis(kind, nullptr, nmax);
}

enum class MeasureKind { Arclength, Area };

/// Matrix of inner products <B_j, B_k> under the requested boundary
/// measure; orthonormal bases should return the identity.
inline std::vector<std::vector<cplx>> gram_matrix(const PolynomialBasis& basis,
                                                  const Domain& dom,
                                                  MeasureKind measure,
                                                  std::size_t quad_nodes = 0) {
  const std::size_t m = quad_nodes == 0 ? default_quad_nodes(basis.nmax) : quad_nodes;
  const detail::BoundaryQuad q = detail::boundary_quad(dom, m);
  const std::size_t n = basis.nmax;

  std::vector<std::vector<cplx>> vals(n + 1), anti(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    vals[k].resize(q.m);
    for (std::size_t i = 0; i < q.m; ++i) vals[k][i] = detail::horner(basis.cols[k], q.z[i]);
    if (measure == MeasureKind::Area) {
      const auto ac = detail::antiderivative(basis.cols[k]);
      anti[k].resize(q.m);
      for (std::size_t i = 0; i < q.m; ++i) anti[k][i] = detail::horner(ac, q.z[i]);
    }
  }

  std::vector<std::vector<cplx>> g(n + 1, std::vector<cplx>(n + 1));
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t k = 0; k <= n; ++k)
      g[j][k] = measure == MeasureKind::Area ? detail::area_inner(q, vals[j], anti[k])
                                             : detail::arc_inner(q, vals[j], vals[k]);
  return g;
}

/// Empirical envelope of Carleman's asymptotic on the level curve L_rho:
/// ratio = |B_n| / (sqrt(n) rho^n) for Bergman, |B_n| / rho^n otherwise.
struct CarlemanReport {
  double rho = 0.0;
  struct Row {
    std::size_t n;
    double min_ratio;
    double max_ratio;
  };
  std::vector<Row> per_degree;
};

inline CarlemanReport carleman_ratios(const PolynomialBasis& basis, const Domain& dom,
                                      double rho, std::size_t n_lo, std::size_t n_hi) {
  if (!(rho > dom.r_inner))
    throw std::invalid_argument("carleman_ratios: rho must exceed r_inner");
  if (n_hi > basis.nmax || n_lo < 1 || n_lo > n_hi)
    throw std::invalid_argument("carleman_ratios: bad degree range");
  const LevelCurve curve = level_curve(dom, rho, 256);
  CarlemanReport report;
  report.rho = rho;
  const bool sqrt_factor = basis.kind == BasisKind::Bergman;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const double denom = (sqrt_factor ? std::sqrt(static_cast<double>(n)) : 1.0) *
                         std::pow(rho, static_cast<double>(n));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const cplx& z : curve.points) {
      const double r = std::abs(detail::horner(basis.cols[n], z)) / denom;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    report.per_degree.push_back({n, lo, hi});
  }
  return report;
}

}  // namespace rpz
