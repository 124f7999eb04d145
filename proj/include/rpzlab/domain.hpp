#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpzlab/rng.hpp"

// Analytic Jordan regions described by their exterior conformal map
// Psi : {|w| > 1} -> exterior of E, normalized Psi(w) = cap * w + O(1).
// Because the boundary is analytic, Psi extends univalently to an annulus
// |w| > r_inner with r_inner < 1; Phi is the inverse map, the Green
// function of the exterior is log |Phi|, and the level curves L_rho are
// the images of circles |w| = rho.

namespace rpz {

using cplx = std::complex<double>;

/// Thrown when a point has no exterior-map preimage with |w| > r_inner,
/// i.e. lies too deep inside the region for Phi to be defined.
struct interior_point_error : std::runtime_error {
  explicit interior_point_error(const std::string& what) : std::runtime_error(what) {}
};

enum class DomainKind { Disk, Ellipse, Laurent };

inline const char* to_string(DomainKind k) {
  switch (k) {
    case DomainKind::Disk: return "disk";
    case DomainKind::Ellipse: return "ellipse";
    case DomainKind::Laurent: return "laurent";
  }
  return "?";
}

struct Domain {
  DomainKind kind = DomainKind::Disk;

  // Disk
  cplx center{0.0, 0.0};
  double radius = 1.0;

  // Ellipse with semi-axes a >= b > 0 and foci on the real axis.
  // Psi(w) = alpha w + beta / w, alpha = (a+b)/2, beta = (a-b)/2.
  double a = 1.0, b = 1.0;

  // Laurent: Psi(w) = d w + c0 + sum_j tail[j-1] w^-j.
  double d = 1.0;
  cplx c0{0.0, 0.0};
  std::vector<cplx> tail;

  double capacity = 1.0;
  double r_inner = 0.0;  // Psi is univalent (numerically) on |w| > r_inner

  double ellipse_alpha() const { return 0.5 * (a + b); }
  double ellipse_beta() const { return 0.5 * (a - b); }

  static Domain disk(cplx center, double radius);
  static Domain ellipse(double a, double b);
  static Domain laurent(double d, cplx c0, std::vector<cplx> tail);
};

/// Psi(w); requires |w| > r_inner.
inline cplx exterior_map(const Domain& dom, cplx w) {
  if (!(std::abs(w) > dom.r_inner))
    throw std::invalid_argument("exterior_map: |w| must exceed r_inner");
  switch (dom.kind) {
    case DomainKind::Disk:
      return dom.center + dom.radius * w;
    case DomainKind::Ellipse:
      return dom.ellipse_alpha() * w + dom.ellipse_beta() / w;
    case DomainKind::Laurent: {
      cplx z = dom.d * w + dom.c0;
      const cplx winv = 1.0 / w;
      cplx wp = winv;
      for (const cplx& cj : dom.tail) {
        z += cj * wp;
        wp *= winv;
      }
      return z;
    }
  }
  return {};
}

/// Psi'(w); the Laurent series is differentiated termwise.
inline cplx exterior_map_derivative(const Domain& dom, cplx w) {
  switch (dom.kind) {
    case DomainKind::Disk:
      return {dom.radius, 0.0};
    case DomainKind::Ellipse:
      return dom.ellipse_alpha() - dom.ellipse_beta() / (w * w);
    case DomainKind::Laurent: {
      cplx dz{dom.d, 0.0};
      const cplx winv = 1.0 / w;
      cplx wp = winv * winv;
      for (std::size_t j = 0; j < dom.tail.size(); ++j) {
        dz -= static_cast<double>(j + 1) * dom.tail[j] * wp;
        wp *= winv;
      }
      return dz;
    }
  }
  return {};
}

namespace detail {

// Effective univalence check: pairwise injectivity of Psi on a grid over
// the annulus rho < |w| <= 4.  An estimate, not a certificate.
inline bool univalent_on_grid(const Domain& dom, double rho) {
  constexpr int kRadii = 12;
  constexpr int kAngles = 24;
  std::vector<cplx> w_pts, z_pts;
  w_pts.reserve(kRadii * kAngles);
  for (int i = 0; i < kRadii; ++i) {
    // Geometric spacing biased toward the inner edge, where folds appear.
    const double t = static_cast<double>(i) / (kRadii - 1);
    const double r = (rho + 1e-3) * std::pow(4.0 / (rho + 1e-3), t);
    for (int j = 0; j < kAngles; ++j) {
      const double th = 6.283185307179586 * (j + 0.5 * (i % 2)) / kAngles;
      w_pts.push_back(std::polar(r, th));
    }
  }
  z_pts.reserve(w_pts.size());
  for (const cplx& w : w_pts) z_pts.push_back(exterior_map(dom, w));
  const double scale = 1e-6 * dom.capacity;
  for (std::size_t i = 0; i < w_pts.size(); ++i)
    for (std::size_t j = i + 1; j < w_pts.size(); ++j) {
      const double dz = std::abs(z_pts[i] - z_pts[j]);
      const double dw = std::abs(w_pts[i] - w_pts[j]);
      if (dz < scale * dw) return false;
    }
  return true;
}

}  // namespace detail

inline Domain Domain::disk(cplx center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  Domain dom;
  dom.kind = DomainKind::Disk;
  dom.center = center;
  dom.radius = radius;
  dom.capacity = radius;
  dom.r_inner = 0.0;
  if (!detail::univalent_on_grid(dom, 1e-3))
    throw std::invalid_argument("disk map failed the univalence grid check");
  return dom;
}

inline Domain Domain::ellipse(double a, double b) {
  if (!(a >= b && b > 0.0))
    throw std::invalid_argument("ellipse requires a >= b > 0");
  Domain dom;
  dom.kind = DomainKind::Ellipse;
  dom.a = a;
  dom.b = b;
  dom.capacity = 0.5 * (a + b);
  // Psi' vanishes at |w| = sqrt(beta/alpha): the map degenerates there
  // (the unit circle's image collapses toward the focal segment).
  dom.r_inner = std::sqrt(dom.ellipse_beta() / dom.ellipse_alpha());
  if (!detail::univalent_on_grid(dom, dom.r_inner))
    throw std::invalid_argument("ellipse map failed the univalence grid check");
  return dom;
}

inline Domain Domain::laurent(double d, cplx c0, std::vector<cplx> tail) {
  if (!(d > 0.0)) throw std::invalid_argument("Laurent leading coefficient d must be positive");
  while (!tail.empty() && tail.back() == cplx{0.0, 0.0}) tail.pop_back();
  Domain dom;
  dom.kind = DomainKind::Laurent;
  dom.d = d;
  dom.c0 = c0;
  dom.tail = std::move(tail);
  dom.capacity = d;
  // Smallest rho on a 0.01-grid whose annulus passes the grid check, plus a
  // 0.05 safety margin.  An estimate of the true univalence radius.
  double found = -1.0;
  for (int i = 1; i <= 99; ++i) {
    const double rho = 0.01 * i;
    if (detail::univalent_on_grid(dom, rho)) {
      found = rho;
      break;
    }
  }
  if (found < 0.0 || found + 0.05 >= 1.0)
    throw std::invalid_argument(
        "Laurent map is not univalent near the unit circle; boundary is not an "
        "analytic Jordan curve for these coefficients");
  dom.r_inner = found + 0.05;
  return dom;
}

/// Non-throwing Phi(z): the preimage w with Psi(w) = z and |w| > r_inner,
/// or nullopt when z is interior to the univalence region.
inline std::optional<cplx> try_inverse_map(const Domain& dom, cplx z) {
  switch (dom.kind) {
    case DomainKind::Disk: {
      const cplx w = (z - dom.center) / dom.radius;
      if (!(std::abs(w) > dom.r_inner)) return std::nullopt;
      return w;
    }
    case DomainKind::Ellipse: {
      // w solves alpha w^2 - z w + beta = 0; take the root of larger
      // modulus.  The two roots multiply to beta/alpha = r_inner^2, so a
      // modulus tie happens exactly on the focal segment: interior.
      const double al = dom.ellipse_alpha();
      const double be = dom.ellipse_beta();
      const cplx s = std::sqrt(z * z - 4.0 * al * be);
      const cplx w1 = (z + s) / (2.0 * al);
      const cplx w2 = (z - s) / (2.0 * al);
      const cplx w = std::abs(w1) >= std::abs(w2) ? w1 : w2;
      if (!(std::abs(w) > dom.r_inner * (1.0 + 1e-12))) return std::nullopt;
      return w;
    }
    case DomainKind::Laurent: {
      // Damped Newton on Psi(w) = z from the far-field start (z - c0)/d.
      cplx w = (z - dom.c0) / dom.d;
      if (std::abs(w) <= dom.r_inner) w = 2.0 * dom.r_inner + 0.1;
      const double tol = 1e-12 * (1.0 + std::abs(z));
      double res = std::abs(exterior_map(dom, w) - z);
      for (int it = 0; it < 100 && res > tol; ++it) {
        const cplx dpsi = exterior_map_derivative(dom, w);
        if (dpsi == cplx{0.0, 0.0}) return std::nullopt;
        const cplx step = (exterior_map(dom, w) - z) / dpsi;
        double lambda = 1.0;
        cplx w_next = w - step;
        for (int h = 0; h < 30; ++h) {
          if (std::abs(w_next) > dom.r_inner) {
            const double res_next = std::abs(exterior_map(dom, w_next) - z);
            if (res_next < res) {
              w = w_next;
              res = res_next;
              break;
            }
          }
          lambda *= 0.5;
          w_next = w - lambda * step;
          if (h == 29) return std::nullopt;  // stalled
        }
      }
      if (res > tol) return std::nullopt;
      if (!(std::abs(w) > dom.r_inner)) return std::nullopt;
      return w;
    }
  }
  return std::nullopt;
}

/// Phi(z); throws interior_point_error when z is inside L_{r_inner}.
inline cplx inverse_map(const Domain& dom, cplx z) {
  auto w = try_inverse_map(dom, z);
  if (!w) throw interior_point_error("inverse_map: point is interior to the map's domain");
  return *w;
}

/// Green function of the exterior with pole at infinity: log |Phi(z)|.
inline double green_function(const Domain& dom, cplx z) {
  return std::log(std::abs(inverse_map(dom, z)));
}

struct LevelCurve {
  double rho = 1.0;
  std::vector<cplx> points;        // Psi(rho e^{2 pi i j / m})
  std::vector<cplx> deriv_samples; // Psi' at the same nodes
};

inline LevelCurve level_curve(const Domain& dom, double rho, std::size_t m) {
  if (!(rho > dom.r_inner))
    throw std::invalid_argument("level_curve: rho must exceed r_inner");
  if (m < 8) throw std::invalid_argument("level_curve: need at least 8 nodes");
  LevelCurve curve;
  curve.rho = rho;
  curve.points.reserve(m);
  curve.deriv_samples.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double th = 6.283185307179586 * static_cast<double>(j) / static_cast<double>(m);
    const cplx w = std::polar(rho, th);
    curve.points.push_back(exterior_map(dom, w));
    curve.deriv_samples.push_back(exterior_map_derivative(dom, w));
  }
  return curve;
}

/// m i.i.d. samples from the equilibrium measure of E: the pushforward of
/// the uniform circle law under Psi (harmonic measure from infinity).
inline std::vector<cplx> equilibrium_sample(const Domain& dom, std::size_t m,
                                            std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("equilibrium_sample: m must be >= 1");
  std::vector<cplx> pts;
  pts.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double th = 6.283185307179586 * uniform_at(seed, j);
    pts.push_back(exterior_map(dom, std::polar(1.0, th)));
  }
  return pts;
}

}  // namespace rpz
