#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "rpzlab/domain.hpp"
#include "rpzlab/polynomial.hpp"
#include "rpzlab/roots.hpp"

// Equidistribution diagnostics for a set of polynomial zeros: angles of the
// conformal pushforward, star discrepancy against the uniform circle law
// (the equilibrium measure's pullback), radial band statistics, collapse
// detection, and the 1/n log-modulus profile on level curves.

namespace rpz {

/// Angles arg Phi(Z_k) for every root where Phi is defined; roots inside
/// L_{r_inner} are only counted.
struct PushforwardAngles {
  std::vector<double> angles;    // in [0, 2 pi)
  std::size_t interior_count = 0;
};

inline PushforwardAngles pushforward_angles(const std::vector<cplx>& roots,
                                            const Domain& dom) {
  PushforwardAngles out;
  out.angles.reserve(roots.size());
  for (const cplx& z : roots) {
    const auto w = try_inverse_map(dom, z);
    if (!w) {
      ++out.interior_count;
      continue;
    }
    double th = std::arg(*w);
    if (th < 0.0) th += 6.283185307179586;
    out.angles.push_back(th);
  }
  return out;
}

/// Star discrepancy of angles against the uniform measure on [0, 2 pi):
/// D* = sup_t |F_n(t) - t / 2 pi|, attained at sample points, computed by
/// the sorted-sample formula.
inline double star_discrepancy(std::vector<double> angles) {
  if (angles.empty())
    throw std::invalid_argument("star_discrepancy: empty angle list");
  std::sort(angles.begin(), angles.end());
  const double n = static_cast<double>(angles.size());
  double d = 0.0;
  for (std::size_t j = 0; j < angles.size(); ++j) {
    const double u = angles[j] / 6.283185307179586;
    const double up = (static_cast<double>(j) + 1.0) / n - u;
    const double dn = u - static_cast<double>(j) / n;
    d = std::max(d, std::max(up, dn));
  }
  return std::min(d, 1.0);
}

/// Per-trial equidistribution summary.  Masses are fractions of all roots;
/// the band and interior classes are disjoint by construction.
struct EquiStats {
  std::size_t n = 0;                 // number of roots
  double angular_discrepancy = 1.0;  // 1.0 when no root has a defined angle
  double radial_mean_dev = 0.0;      // mean | |Phi| - 1 | over mapped roots
  double band_mass = 0.0;            // fraction with |Phi| in [1-eps, 1+eps]
  double interior_mass = 0.0;        // fraction with no defined Phi
  double max_root_modulus = 0.0;     // max |Phi| over mapped roots, 0 if none
};

inline EquiStats equi_stats(const std::vector<cplx>& roots, const Domain& dom,
                            double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("equi_stats: epsilon must be in (0, 0.5)");
  EquiStats st;
  st.n = roots.size();
  if (roots.empty()) return st;
  std::vector<double> angles;
  angles.reserve(roots.size());
  std::size_t in_band = 0, interior = 0;
  double dev_sum = 0.0, max_mod = 0.0;
  for (const cplx& z : roots) {
    const auto w = try_inverse_map(dom, z);
    if (!w) {
      ++interior;
      continue;
    }
    const double mod = std::abs(*w);
    max_mod = std::max(max_mod, mod);
    dev_sum += std::abs(mod - 1.0);
    if (mod >= 1.0 - epsilon && mod <= 1.0 + epsilon) ++in_band;
    double th = std::arg(*w);
    if (th < 0.0) th += 6.283185307179586;
    angles.push_back(th);
  }
  const double n = static_cast<double>(roots.size());
  st.band_mass = static_cast<double>(in_band) / n;
  st.interior_mass = static_cast<double>(interior) / n;
  st.max_root_modulus = max_mod;
  if (!angles.empty()) {
    st.radial_mean_dev = dev_sum / static_cast<double>(angles.size());
    st.angular_discrepancy = star_discrepancy(std::move(angles));
  }
  return st;
}

/// True when every root is interior-classified or has |Phi| <= rho: the
/// all-zeros-inside-L_rho event of the necessity mechanism.
inline bool collapse_detect(const std::vector<cplx>& roots, const Domain& dom,
                            double rho) {
  if (!(rho > dom.r_inner && rho < 1.0))
    throw std::invalid_argument("collapse_detect: need r_inner < rho < 1");
  for (const cplx& z : roots) {
    const auto w = try_inverse_map(dom, z);
    if (w && std::abs(*w) > rho) return false;
  }
  return true;
}

/// Deviation of (1/n) log |P| from log R over the level curve L_R.
/// R = 1 probes the sup norm on E; R > 1 probes |P|^(1/n) -> |Phi|.
struct LognormProfile {
  double mean_dev = 0.0;
  double max_dev = 0.0;
  std::size_t skipped_nodes = 0;  // exact zeros of P on the curve
};

inline LognormProfile lognorm_profile(const MonomialPolynomial& poly,
                                      const Domain& dom, double R, std::size_t m) {
  if (!(R >= 1.0)) throw std::invalid_argument("lognorm_profile: R must be >= 1");
  if (poly.degree < 1) throw std::invalid_argument("lognorm_profile: degree must be >= 1");
  const LevelCurve curve = level_curve(dom, R, m);
  const double log_r = std::log(R);
  const double n = static_cast<double>(poly.degree);
  LognormProfile prof;
  double sum = 0.0;
  std::size_t used = 0;
  for (const cplx& z : curve.points) {
    const double la = evaluate_log_abs(poly, z);
    if (!std::isfinite(la)) {
      ++prof.skipped_nodes;
      continue;
    }
    const double dev = std::abs(la / n - log_r);
    sum += dev;
    prof.max_dev = std::max(prof.max_dev, dev);
    ++used;
  }
  if (used > 0) prof.mean_dev = sum / static_cast<double>(used);
  return prof;
}

}  // namespace rpz
