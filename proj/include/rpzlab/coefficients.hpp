#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpzlab/rng.hpp"

// Random coefficient ensembles and the sequence statistics driving the
// equidistribution dichotomy: root-wise maxima, trailing-window maxima,
// record indices and Hadamard-Ostrowski gap detection.
//
// Coefficients are stored as (log modulus, unit phase).  Laws with an
// infinite log-moment produce moduli far beyond double range (exp(1e6) is
// routine for log-Pareto with small alpha), so the log-scale form is the
// primary representation and `value()` is a convenience that may overflow
// to inf for such laws.

namespace rpz {

enum class DistKind {
  ComplexGaussian,   // independent standard normal real and imaginary parts
  UniformDisk,       // uniform on |z| <= radius
  RademacherComplex, // +/-1, +/-i with probability 1/4 each
  Cauchy,            // standard real Cauchy on the real axis
  LogPareto,         // |A| = exp(U^(-1/alpha)), uniform phase
  ShiftedLogPareto,  // A = exp(U^(-1/alpha)) real, support [e, inf)
  ExpExponential,    // A = exp(Exp(rate)) real, support [1, inf); Pareto tail
};

struct DistributionSpec {
  DistKind kind = DistKind::ComplexGaussian;
  double alpha = 1.0;   // tail exponent for the log-Pareto family
  double radius = 1.0;  // uniform-disk radius
  double rate = 1.0;    // exponential rate for ExpExponential

  static DistributionSpec complex_gaussian() { return {DistKind::ComplexGaussian}; }
  static DistributionSpec uniform_disk(double r) {
    DistributionSpec s{DistKind::UniformDisk};
    s.radius = r;
    return s;
  }
  static DistributionSpec rademacher_complex() { return {DistKind::RademacherComplex}; }
  static DistributionSpec cauchy() { return {DistKind::Cauchy}; }
  static DistributionSpec log_pareto(double a) {
    DistributionSpec s{DistKind::LogPareto};
    s.alpha = a;
    return s;
  }
  static DistributionSpec shifted_log_pareto(double a) {
    DistributionSpec s{DistKind::ShiftedLogPareto};
    s.alpha = a;
    return s;
  }
  static DistributionSpec exp_exponential(double rate = 1.0) {
    DistributionSpec s{DistKind::ExpExponential};
    s.rate = rate;
    return s;
  }

  void validate() const {
    if ((kind == DistKind::LogPareto || kind == DistKind::ShiftedLogPareto) &&
        !(alpha > 0.0))
      throw std::invalid_argument("log-pareto tail exponent must be positive");
    if (kind == DistKind::UniformDisk && !(radius > 0.0))
      throw std::invalid_argument("uniform-disk radius must be positive");
    if (kind == DistKind::ExpExponential && !(rate > 0.0))
      throw std::invalid_argument("exp-exponential rate must be positive");
  }

  /// True when every sample is real and >= 1 (the shifted-monomial
  /// ensembles require this).
  bool support_ge_one() const {
    return kind == DistKind::ShiftedLogPareto || kind == DistKind::ExpExponential;
  }
};

enum class LogMoment { Finite, Infinite };

/// Analytic classification of E[log+ |A_0|].  The log-Pareto family has an
/// infinite log-moment exactly when alpha <= 1; every other law in the menu
/// has power-law-or-lighter tails and a finite one.
inline LogMoment classify_log_moment(const DistributionSpec& spec) {
  switch (spec.kind) {
    case DistKind::LogPareto:
    case DistKind::ShiftedLogPareto:
      return spec.alpha <= 1.0 ? LogMoment::Infinite : LogMoment::Finite;
    default:
      return LogMoment::Finite;
  }
}

inline const char* to_string(DistKind k) {
  switch (k) {
    case DistKind::ComplexGaussian: return "complex-gaussian";
    case DistKind::UniformDisk: return "uniform-disk";
    case DistKind::RademacherComplex: return "rademacher-complex";
    case DistKind::Cauchy: return "cauchy";
    case DistKind::LogPareto: return "log-pareto";
    case DistKind::ShiftedLogPareto: return "shifted-log-pareto";
    case DistKind::ExpExponential: return "exp-exponential";
  }
  return "?";
}

inline DistKind dist_kind_from_string(const std::string& s) {
  if (s == "complex-gaussian" || s == "gaussian") return DistKind::ComplexGaussian;
  if (s == "uniform-disk") return DistKind::UniformDisk;
  if (s == "rademacher-complex" || s == "rademacher") return DistKind::RademacherComplex;
  if (s == "cauchy") return DistKind::Cauchy;
  if (s == "log-pareto") return DistKind::LogPareto;
  if (s == "shifted-log-pareto") return DistKind::ShiftedLogPareto;
  if (s == "exp-exponential") return DistKind::ExpExponential;
  throw std::invalid_argument("unknown distribution kind: " + s);
}

/// i.i.d. complex coefficients A_0..A_n in log-scale form.
/// Draw k consumes the uniforms at counters 2k and 2k+1 of the seed's
/// stream, so the sequence for a given (spec, seed) is a prefix-stable
/// function of the index: extending n appends draws without changing
/// earlier ones.
struct CoefficientSequence {
  DistributionSpec spec;
  std::uint64_t seed = 0;
  std::vector<double> log_abs;               // log |A_k|
  std::vector<std::complex<double>> phase;   // A_k / |A_k|, modulus 1

  std::size_t size() const { return log_abs.size(); }

  /// A_k as a plain complex number; +/-inf components when the modulus
  /// exceeds double range.
  std::complex<double> value(std::size_t k) const {
    return phase[k] * std::exp(log_abs[k]);
  }
};

namespace detail {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline void draw_one(const DistributionSpec& spec, std::uint64_t seed,
                     std::size_t k, double& log_abs, std::complex<double>& phase) {
  const std::uint64_t c0 = 2 * static_cast<std::uint64_t>(k);
  switch (spec.kind) {
    case DistKind::ComplexGaussian: {
      // Box-Muller; the pair (r cos, r sin) has i.i.d. N(0,1) components.
      const double u1 = uniform_at(seed, c0);
      const double u2 = uniform_at(seed, c0 + 1);
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double t = kTwoPi * u2;
      phase = {std::cos(t), std::sin(t)};
      log_abs = r > 0.0 ? std::log(r) : -std::numeric_limits<double>::infinity();
      break;
    }
    case DistKind::UniformDisk: {
      const double u1 = uniform_at(seed, c0);
      const double u2 = uniform_at(seed, c0 + 1);
      const double r = spec.radius * std::sqrt(u1);
      const double t = kTwoPi * u2;
      phase = {std::cos(t), std::sin(t)};
      log_abs = std::log(r);
      break;
    }
    case DistKind::RademacherComplex: {
      switch (bits_at(seed, c0) & 3u) {
        case 0: phase = {1.0, 0.0}; break;
        case 1: phase = {-1.0, 0.0}; break;
        case 2: phase = {0.0, 1.0}; break;
        default: phase = {0.0, -1.0}; break;
      }
      log_abs = 0.0;
      break;
    }
    case DistKind::Cauchy: {
      const double u1 = uniform_at(seed, c0);
      const double x = std::tan(3.14159265358979323846 * (u1 - 0.5));
      phase = {x < 0.0 ? -1.0 : 1.0, 0.0};
      log_abs = std::log(std::abs(x));
      break;
    }
    case DistKind::LogPareto: {
      // Inverse CDF: P(|A| > x) = (log x)^(-alpha) for x >= e.
      const double u1 = uniform_at(seed, c0);
      const double u2 = uniform_at(seed, c0 + 1);
      log_abs = std::pow(u1, -1.0 / spec.alpha);
      const double t = kTwoPi * u2;
      phase = {std::cos(t), std::sin(t)};
      break;
    }
    case DistKind::ShiftedLogPareto: {
      const double u1 = uniform_at(seed, c0);
      log_abs = std::pow(u1, -1.0 / spec.alpha);
      phase = {1.0, 0.0};
      break;
    }
    case DistKind::ExpExponential: {
      // A = exp(E), E ~ Exponential(rate); P(A > x) = x^(-rate), x >= 1.
      const double u1 = uniform_at(seed, c0);
      log_abs = -std::log(u1) / spec.rate;
      phase = {1.0, 0.0};
      break;
    }
  }
}

}  // namespace detail

/// Samples A_0..A_n.  Deterministic given (spec, n, seed).
inline CoefficientSequence sample_coefficients(const DistributionSpec& spec,
                                               std::size_t n,
                                               std::uint64_t seed) {
  spec.validate();
  if (n >= (std::size_t{1} << 32))
    throw std::length_error("coefficient sequence too large to allocate");
  CoefficientSequence seq;
  seq.spec = spec;
  seq.seed = seed;
  seq.log_abs.resize(n + 1);
  seq.phase.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    detail::draw_one(spec, seed, k, seq.log_abs[k], seq.phase[k]);
  return seq;
}

/// Sequence statistics of eqs. computed on one coefficient stream.
/// rootwise_max[n] = (max_{0<=k<=n} |A_k|)^(1/n) and window_max[n] the same
/// over the trailing window ceil(n - b log n) < k <= n; both defined for
/// n >= 1 ([0] is 0 and unused).  record_indices lists every n >= 1 with
/// |A_n|^(1/n) >= max_{1<=k<=n-1} |A_k|^(1/k) (non-strict; n = 1 always
/// qualifies).
struct SequenceDiagnostics {
  double window_b = 0.0;
  std::vector<double> rootwise_max;
  std::vector<double> window_max;
  std::vector<std::size_t> record_indices;
};

inline SequenceDiagnostics sequence_diagnostics(const CoefficientSequence& seq,
                                                double b) {
  if (!(b > 0.0)) throw std::invalid_argument("window parameter b must be positive");
  if (seq.size() == 0) throw std::invalid_argument("empty coefficient sequence");
  const std::size_t n_max = seq.size() - 1;
  SequenceDiagnostics d;
  d.window_b = b;
  d.rootwise_max.assign(n_max + 1, 0.0);
  d.window_max.assign(n_max + 1, 0.0);

  double run_log = seq.log_abs[0];
  double record_level = -std::numeric_limits<double>::infinity();  // max log|A_k|/k
  for (std::size_t n = 1; n <= n_max; ++n) {
    run_log = std::max(run_log, seq.log_abs[n]);
    d.rootwise_max[n] = std::exp(run_log / static_cast<double>(n));

    // Window (ceil(n - b log n), n]; empty windows fall back to |A_n|^(1/n).
    const double cut = std::ceil(static_cast<double>(n) -
                                 b * std::log(static_cast<double>(n)));
    std::size_t k_min = 0;
    if (cut >= 0.0) k_min = static_cast<std::size_t>(cut) + 1;
    if (k_min > n) {
      d.window_max[n] = std::exp(seq.log_abs[n] / static_cast<double>(n));
    } else {
      double wlog = -std::numeric_limits<double>::infinity();
      for (std::size_t k = k_min; k <= n; ++k)
        wlog = std::max(wlog, seq.log_abs[k]);
      d.window_max[n] = std::exp(wlog / static_cast<double>(n));
    }

    const double level = seq.log_abs[n] / static_cast<double>(n);
    if (level >= record_level) d.record_indices.push_back(n);
    record_level = std::max(record_level, level);
  }
  return d;
}

/// A maximal index interval [start, end] (indices >= 1) with
/// |A_j| <= q^j throughout and start <= c * end.
struct Gap {
  std::size_t start = 0;
  std::size_t end = 0;
  double estimated_q = 0.0;  // max_j |A_j|^(1/j) over the interval
};

struct GapReport {
  double c = 0.0;
  double q = 0.0;
  std::vector<Gap> gaps;
};

/// Scans for Hadamard-Ostrowski gaps: maximal runs of exponentially small
/// coefficients that reach back to at least a fraction c of their endpoint.
inline GapReport detect_gaps(const CoefficientSequence& seq, double c, double q) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("gap parameter c must be in (0,1)");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("gap parameter q must be in (0,1)");
  GapReport report;
  report.c = c;
  report.q = q;
  const double log_q = std::log(q);
  const std::size_t n_max = seq.size() == 0 ? 0 : seq.size() - 1;
  std::size_t run_start = 0;
  bool in_run = false;
  auto flush = [&](std::size_t run_end) {
    if (!in_run) return;
    in_run = false;
    if (static_cast<double>(run_start) <= c * static_cast<double>(run_end) &&
        run_end > run_start) {
      double max_level = -std::numeric_limits<double>::infinity();
      for (std::size_t j = run_start; j <= run_end; ++j)
        max_level = std::max(max_level, seq.log_abs[j] / static_cast<double>(j));
      report.gaps.push_back({run_start, run_end, std::exp(max_level)});
    }
  };
  for (std::size_t j = 1; j <= n_max; ++j) {
    const bool small = seq.log_abs[j] <= static_cast<double>(j) * log_q;
    if (small && !in_run) {
      in_run = true;
      run_start = j;
    } else if (!small) {
      flush(j - 1);
    }
  }
  flush(n_max);
  return report;
}

}  // namespace rpz
