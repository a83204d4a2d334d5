#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "rpos/core.hpp"
#include "rpos/domains.hpp"
#include "rpos/kernels.hpp"
#include "rpos/measures.hpp"
#include "rpos/numerics/summation.hpp"

namespace rpos {

inline constexpr long default_series_terms = 10000;
inline constexpr double pole_distance = 1e-8;

struct SeriesEval {
  cplx value;
  long terms_used = 0;
  double tail_bound = 0.0;  // bound for the omitted tail
  cplx closed;              // closed form at the same point
  double defect = 0.0;      // |value - closed|
};

namespace detail {

inline void require_terms(long N) {
  if (N < 1) fail(ErrorKind::ParameterOutOfRange, "need N >= 1");
}

// sum_{|n| <= N} (-1)^n / (z - n), paired as 1/z + sum_{n>=1} (-1)^n 2z / (z^2 - n^2)
inline cplx csc_paired_sum(cplx z, long N) {
  CompensatedComplexSum s;
  for (long n = N; n >= 1; --n) {
    const double nn = static_cast<double>(n);
    s += (n % 2 ? -2.0 : 2.0) * z / (z * z - nn * nn);
  }
  s += 1.0 / z;
  return s.value();
}

// Grouping the paired terms n, n+1 gives |a_n - a_{n+1}| <= 64|z| / (9 n^3) for n >= 2|z|.
inline double csc_tail_bound(double az, long N) {
  const double m = static_cast<double>(N) + 1.0;
  if (m < 2.0 * az) return std::numeric_limits<double>::infinity();
  return 16.0 * az / (9.0 * m * m) * (1.0 + 4.0 / m);
}

}  // namespace detail

// pi / sin(pi z) = sum (-1)^n / (z - n)
inline SeriesEval csc_partial_fractions(cplx z, long N = default_series_terms) {
  detail::require_terms(N);
  if (std::abs(z - std::round(z.real())) < pole_distance) fail(ErrorKind::PoleAtInteger, "z is an integer");
  SeriesEval r;
  r.value = detail::csc_paired_sum(z, N);
  r.terms_used = 2 * N + 1;
  r.tail_bound = detail::csc_tail_bound(std::abs(z), N);
  r.closed = pi / std::sin(pi * z);
  r.defect = std::abs(r.value - r.closed);
  return r;
}

// (pi / 2 beta) / sinh(pi z / 2 beta) = sum (-1)^k / (z + 2 k i beta)
inline SeriesEval sinh_partial_fractions(double beta, cplx z, long N = default_series_terms) {
  detail::require_terms(N);
  if (!(beta > 0.0)) fail(ErrorKind::ParameterOutOfRange, "beta must be positive");
  const cplx zeta = -I * z / (2.0 * beta);
  if (std::abs(zeta - std::round(zeta.real())) * 2.0 * beta < pole_distance)
    fail(ErrorKind::PoleOnLattice, "z lies on 2 i beta Z");
  SeriesEval r;
  r.value = detail::csc_paired_sum(zeta, N) / (2.0 * I * beta);
  r.terms_used = 2 * N + 1;
  r.tail_bound = detail::csc_tail_bound(std::abs(zeta), N) / (2.0 * beta);
  r.closed = (pi / (2.0 * beta)) / std::sinh(pi * z / (2.0 * beta));
  r.defect = std::abs(r.value - r.closed);
  return r;
}

// Q(z, w) = (i / 2 pi) sum (-1)^n / (z - conj(w) + 2 n beta i)
inline SeriesEval szego_series(double beta, cplx z, cplx w, long N = default_series_terms) {
  const Domain d = Domain::strip(beta);
  require_inside(d, z, "z");
  require_inside(d, w, "w");
  SeriesEval r = sinh_partial_fractions(beta, z - std::conj(w), N);
  const cplx c = I / (2.0 * pi);
  r.value *= c;
  r.tail_bound /= 2.0 * pi;
  r.closed = szego(d, z, w);
  r.defect = std::abs(r.value - r.closed);
  return r;
}

struct SzegoSplit {
  SeriesEval plus;   // n >= 0
  SeriesEval minus;  // n < 0
};

// Q_w^+ and Q_w^-: the one-sided alternating sums, each with N + 1 resp. N terms.
inline SzegoSplit szego_series_split(double beta, cplx z, cplx w, long N = default_series_terms) {
  detail::require_terms(N);
  const Domain d = Domain::strip(beta);
  require_inside(d, z, "z");
  require_inside(d, w, "w");
  const cplx u = z - std::conj(w), c = I / (2.0 * pi);
  CompensatedComplexSum sp, sm;
  for (long n = N; n >= 0; --n) sp += (n % 2 ? -1.0 : 1.0) / (u + 2.0 * static_cast<double>(n) * beta * I);
  for (long n = N; n >= 1; --n) sm += (n % 2 ? -1.0 : 1.0) / (u - 2.0 * static_cast<double>(n) * beta * I);
  // consecutive terms m, m+1 differ by at most 2 beta / (2 m beta - |u|)^2
  auto tail = [&](double m) {
    const double a = 2.0 * m * beta - std::abs(u);
    if (a <= 0.0) return std::numeric_limits<double>::infinity();
    return (2.0 * beta / (a * a) + 1.0 / (2.0 * a)) / (2.0 * pi);
  };
  SzegoSplit r;
  r.plus.value = c * sp.value();
  r.plus.terms_used = N + 1;
  r.plus.tail_bound = tail(static_cast<double>(N) + 1.0);
  r.minus.value = c * sm.value();
  r.minus.terms_used = N;
  r.minus.tail_bound = tail(static_cast<double>(N) + 1.0);
  const cplx q = szego(d, z, w);
  r.plus.closed = r.minus.closed = q;
  r.plus.defect = r.minus.defect = std::abs(r.plus.value + r.minus.value - q);
  return r;
}

// B(z, w) = -(1 / 4 pi^2) sum_k 1 / (z - conj(w) + 2 k i beta)^2
inline SeriesEval bergman_series(double beta, cplx z, cplx w, long N = default_series_terms) {
  detail::require_terms(N);
  const Domain d = Domain::strip(beta);
  require_inside(d, z, "z");
  require_inside(d, w, "w");
  const cplx u = z - std::conj(w);
  CompensatedComplexSum s;
  for (long k = N; k >= 1; --k) {
    const cplx a = u + 2.0 * static_cast<double>(k) * beta * I, b = u - 2.0 * static_cast<double>(k) * beta * I;
    s += 1.0 / (a * a) + 1.0 / (b * b);
  }
  s += 1.0 / (u * u);
  SeriesEval r;
  r.value = -s.value() / (4.0 * pi * pi);
  r.terms_used = 2 * N + 1;
  const double a = 2.0 * static_cast<double>(N) * beta - std::abs(u);
  r.tail_bound = a > 0.0 ? 1.0 / (beta * a) / (4.0 * pi * pi) : std::numeric_limits<double>::infinity();
  r.closed = bergman_strip(beta, z, w);
  r.defect = std::abs(r.value - r.closed);
  return r;
}

// ---------------------------------------------------------------- measure splitting

enum class SplittingMode { Alternating, Plain };

struct Splitting {
  MeasureOnR nu;
  MeasureOnR plus;   // restriction to [0, inf); a zero atom is shared equally
  MeasureOnR minus;  // restriction to (-inf, 0]
};

namespace detail {

inline void require_symmetric(const MeasureOnR& mu) {
  const auto& at = mu.atoms();
  for (const Atom& a : at) {
    bool found = false;
    for (const Atom& b : at)
      if (std::abs(a.location + b.location) <= atom_merge_tol &&
          std::abs(a.weight - b.weight) <= 1e-12 * std::max(1.0, a.weight))
        found = true;
    if (!found) fail(ErrorKind::AsymmetricInput, "atoms are not symmetric");
  }
  if (!mu.has_density()) return;
  const DensityGrid& g = *mu.density();
  if (!g.symmetric() || g.size() % 2 == 0)
    fail(ErrorKind::AsymmetricInput, "density grid must be symmetric with a node at 0");
  const std::size_t n = g.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double a = g.values[j], b = g.values[n - 1 - j];
    if (std::abs(a - b) > 1e-12 * std::max({1.0, a, b})) fail(ErrorKind::AsymmetricInput, "density is not even");
  }
}

}  // namespace detail

// Alternating: d nu = d mu / (1 + e^{-2 beta lambda}); Plain: d nu = sgn(lambda) d mu / (1 - e^{-2 beta lambda}).
inline Splitting geometric_splitting(const MeasureOnR& mu, double beta, SplittingMode mode) {
  if (!(beta > 0.0)) fail(ErrorKind::ParameterOutOfRange, "beta must be positive");
  detail::require_symmetric(mu);
  auto factor = [&](double l) {
    if (mode == SplittingMode::Alternating) {
      const double e = std::exp(-2.0 * beta * std::abs(l));
      return (l >= 0.0 ? 1.0 : e) / (1.0 + e);
    }
    return l > 0.0 ? 1.0 / -std::expm1(-2.0 * beta * l) : 1.0 / std::expm1(-2.0 * beta * l);
  };
  std::vector<Atom> all, plus, minus;
  for (const Atom& a : mu.atoms()) {
    if (std::abs(a.location) <= atom_merge_tol) {
      if (mode == SplittingMode::Plain) fail(ErrorKind::AtomAtZero, "plain splitting needs mu({0}) = 0");
      const double w = a.weight / 2.0;
      all.push_back({0.0, w});
      plus.push_back({0.0, w / 2.0});
      minus.push_back({0.0, w / 2.0});
      continue;
    }
    const Atom b{a.location, a.weight * factor(a.location)};
    all.push_back(b);
    (a.location > 0.0 ? plus : minus).push_back(b);
  }
  std::optional<DensityGrid> dall, dplus, dminus;
  if (mu.has_density()) {
    const DensityGrid& g = *mu.density();
    const std::size_t n = g.size(), m = n / 2;
    DensityGrid out = g;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == m) continue;
      out.values[j] = g.values[j] * factor(g.node(j));
    }
    if (mode == SplittingMode::Alternating) {
      out.values[m] = g.values[m] / 2.0;
    } else {
      if (g.values[m] != 0.0) fail(ErrorKind::InvalidArgument, "plain splitting needs a density vanishing at 0");
      out.values[m] = n >= 3 ? 0.5 * (out.values[m - 1] + out.values[m + 1]) : 0.0;
    }
    DensityGrid p, q;
    p.h = q.h = g.h;
    p.x0 = 0.0;
    p.values.assign(out.values.begin() + static_cast<std::ptrdiff_t>(m), out.values.end());
    p.closed_left = true;
    p.closed_right = g.closed_right;
    q.x0 = g.x0;
    q.values.assign(out.values.begin(), out.values.begin() + static_cast<std::ptrdiff_t>(m) + 1);
    q.closed_left = g.closed_left;
    q.closed_right = true;
    dall = std::move(out);
    dplus = std::move(p);
    dminus = std::move(q);
  }
  return {MeasureOnR(std::move(all), std::move(dall)), MeasureOnR(std::move(plus), std::move(dplus)),
          MeasureOnR(std::move(minus), std::move(dminus))};
}

}  // namespace rpos
