#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "rpos/core.hpp"
#include "rpos/domains.hpp"
#include "rpos/numerics/summation.hpp"

namespace rpos {

struct Atom {
  double location;
  double weight;
};

// Uniform grid x0 + j h, integrated with the trapezoid rule.
// A closed end marks the true end of the support; open ends are truncated tails
// and are watched by the convergence monitor of fourier().
struct DensityGrid {
  double x0 = 0.0;
  double h = 1.0;
  std::vector<double> values;
  bool closed_left = false;
  bool closed_right = false;

  std::size_t size() const { return values.size(); }
  double node(std::size_t j) const { return x0 + h * static_cast<double>(j); }
  double last() const { return node(values.size() - 1); }
  double weight(std::size_t j) const {
    if (values.size() == 1) return 0.0;
    return (j == 0 || j + 1 == values.size()) ? 0.5 * h : h;
  }
  bool symmetric(double tol = 1e-12) const {
    return !values.empty() && std::abs(x0 + last()) <= tol * std::max(1.0, std::abs(x0));
  }
};

inline constexpr double atom_merge_tol = 1e-12;

class MeasureOnR {
 public:
  MeasureOnR() = default;
  explicit MeasureOnR(std::vector<Atom> atoms, std::optional<DensityGrid> density = std::nullopt)
      : density_(std::move(density)) {
    for (const Atom& a : atoms) {
      if (!std::isfinite(a.location) || !std::isfinite(a.weight)) fail(ErrorKind::InvalidArgument, "non-finite atom");
      if (a.weight < 0.0) fail(ErrorKind::NegativeWeight, "atom weight must be nonnegative");
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
    for (const Atom& a : atoms) {
      if (a.weight == 0.0) continue;
      if (!atoms_.empty() && std::abs(a.location - atoms_.back().location) <= atom_merge_tol)
        atoms_.back().weight += a.weight;
      else
        atoms_.push_back(a);
    }
    if (density_) {
      if (!(density_->h > 0.0) || density_->values.empty()) fail(ErrorKind::InvalidArgument, "bad density grid");
      for (double v : density_->values)
        if (!(v >= 0.0) || !std::isfinite(v)) fail(ErrorKind::NegativeWeight, "density values must be finite and >= 0");
    }
  }

  static MeasureOnR dirac(double location, double weight = 1.0) { return MeasureOnR({{location, weight}}); }

  // Samples f on [a, b] with spacing close to h (the grid ends exactly at a and b).
  template <class F>
  static MeasureOnR from_density(F f, double a, double b, double h, bool closed_left = false, bool closed_right = false) {
    const auto n = static_cast<std::size_t>(std::llround((b - a) / h));
    DensityGrid g;
    g.x0 = a;
    g.h = (b - a) / static_cast<double>(n);
    g.closed_left = closed_left;
    g.closed_right = closed_right;
    g.values.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) g.values[j] = f(j == n ? b : a + g.h * static_cast<double>(j));
    return MeasureOnR({}, std::move(g));
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<DensityGrid>& density() const { return density_; }
  bool has_density() const { return density_.has_value(); }

  // Calls f(location, weight) for every atom and every density node (trapezoid weight times value).
  template <class F>
  void for_each_node(F f) const {
    for (const Atom& a : atoms_) f(a.location, a.weight);
    if (density_)
      for (std::size_t j = 0; j < density_->size(); ++j) f(density_->node(j), density_->weight(j) * density_->values[j]);
  }

  double total_mass() const {
    CompensatedSum s;
    for_each_node([&](double, double w) { s += w; });
    return s.value();
  }

  double support_min() const {
    double m = std::numeric_limits<double>::infinity();
    for_each_node([&](double x, double w) {
      if (w > 0.0) m = std::min(m, x);
    });
    return m;
  }

  // Pointwise multiplication by a nonnegative function.
  template <class F>
  MeasureOnR scaled(F factor) const {
    std::vector<Atom> at;
    for (const Atom& a : atoms_) at.push_back({a.location, a.weight * factor(a.location)});
    std::optional<DensityGrid> d = density_;
    if (d)
      for (std::size_t j = 0; j < d->size(); ++j) d->values[j] *= factor(d->node(j));
    return MeasureOnR(std::move(at), std::move(d));
  }

  // mu^v(E) = mu(-E)
  MeasureOnR reflected() const {
    std::vector<Atom> at;
    for (const Atom& a : atoms_) at.push_back({-a.location, a.weight});
    std::optional<DensityGrid> d;
    if (density_) {
      DensityGrid g;
      g.x0 = -density_->last();
      g.h = density_->h;
      g.values.assign(density_->values.rbegin(), density_->values.rend());
      g.closed_left = density_->closed_right;
      g.closed_right = density_->closed_left;
      d = std::move(g);
    }
    return MeasureOnR(std::move(at), std::move(d));
  }

 private:
  std::vector<Atom> atoms_;
  std::optional<DensityGrid> density_;
};

// ---------------------------------------------------------------- transforms

namespace detail {

inline void require_grid_converged(const MeasureOnR& nu, const std::vector<double>& mags, double total) {
  const DensityGrid& g = *nu.density();
  const std::size_t n = g.size();
  const std::size_t m = std::max<std::size_t>(1, n / 20);
  if (n < 20) return;
  double left = 0.0, right = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    left += mags[j];
    right += mags[n - 1 - j];
  }
  const double lim = 1e-12 * total;
  if ((!g.closed_left && left > lim) || (!g.closed_right && right > lim))
    fail(ErrorKind::DivergentTransform, "density tail does not decay at this argument");
}

}  // namespace detail

// nu^(z) = int e^{i z lambda} d nu(lambda)
inline cplx fourier(const MeasureOnR& nu, cplx z) {
  CompensatedComplexSum s;
  for (const Atom& a : nu.atoms()) s += a.weight * std::exp(I * z * a.location);
  if (nu.has_density()) {
    const DensityGrid& g = *nu.density();
    std::vector<double> mags(g.size());
    double total = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double l = g.node(j);
      const cplx term = g.weight(j) * g.values[j] * std::exp(I * z * l);
      if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
        fail(ErrorKind::DivergentTransform, "overflow in transform");
      mags[j] = std::abs(term);
      total += mags[j];
      s += term;
    }
    detail::require_grid_converged(nu, mags, total);
  }
  const cplx v = s.value();
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail(ErrorKind::DivergentTransform, "transform diverges");
  return v;
}

// L(nu)(y) = int e^{-lambda y} d nu(lambda)
inline double laplace(const MeasureOnR& nu, double y) {
  CompensatedSum s;
  for (const Atom& a : nu.atoms()) s += a.weight * std::exp(-a.location * y);
  if (nu.has_density()) {
    const DensityGrid& g = *nu.density();
    std::vector<double> mags(g.size());
    double total = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      mags[j] = g.weight(j) * g.values[j] * std::exp(-g.node(j) * y);
      total += mags[j];
      s += mags[j];
    }
    detail::require_grid_converged(nu, mags, total);
  }
  if (!std::isfinite(s.value())) fail(ErrorKind::DivergentTransform, "Laplace transform diverges");
  return s.value();
}

// ------------------------------------------------------------- gamma maps

namespace detail {

template <class Cp, class Cm>
MeasureOnR fold_to_line(const MeasureOnR& mu, Cp cplus, Cm cminus) {
  if (mu.support_min() < 0.0) fail(ErrorKind::NegativeSupport, "measure must live on [0, inf)");
  std::vector<Atom> at;
  for (const Atom& a : mu.atoms()) {
    at.push_back({a.location, a.weight * cplus(a.location)});
    at.push_back({-a.location, a.weight * cminus(a.location)});
  }
  std::optional<DensityGrid> dens;
  if (mu.has_density()) {
    const DensityGrid& g = *mu.density();
    // pad with zeros down to 0 so that the image grid is symmetric
    const double k = g.x0 / g.h;
    if (g.x0 < 0.0 || std::abs(k - std::round(k)) > 1e-9)
      fail(ErrorKind::InvalidArgument, "density grid must start at a multiple of h >= 0");
    const auto pad = static_cast<std::size_t>(std::llround(k));
    std::vector<double> half(pad, 0.0);
    half.insert(half.end(), g.values.begin(), g.values.end());
    const std::size_t n = half.size();
    DensityGrid out;
    out.h = g.h;
    out.x0 = -g.h * static_cast<double>(n - 1);
    out.closed_left = g.closed_right;
    out.closed_right = g.closed_right;
    out.values.resize(2 * n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      const double l = g.h * static_cast<double>(j);
      out.values[n - 1 + j] = half[j] * cplus(l);
      if (j > 0) out.values[n - 1 - j] = half[j] * cminus(l);
    }
    dens = std::move(out);
  }
  return MeasureOnR(std::move(at), std::move(dens));
}

template <class Cp>
MeasureOnR unfold_from_line(const MeasureOnR& nu, Cp cplus, double zero_share) {
  std::vector<Atom> at;
  for (const Atom& a : nu.atoms()) {
    if (a.location > 0.0)
      at.push_back({a.location, a.weight / cplus(a.location)});
    else if (a.location == 0.0)
      at.push_back({0.0, a.weight * zero_share});
  }
  std::optional<DensityGrid> dens;
  if (nu.has_density()) {
    const DensityGrid& g = *nu.density();
    const double k = -g.x0 / g.h;
    if (std::abs(k - std::round(k)) > 1e-9 || k < 0) fail(ErrorKind::InvalidArgument, "grid does not contain 0");
    const auto j0 = static_cast<std::size_t>(std::llround(k));
    DensityGrid out;
    out.x0 = 0.0;
    out.h = g.h;
    out.closed_right = g.closed_right;
    for (std::size_t j = j0; j < g.size(); ++j) out.values.push_back(g.values[j] / cplus(g.h * double(j - j0)));
    dens = std::move(out);
  }
  return MeasureOnR(std::move(at), std::move(dens));
}

}  // namespace detail

// gamma(mu) = mu + e_beta mu^v
inline MeasureOnR gamma_map(const MeasureOnR& mu, double beta) {
  return detail::fold_to_line(mu, [](double) { return 1.0; }, [beta](double l) { return std::exp(-beta * l); });
}

// Gamma(mu) = (mu + mu^v) / (1 + e_{-beta})
inline MeasureOnR Gamma_map(const MeasureOnR& mu, double beta) {
  return detail::fold_to_line(
      mu, [beta](double l) { return 1.0 / (1.0 + std::exp(-beta * l)); },
      [beta](double l) { return 1.0 / (1.0 + std::exp(beta * l)); });
}

// Inverse of gamma_map on its image.
inline MeasureOnR gamma_inverse(const MeasureOnR& nu, double) {
  return detail::unfold_from_line(nu, [](double) { return 1.0; }, 0.5);
}

// Inverse of Gamma_map on its image.
inline MeasureOnR Gamma_inverse(const MeasureOnR& nu, double beta) {
  return detail::unfold_from_line(nu, [beta](double l) { return 1.0 / (1.0 + std::exp(-beta * l)); }, 1.0);
}

// M_kappa with kappa = 1/(1 + e_{-beta})
inline MeasureOnR multiply_kappa(const MeasureOnR& mu, double beta) {
  return mu.scaled([beta](double l) { return 1.0 / (1.0 + std::exp(-beta * l)); });
}

// ------------------------------------------------------------ reflection

enum class ReflectionOrder { Beta, TwoBeta };

struct ReflectionClass {
  double beta;
  ReflectionOrder order = ReflectionOrder::Beta;
  double c() const { return order == ReflectionOrder::Beta ? beta : 2.0 * beta; }
};

struct ReflectionReport {
  double defect = 0.0;
  bool symmetric_support = true;
};

// max |nu(-lambda) - e^{-c lambda} nu(lambda)| / nu(lambda) over lambda > 0
inline ReflectionReport reflection_check(const MeasureOnR& nu, const ReflectionClass& rc) {
  ReflectionReport r;
  const double inf = std::numeric_limits<double>::infinity();
  const double c = rc.c();
  auto rel = [&](double l, double pos, double neg) {
    if (pos == 0.0) return neg == 0.0 ? 0.0 : inf;
    return std::abs(neg - std::exp(-c * l) * pos) / pos;
  };
  const auto& at = nu.atoms();
  for (const Atom& a : at) {
    if (a.location == 0.0) continue;
    auto it = std::find_if(at.begin(), at.end(),
                           [&](const Atom& b) { return std::abs(b.location + a.location) <= atom_merge_tol; });
    if (it == at.end()) {
      r.symmetric_support = false;
      r.defect = inf;
      return r;
    }
    if (a.location > 0.0) r.defect = std::max(r.defect, rel(a.location, a.weight, it->weight));
  }
  if (nu.has_density()) {
    const DensityGrid& g = *nu.density();
    if (!g.symmetric()) {
      r.symmetric_support = false;
      r.defect = inf;
      return r;
    }
    const std::size_t n = g.size();
    for (std::size_t j = 0; j < n / 2; ++j) {
      const std::size_t k = n - 1 - j;
      r.defect = std::max(r.defect, rel(g.node(k), g.values[k], g.values[j]));
    }
  }
  return r;
}

struct KmsReport {
  double defect = 0.0;
  double worst_t = 0.0;
};

// max over t of |nu^(i beta + t) - conj(nu^(t))|
inline KmsReport kms_check(const MeasureOnR& nu, double beta, const std::vector<double>& ts) {
  KmsReport r;
  for (double t : ts) {
    const double d = std::abs(fourier(nu, cplx(t, beta)) - std::conj(fourier(nu, cplx(t, 0.0))));
    if (d > r.defect) {
      r.defect = d;
      r.worst_t = t;
    }
  }
  return r;
}

// y |-> Gamma(mu)^(i y) on [0, beta]
inline std::function<double(double)> rp_circle_from_measure(const MeasureOnR& mu, double beta) {
  MeasureOnR nu = Gamma_map(mu, beta);
  return [nu = std::move(nu), beta](double y) {
    y = std::fmod(y, beta);
    if (y < 0) y += beta;
    return fourier(nu, cplx(0.0, y)).real();
  };
}

// x |-> Gamma(mu)^(x) on the real line
inline std::function<cplx(double)> rp_line_from_circle(const MeasureOnR& mu, double beta) {
  MeasureOnR nu = Gamma_map(mu, beta);
  return [nu = std::move(nu)](double x) { return fourier(nu, cplx(x, 0.0)); };
}

// K(z, w) = nu^(z - conj(w)) for z, w in the strip
inline cplx kernel_from_measure(const MeasureOnR& nu, double beta, cplx z, cplx w) {
  const Domain s = Domain::strip(beta);
  require_inside(s, z, "z");
  require_inside(s, w, "w");
  return fourier(nu, z - std::conj(w));
}

struct ThetaInvolutionReport {
  double kernel_defect = 0.0;
  double reflection_defect = 0.0;
};

inline ThetaInvolutionReport theta_involution_check(const MeasureOnR& nu, double beta,
                                                    const std::vector<std::pair<cplx, cplx>>& pairs) {
  ThetaInvolutionReport r;
  const cplx bi(0.0, beta);
  for (auto [z, w] : pairs)
    r.kernel_defect = std::max(r.kernel_defect, std::abs(kernel_from_measure(nu, beta, bi - z, bi - w) -
                                                         kernel_from_measure(nu, beta, z, w)));
  r.reflection_defect = reflection_check(nu, {beta, ReflectionOrder::TwoBeta}).defect;
  return r;
}

// ------------------------------------------------------------- factories

struct GridSpec {
  double cutoff;
  double h;
};

inline GridSpec default_strip_grid(double beta) { return {200.0 / beta, 0.02 / beta}; }

// d nu = d lambda / (2 pi (1 + e^{-2 beta lambda})), the Szego measure of the strip
inline MeasureOnR szego_measure(double beta, std::optional<GridSpec> spec = std::nullopt) {
  const GridSpec g = spec.value_or(default_strip_grid(beta));
  return MeasureOnR::from_density(
      [beta](double l) {
        const double e = std::exp(-2.0 * beta * std::abs(l));
        return (l >= 0.0 ? 1.0 : e) / (2.0 * pi * (1.0 + e));
      },
      -g.cutoff, g.cutoff, g.h);
}

// d nu = lambda d lambda / (4 pi^2 (1 - e^{-2 beta lambda})), the Bergman measure of the strip
inline MeasureOnR bergman_measure(double beta, std::optional<GridSpec> spec = std::nullopt) {
  const GridSpec g = spec.value_or(default_strip_grid(beta));
  return MeasureOnR::from_density(
      [beta](double l) {
        if (std::abs(l) < 1e-8) return (1.0 + beta * l) / (8.0 * pi * pi * beta);
        return l / (-std::expm1(-2.0 * beta * l)) / (4.0 * pi * pi);
      },
      -g.cutoff, g.cutoff, g.h);
}

// mu_s^(z) = (i/z)^s on the upper half-plane
inline cplx riesz_hat(double s, cplx z) {
  if (!(s > 0.0)) fail(ErrorKind::ParameterOutOfRange, "need s > 0");
  require_inside(Domain::half_plane(), z, "z");
  return std::pow(I / z, s);
}

// d mu_s = p^{s-1} dp / Gamma(s) on (0, cutoff]
inline MeasureOnR riesz_measure(double s, double cutoff = 60.0, double h = 1e-4) {
  if (!(s > 0.0)) fail(ErrorKind::ParameterOutOfRange, "need s > 0");
  const double g = std::tgamma(s);
  if (s >= 1.0)
    return MeasureOnR::from_density([s, g](double p) { return std::pow(p, s - 1.0) / g; }, 0.0, cutoff, h, true,
                                    false);
  // integrable singularity at 0: start half a step in
  DensityGrid d;
  d.x0 = h / 2;
  d.h = h;
  d.closed_left = true;
  for (double p = h / 2; p <= cutoff; p += h) d.values.push_back(std::pow(p, s - 1.0) / g);
  return MeasureOnR({}, std::move(d));
}

// int_cutoff^inf e^{-p y} d mu_s(p): the part of |mu_s^(x + i y)| dropped by the grid.
inline double riesz_tail_bound(double s, double cutoff, double y) {
  if (!(y > 0.0)) return std::numeric_limits<double>::infinity();
  return boost::math::gamma_q(s, cutoff * y) / std::pow(y, s);
}

// d nu_s = |p|^{s-2} p dp / (Gamma(s) (1 - e^{-2 beta p})), s > 1.
// For s < 2 the density is singular at 0 and the grid is staggered around it.
inline MeasureOnR nu_s_measure(double s, double beta, double cutoff = 40.0, double h = 1e-3) {
  if (!(s > 1.0)) fail(ErrorKind::ParameterOutOfRange, "nu_s is locally finite only for s > 1");
  const double g = std::tgamma(s);
  auto f = [s, beta, g](double p) {
    if (p == 0.0) return s == 2.0 ? 1.0 / (2.0 * beta) : 0.0;
    return std::pow(std::abs(p), s - 2.0) * p / (-std::expm1(-2.0 * beta * p)) / g;
  };
  if (s >= 2.0) return MeasureOnR::from_density(f, -cutoff, cutoff, h);
  DensityGrid d;
  const auto m = static_cast<std::size_t>(std::llround(cutoff / h));
  d.h = h;
  d.x0 = -(static_cast<double>(m) - 0.5) * h;
  d.values.resize(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    const double p = (static_cast<double>(k) + 0.5) * h;
    d.values[m + k] = f(p);
    d.values[m - 1 - k] = f(-p);
  }
  return MeasureOnR({}, std::move(d));
}

struct KappaReport {
  cplx from_nu;     // int e^{i t p} e^{-eps|p|} (1 - e^{-2 beta p}) d nu_s(p)
  cplx from_riesz;  // 2 i Im mu_s^(t + i eps)
  double defect;
};

// kappa(t) = nu_s^(t) - nu_s^(-t) = 2 i Im mu_s^(t), Abel-regularized by e^{-eps|p|}.
inline KappaReport kappa_check(const MeasureOnR& nu_s, const MeasureOnR& mu_s, double beta, double t, double eps) {
  CompensatedComplexSum s;
  for (const Atom& a : nu_s.atoms())
    s += a.weight * (-std::expm1(-2.0 * beta * a.location)) * std::exp(-eps * std::abs(a.location)) *
         std::exp(I * t * a.location);
  if (nu_s.has_density()) {
    const DensityGrid& g = *nu_s.density();
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double p = g.node(j);
      s += g.weight(j) * g.values[j] * (-std::expm1(-2.0 * beta * p)) * std::exp(-eps * std::abs(p)) *
           std::exp(I * t * p);
    }
  }
  const cplx m = fourier(mu_s, cplx(t, eps));
  KappaReport r{s.value(), 2.0 * I * m.imag(), 0.0};
  r.defect = std::abs(r.from_nu - r.from_riesz);
  return r;
}

}  // namespace rpos
