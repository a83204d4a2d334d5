#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "rpos/core.hpp"
#include "rpos/domains.hpp"
#include "rpos/kernels.hpp"
#include "rpos/measures.hpp"
#include "rpos/numerics/quadrature.hpp"

namespace rpos {

using CVector = Eigen::VectorXcd;

inline constexpr double reflection_tolerance = 1e-10;
inline constexpr double membership_tolerance = 1e-10;

// L^2(R, nu) on the nodes of nu. nodes[n-1-j] = -nodes[j].
struct ModularData {
  double beta = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> delta;  // e^{-beta lambda_j}

  std::size_t size() const { return nodes.size(); }
  std::size_t mirror(std::size_t j) const { return nodes.size() - 1 - j; }
};

// Requires d nu(-lambda) = e^{-beta lambda} d nu(lambda).
inline ModularData build_modular(const MeasureOnR& nu, double beta) {
  if (!(beta > 0.0)) fail(ErrorKind::ParameterOutOfRange, "beta must be positive");
  const ReflectionReport rr = reflection_check(nu, {beta, ReflectionOrder::Beta});
  if (!rr.symmetric_support || !(rr.defect < reflection_tolerance))
    fail(ErrorKind::ReflectionViolation, "measure does not satisfy the order-beta reflection");
  std::vector<Atom> pts;
  nu.for_each_node([&](double l, double w) { pts.push_back({l, w}); });
  std::sort(pts.begin(), pts.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
  std::vector<Atom> merged;
  for (const Atom& a : pts) {
    if (!merged.empty() && std::abs(a.location - merged.back().location) <= atom_merge_tol)
      merged.back().weight += a.weight;
    else
      merged.push_back(a);
  }
  const std::size_t n = merged.size();
  ModularData md;
  md.beta = beta;
  for (std::size_t j = 0; j < n; ++j) {
    const Atom& a = merged[j];
    const Atom& b = merged[n - 1 - j];
    if (std::abs(a.location + b.location) > atom_merge_tol * std::max(1.0, std::abs(a.location)))
      fail(ErrorKind::ReflectionViolation, "node set is not symmetric");
    if (a.weight <= 0.0 && b.weight <= 0.0) continue;
    if (a.weight <= 0.0 || b.weight <= 0.0) fail(ErrorKind::ReflectionViolation, "mirror node has zero weight");
    md.nodes.push_back(a.location);
    md.weights.push_back(a.weight);
  }
  for (double l : md.nodes) md.delta.push_back(std::exp(-beta * l));
  return md;
}

template <class F>
CVector sample(const ModularData& md, F f) {
  CVector v(static_cast<Eigen::Index>(md.size()));
  for (std::size_t j = 0; j < md.size(); ++j) v[static_cast<Eigen::Index>(j)] = f(md.nodes[j]);
  return v;
}

inline cplx inner(const ModularData& md, const CVector& u, const CVector& v) {
  CompensatedComplexSum s;
  for (std::size_t j = 0; j < md.size(); ++j) {
    const auto k = static_cast<Eigen::Index>(j);
    s += md.weights[j] * std::conj(u[k]) * v[k];
  }
  return s.value();
}

inline double norm(const ModularData& md, const CVector& v) { return std::sqrt(inner(md, v, v).real()); }

// (J v)(lambda) = e^{-beta lambda / 2} conj(v(-lambda))
inline CVector apply_J(const ModularData& md, const CVector& v) {
  CVector r(v.size());
  for (std::size_t j = 0; j < md.size(); ++j)
    r[static_cast<Eigen::Index>(j)] =
        std::exp(-md.beta * md.nodes[j] / 2.0) * std::conj(v[static_cast<Eigen::Index>(md.mirror(j))]);
  return r;
}

// Delta^p v = e^{-p beta lambda} v
inline CVector apply_Delta(const ModularData& md, const CVector& v, double p = 1.0) {
  CVector r(v.size());
  for (std::size_t j = 0; j < md.size(); ++j)
    r[static_cast<Eigen::Index>(j)] = std::exp(-p * md.beta * md.nodes[j]) * v[static_cast<Eigen::Index>(j)];
  return r;
}

// Delta^{-it/beta} v = e^{i t lambda} v
inline CVector modular_group(const ModularData& md, const CVector& v, double t) {
  CVector r(v.size());
  for (std::size_t j = 0; j < md.size(); ++j)
    r[static_cast<Eigen::Index>(j)] = std::exp(I * (t * md.nodes[j])) * v[static_cast<Eigen::Index>(j)];
  return r;
}

inline CVector J_Delta_J(const ModularData& md, const CVector& v) { return apply_J(md, apply_Delta(md, apply_J(md, v))); }

// S = J Delta^{1/2}; (S v)(lambda) = conj(v(-lambda))
inline CVector tomita(const ModularData& md, const CVector& v) { return apply_J(md, apply_Delta(md, v, 0.5)); }

struct MembershipReport {
  bool member = false;
  double defect = 0.0;  // max_j |v(lambda_j) - conj(v(-lambda_j))|
};

inline MembershipReport standard_membership(const ModularData& md, const CVector& v) {
  MembershipReport r;
  for (std::size_t j = 0; j < md.size(); ++j)
    r.defect = std::max(r.defect, std::abs(v[static_cast<Eigen::Index>(j)] -
                                           std::conj(v[static_cast<Eigen::Index>(md.mirror(j))])));
  r.member = r.defect < membership_tolerance;
  return r;
}

// psi(t) = <v, Delta^{-it/beta} v>
inline cplx modular_coefficient(const ModularData& md, const CVector& v, double t) {
  return inner(md, v, modular_group(md, v, t));
}

// |v|^2 nu, whose Fourier transform is the modular coefficient
inline MeasureOnR coefficient_measure(const ModularData& md, const CVector& v) {
  std::vector<Atom> at;
  for (std::size_t j = 0; j < md.size(); ++j) at.push_back({md.nodes[j], std::norm(v[static_cast<Eigen::Index>(j)]) * md.weights[j]});
  return MeasureOnR(std::move(at));
}

// ---------------------------------------------------------------- midline coefficient

// e^{-a x} / (1 + e^{-b x})^2 with 0 < a < 2b, without overflow
inline double skewed_bump(double a, double b, double x) {
  if (x >= 0.0) {
    const double e = std::exp(-b * x);
    return std::exp(-a * x) / ((1.0 + e) * (1.0 + e));
  }
  const double e = std::exp(b * x);
  return std::exp((2.0 * b - a) * x) / ((1.0 + e) * (1.0 + e));
}

// density of the midline coefficient: (1/4 pi) e^{-beta l/2} / (1 + e^{-beta l})^2
inline double psi_midline_density(double beta, double l) { return skewed_bump(beta / 2.0, beta, l) / (4.0 * pi); }

inline cplx psi_midline_closed(double beta, double t) {
  return cplx(beta / 2.0, t) / (4.0 * beta * beta * std::cosh(pi * t / beta));
}

struct PsiReport {
  cplx final_form;  // (1/4 pi) int e^{-beta l/2} / (1 + e^{-beta l})^2 e^{itl} dl
  cplx third_form;  // (1/2 pi) int e^{-beta l} / (1 + e^{-2 beta l})^2 e^{2itl} dl
  cplx defining;    // int conj(Q(x)) Q(x + 2t) dx, Q = Q(., beta i / 2) on R
  cplx closed;
  double defect = 0.0;  // largest pairwise difference
};

// psi(t) = <Q_{beta i/2}, Delta^{-it/beta} Q_{beta i/2}> on the strip
inline PsiReport psi_hardy_midline(double beta, double t, double tol = 1e-12) {
  const Domain d = Domain::strip(beta);
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> pts = {-inf, 0.0, inf};
  QuadOptions opt;
  opt.tol = tol;
  PsiReport r;
  r.final_form = quad_pieces([&](double l) { return psi_midline_density(beta, l) * std::exp(I * (t * l)); }, pts, opt).value;
  r.third_form = quad_pieces([&](double l) { return skewed_bump(beta, 2.0 * beta, l) * std::exp(I * (2.0 * t * l)); }, pts, opt).value /
                 (2.0 * pi);
  const cplx m(0.0, beta / 2.0);
  r.defining = quad_pieces(
                   [&](double x) {
                     return std::conj(detail::szego_formula(d, x, m)) * detail::szego_formula(d, x + 2.0 * t, m);
                   },
                   {-inf, -2.0 * t, 0.0, inf}, opt)
                   .value;
  r.closed = psi_midline_closed(beta, t);
  r.defect = std::max({std::abs(r.final_form - r.third_form), std::abs(r.final_form - r.defining),
                       std::abs(r.final_form - r.closed), std::abs(r.third_form - r.closed)});
  return r;
}

// ---------------------------------------------------------------- commutation relations

struct CommutationReport {
  std::size_t nodes = 0;
  double period = 0.0;
  std::vector<double> ts;        // requested t values
  std::vector<double> exact_ts;  // t snapped to the dual lattice 2 pi Z / period
  double s_exact = 0.0;          // a whole number of grid steps
  double s_interp = 0.0;         // fractional part 1/3 of a grid step
  double s_spectral = 0.0;
  double exact_defect = 0.0;     // V_s U_t = e^{its} U_t V_s, cyclic shift
  double interp_defect = 0.0;    // same, linear interpolation shift, interior half
  double spectral_defect = 0.0;  // same, Fourier shift, interior half
  double rrel_defect = 0.0;      // R U_t = e^{-beta t} U_t R, U_t translation, unwrapped rows
};

namespace detail {

inline std::vector<cplx> shift_cyclic(const std::vector<cplx>& f, long m) {
  const long n = static_cast<long>(f.size());
  std::vector<cplx> g(f.size());
  for (long j = 0; j < n; ++j) g[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(((j + m) % n + n) % n)];
  return g;
}

// (V_s f)(x) = f(x + s) by periodic linear interpolation
inline std::vector<cplx> shift_linear(const std::vector<cplx>& f, double s, double h) {
  const long m = static_cast<long>(std::floor(s / h));
  const double a = s / h - static_cast<double>(m);
  const auto g0 = shift_cyclic(f, m), g1 = shift_cyclic(f, m + 1);
  std::vector<cplx> g(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) g[j] = (1.0 - a) * g0[j] + a * g1[j];
  return g;
}

// (V_s f)(x) = f(x + s) by the discrete Fourier transform
inline std::vector<cplx> shift_spectral(const std::vector<cplx>& f, double s, double period) {
  Eigen::FFT<double> fft;
  std::vector<cplx> F;
  fft.fwd(F, f);
  const long n = static_cast<long>(f.size());
  for (long k = 0; k < n; ++k) {
    const long kk = k <= n / 2 ? k : k - n;
    const double omega = 2.0 * pi * static_cast<double>(kk) / period;
    F[static_cast<std::size_t>(k)] *= (2 * k == n) ? cplx(std::cos(omega * s)) : std::exp(I * (omega * s));
  }
  std::vector<cplx> g;
  fft.inv(g, F);
  return g;
}

}  // namespace detail

inline CommutationReport commutation_check(double beta, std::size_t n_nodes = 4096, std::vector<double> ts = {0.1, 1.0, 10.0},
                                           double period = 40.0, double s = 0.37) {
  if (!(beta > 0.0)) fail(ErrorKind::ParameterOutOfRange, "beta must be positive");
  if (n_nodes < 16) fail(ErrorKind::ParameterOutOfRange, "need at least 16 nodes");
  CommutationReport r;
  r.nodes = n_nodes;
  r.period = period;
  r.ts = std::move(ts);
  const double h = period / static_cast<double>(n_nodes);
  std::vector<double> x(n_nodes);
  for (std::size_t j = 0; j < n_nodes; ++j) x[j] = -period / 2.0 + h * static_cast<double>(j);
  std::vector<cplx> f(n_nodes);
  for (std::size_t j = 0; j < n_nodes; ++j) f[j] = std::exp(-x[j] * x[j] / 2.0);

  const long ms = std::lround(s / h);
  r.s_exact = static_cast<double>(ms) * h;
  r.s_interp = (std::floor(s / h) + 1.0 / 3.0) * h;
  r.s_spectral = s;
  const std::size_t lo = n_nodes / 4, hi = n_nodes - n_nodes / 4;

  auto defect = [&](auto shift, double t, double sh, std::size_t a, std::size_t b) {
    std::vector<cplx> g(n_nodes);
    for (std::size_t j = 0; j < n_nodes; ++j) g[j] = std::exp(I * (t * x[j])) * f[j];
    const auto lhs = shift(g);
    const auto vf = shift(f);
    double d = 0.0;
    for (std::size_t j = a; j < b; ++j) d = std::max(d, std::abs(lhs[j] - std::exp(I * (t * (x[j] + sh))) * vf[j]));
    return d;
  };

  for (double t : r.ts) {
    const double te = 2.0 * pi * std::round(t * period / (2.0 * pi)) / period;
    r.exact_ts.push_back(te);
    r.exact_defect = std::max(
        r.exact_defect, defect([&](const std::vector<cplx>& g) { return detail::shift_cyclic(g, ms); }, te, r.s_exact, 0, n_nodes));
    r.interp_defect = std::max(
        r.interp_defect,
        defect([&](const std::vector<cplx>& g) { return detail::shift_linear(g, r.s_interp, h); }, t, r.s_interp, lo, hi));
    r.spectral_defect = std::max(
        r.spectral_defect,
        defect([&](const std::vector<cplx>& g) { return detail::shift_spectral(g, s, period); }, t, s, lo, hi));

    // (U_t f)_j = f_{j - m}, t = m h; R = diag(e^{-beta x_j})
    const long m = std::lround(std::abs(t) / h);
    const double tt = static_cast<double>(m) * h;
    for (std::size_t j = static_cast<std::size_t>(m); j < n_nodes; ++j) {
      const double ru = std::exp(-beta * x[j]);
      const double ur = std::exp(-beta * tt) * std::exp(-beta * x[j - static_cast<std::size_t>(m)]);
      r.rrel_defect = std::max(r.rrel_defect, std::abs(ru - ur) / ru);
    }
  }
  return r;
}

}  // namespace rpos
