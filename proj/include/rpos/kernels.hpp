#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "rpos/core.hpp"
#include "rpos/domains.hpp"
#include "rpos/numerics/gram.hpp"
#include "rpos/numerics/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace rpos {

namespace detail {

// Closed forms without domain checks; used for boundary values as well.
inline cplx szego_formula(const Domain& d, cplx z, cplx w) {
  switch (d.kind()) {
    case DomainKind::Disc: return 1.0 / (2.0 * pi * (1.0 - z * std::conj(w)));
    case DomainKind::HalfPlane: return I / (2.0 * pi * (z - std::conj(w)));
    case DomainKind::Strip: {
      const double b = d.beta();
      return (I / (4.0 * b)) / std::sinh(pi * (z - std::conj(w)) / (2.0 * b));
    }
  }
  return {};
}

}  // namespace detail

inline cplx szego(const Domain& d, cplx z, cplx w) {
  require_inside(d, z, "z");
  require_inside(d, w, "w");
  return detail::szego_formula(d, z, w);
}

// Q(z, x) for x on the boundary.
inline cplx szego_boundary(const Domain& d, cplx z, const BoundaryPoint& x) {
  require_inside(d, z, "z");
  return detail::szego_formula(d, z, x.embed());
}

inline double poisson(const Domain& d, cplx z, const BoundaryPoint& x) {
  require_inside(d, z, "z");
  switch (d.kind()) {
    case DomainKind::Disc: {
      const double r = std::abs(z), th = std::arg(z), t = x.coordinate;
      return (1.0 - r * r) / (2.0 * pi * (1.0 - 2.0 * r * std::cos(th - t) + r * r));
    }
    case DomainKind::HalfPlane: return z.imag() / (pi * std::norm(z - x.coordinate));
    case DomainKind::Strip: {
      const double b = d.beta();
      const double sh = std::sinh(pi * (z.real() - x.coordinate) / (2.0 * b));
      const double a = pi * z.imag() / (2.0 * b);
      const double tail = x.component == StripComponent::Lower ? std::sin(a) : std::cos(a);
      return std::sin(pi * z.imag() / b) / (4.0 * b * (sh * sh + tail * tail));
    }
  }
  return 0.0;
}

inline cplx bergman_strip(double beta, cplx z, cplx w) {
  const Domain d = Domain::strip(beta);
  require_inside(d, z, "z");
  require_inside(d, w, "w");
  const cplx c = std::cosh(pi * (z - std::conj(w)) / (2.0 * beta) - I * (pi / 2.0));
  return 1.0 / (16.0 * beta * beta * c * c);
}

// Bergman-type kernel Q^2 on every domain; on the strip this is bergman_strip.
inline cplx bergman(const Domain& d, cplx z, cplx w) {
  if (d.is_strip()) return bergman_strip(d.beta(), z, w);
  const cplx q = szego(d, z, w);
  return q * q;
}

inline cplx power_kernel(const Domain& d, double s, cplx z, cplx w) {
  if (!(s > 0.0)) fail(ErrorKind::ParameterOutOfRange, "power kernel needs s > 0");
  require_inside(d, z, "z");
  require_inside(d, w, "w");
  switch (d.kind()) {
    case DomainKind::Disc: return std::pow(1.0 - z * std::conj(w), -s) / (2.0 * pi);
    case DomainKind::HalfPlane: return std::pow(I / (z - std::conj(w)), s);
    case DomainKind::Strip: return std::pow(detail::szego_formula(d, z, w), s);
  }
  return {};
}

struct KernelKind {
  enum Tag { Szego, Bergman, Power } tag = Szego;
  double s = 1.0;

  static KernelKind szego() { return {Szego, 1.0}; }
  static KernelKind bergman() { return {Bergman, 2.0}; }
  static KernelKind power(double s) { return {Power, s}; }
};

inline cplx kernel(const Domain& d, const KernelKind& k, cplx z, cplx w) {
  switch (k.tag) {
    case KernelKind::Szego: return szego(d, z, w);
    case KernelKind::Bergman: return bergman(d, z, w);
    case KernelKind::Power: return power_kernel(d, k.s, z, w);
  }
  return {};
}

// F_w = Q_w / sqrt(Q(w,w)) for the fixed point w indexed by lambda; z in the closure.
inline cplx outer_F_lambda(const Domain& d, double lambda, cplx z) {
  const cplx w = fixed_point(d, lambda);
  if (!in_closure(d, z)) fail(ErrorKind::OutsideDomain, "z outside the closed " + d.name());
  const double qww = detail::szego_formula(d, w, w).real();
  return detail::szego_formula(d, z, w) / std::sqrt(qww);
}

// h_w = Q_w* / (R Q_w*) on the boundary.
inline cplx h_lambda(const Domain& d, double lambda, const BoundaryPoint& x) {
  const cplx w = fixed_point(d, lambda);
  if (d.is_strip()) {
    // ratio of sinh(a + i b) at equal real parts, divided through by cosh(a)
    const double b = d.beta();
    const double a = pi * (x.coordinate - lambda) / (2.0 * b);
    const double th = std::tanh(a);
    const double b_here = x.component == StripComponent::Lower ? pi / 4.0 : 3.0 * pi / 4.0;
    const double b_there = pi - b_here;
    const cplx num = th * std::cos(b_there) + I * std::sin(b_there);
    const cplx den = th * std::cos(b_here) + I * std::sin(b_here);
    return num / den;
  }
  const cplx num = std::conj(detail::szego_formula(d, w, x.embed()));
  const cplx den = std::conj(detail::szego_formula(d, w, reflect(x).embed()));
  if (!(std::abs(den) > 1e-300) || !std::isfinite(std::abs(num)))
    fail(ErrorKind::ZeroDenominator, "reflected Szego value vanishes");
  return num / den;
}

using BoundarySampler = std::function<cplx(const BoundaryPoint&)>;

struct BoundaryFunction {
  Domain domain;
  BoundarySampler sampler;
  int nodes = 1024;  // trapezoid nodes on the circle

  cplx operator()(const BoundaryPoint& x) const { return sampler(x); }
};

// Boundary values of a function given by a formula that extends to the closure.
inline BoundaryFunction boundary_values(const Domain& d, ComplexFunction f, int nodes = 1024) {
  return {d, [f = std::move(f)](const BoundaryPoint& x) { return f(x.embed()); }, nodes};
}

inline BoundaryFunction theta_w(const Domain& d, double lambda, const BoundaryFunction& f) {
  fixed_point(d, lambda);
  return {d,
          [d, lambda, g = f.sampler](const BoundaryPoint& x) { return h_lambda(d, lambda, x) * g(reflect(x)); },
          f.nodes};
}

// int over the boundary of F(x); arc length on the circle, both lines on the strip.
template <class F>
cplx boundary_integral(const Domain& d, F integrand, int nodes = 1024, double tol = 1e-12) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (d.kind()) {
    case DomainKind::Disc:
      return trapezoid_periodic([&](double t) { return cplx(integrand(boundary_point(d, t))); }, 0.0, 2.0 * pi,
                                static_cast<std::size_t>(nodes));
    case DomainKind::HalfPlane:
      return quad_pieces([&](double x) { return cplx(integrand(boundary_point(d, x))); }, {-inf, -1.0, 0.0, 1.0, inf},
                         QuadOptions{tol, 15, false})
          .value;
    case DomainKind::Strip: {
      cplx s{};
      for (auto c : {StripComponent::Lower, StripComponent::Upper})
        s += quad_pieces([&](double x) { return cplx(integrand(boundary_point(d, x, c))); }, {-inf, 0.0, inf},
                         QuadOptions{tol, 15, false})
                 .value;
      return s;
    }
  }
  return {};
}

// <f, g> = int conj(f) g over the boundary.
inline cplx boundary_inner(const BoundaryFunction& f, const BoundaryFunction& g, double tol = 1e-12) {
  return boundary_integral(
      f.domain, [&](const BoundaryPoint& x) { return std::conj(f(x)) * g(x); }, f.nodes, tol);
}

// int P_z(x) f(x) dx with breakpoints at the peak of the kernel.
inline cplx poisson_integral(const Domain& d, cplx z, const BoundaryFunction& f, double tol = 1e-12) {
  require_inside(d, z, "z");
  const double inf = std::numeric_limits<double>::infinity();
  auto integrand = [&](const BoundaryPoint& x) { return poisson(d, z, x) * f(x); };
  switch (d.kind()) {
    case DomainKind::Disc: return boundary_integral(d, integrand, f.nodes, tol);
    case DomainKind::HalfPlane: {
      const double a = z.real(), y = z.imag();
      return quad_pieces([&](double x) { return integrand(boundary_point(d, x)); },
                         {-inf, a - 10 * y, a - y, a, a + y, a + 10 * y, inf}, QuadOptions{tol, 15, false})
          .value;
    }
    case DomainKind::Strip: {
      const double a = z.real(), b = d.beta();
      cplx s{};
      for (auto c : {StripComponent::Lower, StripComponent::Upper})
        s += quad_pieces([&](double x) { return integrand(boundary_point(d, x, c)); },
                         {-inf, a - b, a - 0.1 * b, a, a + 0.1 * b, a + b, inf}, QuadOptions{tol, 15, false})
                 .value;
      return s;
    }
  }
  return {};
}

// Out(Psi^{1/2})(z) for z in the upper half-plane.
// The line is mapped onto (-pi/2, pi/2) by p = Re z + Im z tan(t), which centres the peak of the
// Cauchy kernel and leaves only logarithmic endpoint behaviour for the tanh-sinh rule.
template <class Psi>
cplx outer_from_modulus(Psi psi, cplx z, double tol = 1e-12) {
  require_inside(Domain::half_plane(), z, "z");
  const double x0 = z.real(), y = z.imag();
  auto g = [&](double t) -> cplx {
    const double c = std::cos(t);
    if (c <= 0.0) return 0.0;
    const double p = x0 + y * std::tan(t);
    const double v = psi(p);
    if (!(v > 0.0)) fail(ErrorKind::NonPositiveModulus, "modulus must be positive");
    // 1/(p-z) - p/(1+p^2) = (1 + p z) / ((p - z)(1 + p^2))
    return (1.0 + p * z) / ((p - z) * (1.0 + p * p)) * std::log(v) * (y / (c * c));
  };
  boost::math::quadrature::tanh_sinh<double> rule(12);
  double er = 0.0, ei = 0.0, l1r = 0.0, l1i = 0.0;
  const double h = pi / 2.0;
  double re = 0.0, im = 0.0;
  try {
    re = rule.integrate([&](double t) { return g(t).real(); }, -h, h, tol, &er, &l1r);
    im = rule.integrate([&](double t) { return g(t).imag(); }, -h, h, tol, &ei, &l1i);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::DivergentLogIntegral, "log-modulus integral did not converge");
  }
  const cplx total(re, im);
  const double err = std::hypot(er, ei);
  if (!std::isfinite(re) || !std::isfinite(im) || err > 1e-5 * std::max(1.0, std::abs(total)))
    fail(ErrorKind::DivergentLogIntegral, "log-modulus integral did not converge");
  return std::exp(total / (2.0 * pi * I));
}

inline GramReport gram_psd(const std::vector<cplx>& points, const KernelKind& k, const Domain& d,
                           double tol = default_gram_tolerance) {
  if (points.size() > 512) fail(ErrorKind::InvalidArgument, "at most 512 points");
  for (cplx z : points) require_inside(d, z, "sample");
  return gram_report(gram_matrix(points, [&](cplx z, cplx w) { return kernel(d, k, z, w); }), tol);
}

}  // namespace rpos
