#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>

#include "rpos/core.hpp"
#include "rpos/numerics/summation.hpp"

namespace rpos {

struct QuadResult {
  cplx value;
  double error;
};

struct QuadOptions {
  double tol = 1e-12;
  unsigned max_depth = 15;
  bool throw_on_failure = true;
};

namespace detail {

template <class G>
double gk_real(G g, double a, double b, const QuadOptions& opt, double& err) {
  err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, a, b, opt.max_depth, opt.tol,
                                                                        &err);
}

// Double-exponential rules on unbounded intervals; NaN signals failure.
template <class G>
double de_real(G g, double a, double b, const QuadOptions& opt, double& err) {
  err = 0.0;
  double l1 = 0.0;
  try {
    if (std::isinf(a) && std::isinf(b)) {
      boost::math::quadrature::sinh_sinh<double> rule;
      return rule.integrate(g, opt.tol, &err, &l1);
    }
    boost::math::quadrature::exp_sinh<double> rule;
    return rule.integrate(g, a, b, opt.tol, &err, &l1);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

inline bool acceptable(double value, double err, double tol) {
  return std::isfinite(value) && std::isfinite(err) && err <= 10.0 * tol * std::max(1.0, std::abs(value));
}

template <class G>
double integrate_real(G g, double a, double b, const QuadOptions& opt, double& err) {
  if (std::isinf(a) || std::isinf(b)) {
    double v = de_real(g, a, b, opt, err);
    if (acceptable(v, err, opt.tol)) return v;
    double e2 = 0.0;
    double v2 = gk_real(g, a, b, opt, e2);
    if (!std::isfinite(v) || e2 < err) {
      err = e2;
      return v2;
    }
    return v;
  }
  return gk_real(g, a, b, opt, err);
}

}  // namespace detail

// Integral of a complex-valued integrand over [a,b]; either end may be infinite.
template <class F>
QuadResult quad(F f, double a, double b, QuadOptions opt = {}) {
  double er = 0.0, ei = 0.0;
  const double re = detail::integrate_real([&](double x) { return std::real(cplx(f(x))); }, a, b, opt, er);
  const double im = detail::integrate_real([&](double x) { return std::imag(cplx(f(x))); }, a, b, opt, ei);
  QuadResult r{{re, im}, std::hypot(er, ei)};
  if (opt.throw_on_failure && !detail::acceptable(std::abs(r.value), r.error, opt.tol))
    fail(ErrorKind::ToleranceNotReached,
         "quadrature error estimate " + std::to_string(r.error) + " above target");
  return r;
}

template <class F>
QuadResult quad(F f, double a, double b, double tol) {
  QuadOptions opt;
  opt.tol = tol;
  return quad(f, a, b, opt);
}

// Integrates piece by piece over sorted breakpoints; ends may be infinite.
template <class F>
QuadResult quad_pieces(F f, std::vector<double> pts, QuadOptions opt = {}) {
  std::sort(pts.begin(), pts.end());
  CompensatedComplexSum total;
  double err = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (pts[k] == pts[k + 1]) continue;
    QuadResult r = quad(f, pts[k], pts[k + 1], opt);
    total += r.value;
    err += r.error;
  }
  return {total.value(), err};
}

// Integral over [0,inf) of g(x) e^{i w x} for slowly decaying real g (Ooura-Mori).
template <class G>
QuadResult quad_fourier_halfline(G g, double omega, double tol = 1e-12) {
  if (omega == 0.0) {
    QuadOptions opt;
    opt.tol = tol;
    return quad([&](double x) { return cplx(g(x), 0.0); }, 0.0, std::numeric_limits<double>::infinity(), opt);
  }
  const double w = std::abs(omega);
  boost::math::quadrature::ooura_fourier_cos<double> fc(tol);
  boost::math::quadrature::ooura_fourier_sin<double> fs(tol);
  auto c = fc.integrate(g, w);
  auto s = fs.integrate(g, w);
  const double sign = omega > 0 ? 1.0 : -1.0;
  return {{c.first, sign * s.first}, std::hypot(c.second, s.second)};
}

// Trapezoid rule for a periodic integrand over one period starting at a.
template <class F>
cplx trapezoid_periodic(F f, double a, double period, std::size_t n) {
  CompensatedComplexSum s;
  const double h = period / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) s += cplx(f(a + h * static_cast<double>(j)));
  return s.value() * h;
}

}  // namespace rpos
