#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "rpos/core.hpp"
#include "rpos/numerics/quadrature.hpp"
#include "rpos/numerics/summation.hpp"

namespace rpos {

struct IdentitySample {
  cplx arg;
  cplx lhs;
  cplx rhs;
  double defect;
};

struct IdentityReport {
  std::vector<IdentitySample> samples;
  double max_defect = 0.0;
  double bound = 0.0;

  void push(cplx arg, cplx lhs, cplx rhs) {
    const double d = std::abs(lhs - rhs);
    samples.push_back({arg, lhs, rhs, d});
    max_defect = std::max(max_defect, d);
  }
};

inline constexpr double inf = std::numeric_limits<double>::infinity();

// (1/sqrt(2 pi)) int f(x) e^{i xi x} dx
template <class F>
cplx ft_unitary(F f, double xi, double tol = 1e-13) {
  auto g = [&](double x) { return cplx(f(x)) * std::exp(I * (xi * x)); };
  return quad_pieces(g, {-inf, 0.0, inf}, QuadOptions{tol, 15, false}).value / std::sqrt(2.0 * pi);
}

// int e^{i xi x} f(x) dx
template <class F>
cplx ft_measure(F f, double xi, double tol = 1e-13) {
  auto g = [&](double x) { return cplx(f(x)) * std::exp(I * (xi * x)); };
  return quad_pieces(g, {-inf, 0.0, inf}, QuadOptions{tol, 15, false}).value;
}

inline double sech(double x) { return 1.0 / std::cosh(x); }

inline IdentityReport sech_ft_check(const std::vector<double>& xis) {
  IdentityReport r;
  for (double xi : xis) r.push(xi, ft_measure(sech, xi), pi / std::cosh(pi * xi / 2.0));
  return r;
}

inline double sech2_ft_closed(double lambda) {
  if (lambda == 0.0) return std::sqrt(2.0 / pi);
  return std::sqrt(pi / 2.0) * lambda / std::sinh(pi * lambda / 2.0);
}

inline IdentityReport sech2_ft_check(const std::vector<double>& lambdas) {
  IdentityReport r;
  auto f = [](double x) { return std::pow(sech(x), 2); };
  for (double l : lambdas) r.push(l, ft_unitary(f, l), sech2_ft_closed(l));
  return r;
}

inline IdentityReport sech_power_recursion_check(int n, const std::vector<double>& ps) {
  if (n < 1) fail(ErrorKind::ParameterOutOfRange, "recursion needs n >= 1");
  IdentityReport r;
  auto lo = [n](double x) { return std::pow(sech(x), n); };
  auto hi = [n](double x) { return std::pow(sech(x), n + 2); };
  for (double p : ps) {
    const double c = (n * n + p * p) / (static_cast<double>(n) * (n + 1));
    r.push(p, ft_unitary(hi, p), c * ft_unitary(lo, p));
  }
  return r;
}

inline cplx ftcosh_closed(double beta, cplx z) { return (1.0 / (4.0 * beta)) * I / std::sinh(pi * z / (2.0 * beta)); }

inline IdentityReport ftcosh_check(double beta, const std::vector<cplx>& zs) {
  IdentityReport r;
  for (cplx z : zs) {
    if (!(z.imag() > 0.0 && z.imag() < 2.0 * beta))
      fail(ErrorKind::DivergentTransform, "need 0 < Im z < 2 beta");
    auto g = [&](double l) {
      if (l >= 0.0) return std::exp(I * z * l) / (1.0 + std::exp(-2.0 * beta * l)) / (2.0 * pi);
      return std::exp(I * z * l + 2.0 * beta * l) / (1.0 + std::exp(2.0 * beta * l)) / (2.0 * pi);
    };
    QuadResult q = quad_pieces(g, {-inf, 0.0, inf}, QuadOptions{1e-13, 15, false});
    r.push(z, q.value, ftcosh_closed(beta, z));
    r.bound += q.error;
  }
  return r;
}

inline IdentityReport sinh_abs_identity_check(int n = 20, double range = 2.0) {
  IdentityReport r;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double x = -range + 2.0 * range * j / (n - 1);
      const double y = -range + 2.0 * range * k / (n - 1);
      const double lhs = std::norm(std::sinh(cplx(x, y)));
      const double rhs = std::pow(std::sinh(x), 2) + std::pow(std::sin(y), 2);
      r.push(cplx(x, y), lhs / (1.0 + rhs), rhs / (1.0 + rhs));
    }
  return r;
}

struct PoissonSummationReport {
  cplx lhs;
  double rhs;
  double defect;
  double tail_bound;
};

inline double lorentzian(double s, double k) { return s / (pi * (s * s + k * k)); }

inline PoissonSummationReport poisson_summation_check(double beta, double lambda, double x, long K) {
  if (!(lambda > 0.0) || !(beta > 0.0)) fail(ErrorKind::ParameterOutOfRange, "need lambda, beta > 0");
  const double s = beta * lambda / (2.0 * pi);
  CompensatedComplexSum sum;
  for (long k = K; k >= 1; --k) {
    const double w = lorentzian(s, static_cast<double>(k));
    const double ph = 2.0 * pi * static_cast<double>(k) * x / beta;
    sum += cplx(2.0 * w * std::cos(ph), 0.0);
  }
  sum += cplx(lorentzian(s, 0.0), 0.0);
  const double rhs = (std::exp(-lambda * x) + std::exp(-lambda * (beta - x))) / (1.0 - std::exp(-lambda * beta));
  const cplx lhs = sum.value();
  PoissonSummationReport r{lhs, rhs, std::abs(lhs - rhs), 0.0};
  r.tail_bound = 2.0 * s / (pi * static_cast<double>(K));
  return r;
}

}  // namespace rpos
