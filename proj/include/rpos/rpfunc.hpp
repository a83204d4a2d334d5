#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "rpos/core.hpp"
#include "rpos/domains.hpp"
#include "rpos/kernels.hpp"
#include "rpos/measures.hpp"
#include "rpos/numerics/gram.hpp"
#include "rpos/numerics/quadrature.hpp"

namespace rpos {

// The symmetric groups (Z, N_0, -id), (R, R_+, -id) and (T_beta, T_beta+, -id).
struct Group {
  enum Kind { Integers, Reals, Circle } kind = Reals;
  double beta = 0.0;

  static Group integers() { return {Integers, 0.0}; }
  static Group reals() { return {Reals, 0.0}; }
  static Group circle(double beta) {
    if (!(beta > 0.0)) fail(ErrorKind::ParameterOutOfRange, "circle period must be positive");
    return {Circle, beta};
  }

  // Representative of g: an integer on Z, a point of [0, beta) on T_beta.
  double reduce(double g) const {
    switch (kind) {
      case Integers:
        if (g != std::round(g)) fail(ErrorKind::InvalidArgument, "element of Z must be an integer");
        return g;
      case Reals: return g;
      case Circle: {
        double y = std::fmod(g, beta);
        if (y < 0.0) y += beta;
        return y;
      }
    }
    return g;
  }

  bool in_positive_cone(double s) const {
    switch (kind) {
      case Integers: return s >= 0.0 && s == std::round(s);
      case Reals: return s >= 0.0;
      case Circle: return s >= 0.0 && s <= beta / 2.0;
    }
    return false;
  }
};

inline double phi_Z(double lambda, long n) {
  if (!(std::abs(lambda) <= 1.0)) fail(ErrorKind::ParameterOutOfRange, "phi_Z needs |lambda| <= 1");
  if (n == 0) return 1.0;
  return std::pow(lambda, static_cast<double>(std::labs(n)));
}

inline double phi_R(double lambda, double t) {
  if (!(lambda >= 0.0)) fail(ErrorKind::ParameterOutOfRange, "phi_R needs lambda >= 0");
  return std::exp(-lambda * std::abs(t));
}

// (e^{-y lambda} + e^{-(beta-y) lambda}) / (1 + e^{-beta lambda}), y taken mod beta
inline double phi_T(double beta, double lambda, double y) {
  if (!(lambda >= 0.0)) fail(ErrorKind::ParameterOutOfRange, "phi_T needs lambda >= 0");
  y = Group::circle(beta).reduce(y);
  return (std::exp(-y * lambda) + std::exp(-(beta - y) * lambda)) / (1.0 + std::exp(-beta * lambda));
}

// Fourier coefficients of phi_T with respect to e^{2 pi i n y / beta}
inline double phi_T_fourier(double beta, double lambda, long n) {
  if (!(beta > 0.0) || !(lambda >= 0.0)) fail(ErrorKind::ParameterOutOfRange, "phi_T_fourier needs beta > 0, lambda >= 0");
  if (lambda == 0.0) return n == 0 ? 1.0 : 0.0;
  const double s = beta * lambda / (2.0 * pi);
  const double nn = static_cast<double>(n);
  return s / (pi * (s * s + nn * nn)) * std::tanh(beta * lambda / 2.0);
}

struct RPFamily {
  Group group;
  MeasureOnR mixing;
};

inline double rp_family_eval(const RPFamily& fam, double g) {
  const double lo = fam.group.kind == Group::Integers ? -1.0 : 0.0;
  const double hi = fam.group.kind == Group::Integers ? 1.0 : std::numeric_limits<double>::infinity();
  CompensatedSum s;
  bool bad = false;
  auto phi = [&](double l) {
    switch (fam.group.kind) {
      case Group::Integers: return phi_Z(l, std::lround(fam.group.reduce(g)));
      case Group::Reals: return phi_R(l, g);
      case Group::Circle: return phi_T(fam.group.beta, l, g);
    }
    return 0.0;
  };
  fam.mixing.for_each_node([&](double l, double w) {
    if (w == 0.0) return;
    if (l < lo - 1e-15 || l > hi) {
      bad = true;
      return;
    }
    s += w * phi(std::clamp(l, lo, hi));
  });
  if (bad) fail(ErrorKind::UnsupportedSupport, "mixing measure outside the parameter set");
  return s.value();
}

// ---------------------------------------------------------------- strip families

// c_t(z) = (e^{itz} + e^{-beta t} e^{-itz}) / (1 + e^{-beta t}); even in t.
inline cplx c_t(double beta, double t, cplx z) {
  t = std::abs(t);
  return (std::exp(I * t * z) + std::exp(-beta * t - I * t * z)) / (1.0 + std::exp(-beta * t));
}

inline cplx g_t(double beta, double t, cplx z) { return std::exp(t * beta / 2.0) * std::exp(I * t * z); }

// log |c_t(z)| from |c_t|^2 = (sinh^2(t y') + cos^2(t x)) / cosh^2(t beta / 2), z = x + i (y' + beta/2)
inline double log_abs_c_t(double beta, double t, cplx z) {
  const double x = z.real(), yp = z.imag() - beta / 2.0;
  const double a = std::abs(t * yp), b = std::abs(t * beta / 2.0);
  const double s2 = std::pow(std::sin(t * x), 2), c2 = 1.0 - s2;
  double num;
  if (a < 20.0)
    num = std::log1p(std::pow(std::sinh(a), 2) - s2);
  else
    num = 2.0 * a - std::log(4.0) + std::log1p(-2.0 * std::exp(-2.0 * a) + std::exp(-4.0 * a) + 4.0 * c2 * std::exp(-2.0 * a));
  double den;
  if (b < 20.0)
    den = 2.0 * std::log1p(2.0 * std::pow(std::sinh(b / 2.0), 2));
  else
    den = 2.0 * (b + std::log1p(std::exp(-2.0 * b)) - std::log(2.0));
  return 0.5 * (num - den);
}

enum class StripVerdict { Inside, Outside, Boundary, Unknown };

inline const char* to_string(StripVerdict v) {
  switch (v) {
    case StripVerdict::Inside: return "inside";
    case StripVerdict::Outside: return "outside";
    case StripVerdict::Boundary: return "boundary";
    case StripVerdict::Unknown: return "unknown";
  }
  return "?";
}

struct StripCharacterization {
  StripVerdict verdict = StripVerdict::Unknown;
  std::optional<double> witness;  // t with |c_t(z)| >= 1
};

inline std::vector<double> strip_t_grid() {
  std::vector<double> ts(60);
  for (int k = 0; k < 60; ++k) ts[k] = std::pow(10.0, -3.0 + 6.0 * k / 59.0);
  return ts;
}

inline StripCharacterization strip_characterization_check(double beta, cplx z) {
  Domain::strip(beta);
  StripCharacterization r;
  const double x = z.real(), y = z.imag();
  if (std::abs(y) <= boundary_eps || std::abs(y - beta) <= boundary_eps) {
    r.verdict = StripVerdict::Boundary;
    if (x != 0.0) r.witness = 2.0 * pi / std::abs(x);
    return r;
  }
  const auto ts = strip_t_grid();
  if (y > 0.0 && y < beta) {
    for (double t : ts)
      if (!(log_abs_c_t(beta, t, z) < 0.0)) return r;
    r.verdict = StripVerdict::Inside;
    return r;
  }
  for (double t : ts)
    if (log_abs_c_t(beta, t, z) >= 0.0) {
      r.verdict = StripVerdict::Outside;
      r.witness = t;
      return r;
    }
  return r;
}

// ---------------------------------------------------------------- Gram testers

// (phi(g_j - g_k))_{jk}
template <class F>
GramReport pd_gram(const Group& grp, F phi, const std::vector<double>& samples, double tol = default_gram_tolerance) {
  if (samples.size() > 512) fail(ErrorKind::InvalidArgument, "at most 512 samples");
  for (double g : samples) grp.reduce(g);
  return gram_report(gram_matrix(samples, [&](double a, double b) { return cplx(phi(grp.reduce(a - b))); }), tol);
}

// (phi(s_j + s_k))_{jk} on the positive cone
template <class F>
GramReport rp_gram(const Group& grp, F phi, const std::vector<double>& plus, double tol = default_gram_tolerance) {
  if (plus.size() > 512) fail(ErrorKind::InvalidArgument, "at most 512 samples");
  for (double s : plus)
    if (!grp.in_positive_cone(s)) fail(ErrorKind::SampleOutsidePositiveCone, "sample outside the positive cone");
  return gram_report(gram_matrix(plus, [&](double a, double b) { return cplx(phi(grp.reduce(a + b))); }), tol);
}

struct SignedTime {
  double t;
  int eps;
};

// p_n(t, eps) = eps^n e^{-n|t|} on R x {+-1}
inline double p_n(int n, double t, int eps) {
  const double sgn = (n % 2 == 0 || eps > 0) ? 1.0 : -1.0;
  return sgn * std::exp(-n * std::abs(t));
}

inline void require_signs(const std::vector<SignedTime>& samples) {
  for (const auto& s : samples)
    if (s.eps != 1 && s.eps != -1) fail(ErrorKind::InvalidArgument, "sign must be +1 or -1");
}

// Gram of p_n(g_j g_k^{-1}) in R x {+-1}
inline GramReport param_rp_check(int n, const std::vector<SignedTime>& samples) {
  if (n < 1) fail(ErrorKind::ParameterOutOfRange, "need n >= 1");
  require_signs(samples);
  return gram_report(gram_matrix(samples, [n](const SignedTime& a, const SignedTime& b) {
    return cplx(p_n(n, a.t - b.t, a.eps * b.eps));
  }));
}

// Gram of p_n(s_j s_k^#) for s_j in the positive cone t >= 0
inline GramReport param_rp_cone_check(int n, const std::vector<SignedTime>& samples) {
  if (n < 1) fail(ErrorKind::ParameterOutOfRange, "need n >= 1");
  require_signs(samples);
  for (const auto& s : samples)
    if (s.t < 0.0) fail(ErrorKind::SampleOutsidePositiveCone, "need t >= 0");
  return gram_report(gram_matrix(samples, [n](const SignedTime& a, const SignedTime& b) {
    return cplx(p_n(n, a.t + b.t, a.eps * b.eps));
  }));
}

// ---------------------------------------------------------------- Poisson-kernel transforms

// int P_{i lambda}(x) e^{i t x} dx on the real line
inline double poisson_transform_half_plane(double lambda, double t) {
  const Domain hp = Domain::half_plane();
  auto p = [&](double x) { return poisson(hp, cplx(0.0, lambda), boundary_point(hp, x)); };
  return 2.0 * quad_fourier_halfline(p, t, 1e-13).value.real();
}

// int_0^{2 pi} e^{i n t} P_lambda(e^{it}) dt on the circle
inline cplx poisson_moment_disc(double lambda, long n, std::size_t nodes = 1024) {
  const Domain d = Domain::disc();
  return trapezoid_periodic(
      [&](double t) { return std::exp(I * (static_cast<double>(n) * t)) * poisson(d, cplx(lambda, 0.0), boundary_point(d, t)); },
      0.0, 2.0 * pi, nodes);
}

}  // namespace rpos
