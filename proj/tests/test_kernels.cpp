#include <gtest/gtest.h>

#include <chrono>

#include "oracles.hpp"
#include "rpos/kernels.hpp"

using namespace rpos;

namespace {

std::vector<Domain> all_domains() { return {Domain::disc(), Domain::half_plane(), Domain::strip(1.0), Domain::strip(2.5)}; }

cplx sample(oracle::Rng& rng, const Domain& d) {
  switch (d.kind()) {
    case DomainKind::Disc: return rng.disc();
    case DomainKind::HalfPlane: return rng.half_plane();
    default: return rng.strip(d.beta());
  }
}

BoundaryPoint sample_boundary(oracle::Rng& rng, const Domain& d) {
  switch (d.kind()) {
    case DomainKind::Disc: return boundary_point(d, rng.uniform(0, 2 * pi));
    case DomainKind::HalfPlane: return boundary_point(d, rng.uniform(-4, 4));
    default:
      return boundary_point(d, rng.uniform(-4, 4), rng.uniform(0, 1) < 0.5 ? StripComponent::Lower : StripComponent::Upper);
  }
}

}  // namespace

TEST(Szego, Values) {
  EXPECT_NEAR(std::abs(szego(Domain::disc(), 0.0, 0.0) - 1 / (2 * pi)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(szego(Domain::half_plane(), I, I) - 1 / (4 * pi)), 0.0, 1e-16);
  const double b = 1.7, x = 0.4, y = -0.9;
  const cplx q = szego(Domain::strip(b), cplx(x, b / 2), cplx(y, b / 2));
  EXPECT_NEAR(std::abs(q - 1 / (4 * b) / std::cosh(pi * (x - y) / (2 * b))), 0.0, 1e-15);
  EXPECT_THROW(szego(Domain::disc(), 1.5, 0.0), Error);
}

TEST(Szego, HermitianAndSigmaCovariant) {
  oracle::Rng rng(1);
  for (const Domain& d : all_domains())
    for (int k = 0; k < 100; ++k) {
      const cplx z = sample(rng, d), w = sample(rng, d);
      for (KernelKind kk : {KernelKind::szego(), KernelKind::bergman(), KernelKind::power(0.5), KernelKind::power(3)}) {
        const cplx a = kernel(d, kk, z, w), b = kernel(d, kk, w, z);
        EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12 * std::max(1.0, std::abs(a)));
      }
      const cplx q = szego(d, z, w), qs = szego(d, sigma(d, z), sigma(d, w));
      EXPECT_NEAR(std::abs(qs - std::conj(q)), 0.0, 1e-12 * std::max(1.0, std::abs(q)));
    }
}

TEST(Poisson, Values) {
  EXPECT_NEAR(poisson(Domain::half_plane(), I, boundary_point(Domain::half_plane(), 0.0)), 1 / pi, 1e-16);
  for (double t : {0.0, 1.0, 4.0}) EXPECT_NEAR(poisson(Domain::disc(), 0.0, boundary_point(Domain::disc(), t)), 1 / (2 * pi), 1e-16);
  const double b = 1.3, l = 0.7, x = -0.2;
  const Domain s = Domain::strip(b);
  EXPECT_NEAR(poisson(s, cplx(l, b / 2), boundary_point(s, x)), 1 / (2 * b) / std::cosh(pi * (l - x) / b), 1e-15);
}

TEST(Poisson, HuaConsistency) {
  oracle::Rng rng(2);
  const auto t0 = std::chrono::steady_clock::now();
  for (const Domain& d : all_domains())
    for (int k = 0; k < 50; ++k) {
      const cplx z = sample(rng, d);
      const BoundaryPoint x = sample_boundary(rng, d);
      const double p = poisson(d, z, x);
      EXPECT_GT(p, 0.0);
      const double hua = std::norm(szego_boundary(d, z, x)) / szego(d, z, z).real();
      EXPECT_NEAR(p, hua, 1e-10);
    }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
}

TEST(Poisson, Normalization) {
  oracle::Rng rng(3);
  auto one = [](cplx) { return cplx(1.0); };
  for (const Domain& d : all_domains())
    for (int k = 0; k < 5; ++k) {
      const cplx z = sample(rng, d);
      EXPECT_NEAR(std::abs(poisson_integral(d, z, boundary_values(d, one)) - 1.0), 0.0, 1e-8) << d.name() << " " << z;
    }
}

TEST(Poisson, ReproducesBoundedHarmonicData) {
  // Re of a bounded holomorphic function is recovered from its boundary values.
  const Domain s = Domain::strip(1.0);
  auto f = [](cplx z) { return 1.0 / std::cosh(z - cplx(0.3, 0.5)); };
  const cplx z(0.2, 0.35);
  EXPECT_NEAR(std::abs(poisson_integral(s, z, boundary_values(s, f)) - f(z)), 0.0, 1e-9);
}

TEST(Poisson, StripBoundarySymmetry) {
  oracle::Rng rng(4);
  const Domain s = Domain::strip(1.4);
  for (int k = 0; k < 50; ++k) {
    const cplx z = rng.strip(1.4);
    const double x = rng.uniform(-3, 3);
    EXPECT_NEAR(poisson(s, z, boundary_point(s, x, StripComponent::Upper)),
                poisson(s, cplx(z.real(), 1.4 - z.imag()), boundary_point(s, x)), 1e-10);
  }
}

TEST(Bergman, SquareOfSzegoOnStrip) {
  oracle::Rng rng(5);
  const double b = 1.2;
  const Domain s = Domain::strip(b);
  EXPECT_NEAR(std::abs(bergman_strip(b, cplx(0, b / 2), cplx(0, b / 2)) - 1 / (16 * b * b)), 0.0, 1e-15);
  for (int k = 0; k < 10; ++k) {
    const cplx z = rng.strip(b), w = rng.strip(b);
    const cplx q = szego(s, z, w);
    EXPECT_NEAR(std::abs(bergman_strip(b, z, w) - q * q), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(bergman_strip(b, z, w) - std::conj(bergman_strip(b, w, z))), 0.0, 1e-12);
  }
}

TEST(Bergman, FourierIntegralOracle) {
  const double b = 1.0;
  oracle::Rng rng(6);
  for (int k = 0; k < 3; ++k) {
    const cplx z = rng.strip(b), w = rng.strip(b), u = z - std::conj(w);
    auto dens = [&](double l) {
      const double m = std::abs(l) < 1e-12 ? 1 / (2 * b) : l / (1 - std::exp(-2 * b * l));
      return std::exp(I * u * l) * m / (4 * pi * pi);
    };
    const cplx ref = oracle::simpson(dens, -60 / u.imag(), 60 / (2 * b - u.imag()), 400000);
    EXPECT_NEAR(std::abs(ref - bergman_strip(b, z, w)), 0.0, 1e-8);
  }
}

TEST(PowerKernel, Values) {
  const Domain hp = Domain::half_plane();
  EXPECT_NEAR(std::abs(power_kernel(hp, 1, I, I) - 0.5), 0.0, 1e-16);
  oracle::Rng rng(7);
  const Domain s = Domain::strip(0.9);
  for (int k = 0; k < 5; ++k) {
    const cplx z = rng.half_plane(), w = rng.half_plane();
    EXPECT_NEAR(std::abs(power_kernel(hp, 2, z, w) + 1.0 / ((z - std::conj(w)) * (z - std::conj(w)))), 0.0, 1e-12);
    const cplx a = rng.strip(0.9), c = rng.strip(0.9);
    const cplx q = szego(s, a, c);
    EXPECT_NEAR(std::abs(power_kernel(s, 2, a, c) - q * q), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(power_kernel(Domain::disc(), 1, a / 4.0, c / 4.0) - szego(Domain::disc(), a / 4.0, c / 4.0)), 0.0, 1e-15);
  }
  EXPECT_THROW(power_kernel(hp, 0.0, I, I), Error);
}

TEST(Outer, Values) {
  EXPECT_NEAR(std::abs(outer_F_lambda(Domain::half_plane(), 1, I) - 0.5 / std::sqrt(pi)), 0.0, 1e-15);
  for (cplx z : {cplx(0), cplx(0.3, 0.2), cplx(1, 0)})
    EXPECT_NEAR(std::abs(outer_F_lambda(Domain::disc(), 0, z) - 1 / std::sqrt(2 * pi)), 0.0, 1e-15);
  // strip: F_lambda(z) = (4 beta)^{-1/2} / cosh(pi (z - i beta/2 - lambda) / 2 beta)
  const double b = 2.0;
  const Domain s = Domain::strip(b);
  EXPECT_NEAR(std::abs(outer_F_lambda(s, 0, cplx(0, b / 2)) - 1 / (2 * std::sqrt(b))), 0.0, 1e-15);
  const cplx z(0.3, 1.7);
  const double l = -0.4;
  EXPECT_NEAR(std::abs(outer_F_lambda(s, l, z) - 1 / (2 * std::sqrt(b)) / std::cosh(pi / (2 * b) * (z - I * b / 2.0 - l))), 0.0,
              1e-15);
  EXPECT_THROW(outer_F_lambda(Domain::disc(), 0.2, 2.0), Error);
}

TEST(Outer, ModulusSquaredIsPoisson) {
  oracle::Rng rng(8);
  const std::pair<Domain, double> cases[] = {{Domain::disc(), 0.6}, {Domain::disc(), -0.3}, {Domain::half_plane(), 0.7},
                                             {Domain::strip(1.5), 0.4}};
  for (auto [d, l] : cases) {
    const cplx w = fixed_point(d, l);
    for (int k = 0; k < 100; ++k) {
      const BoundaryPoint x = sample_boundary(rng, d);
      EXPECT_NEAR(std::norm(outer_F_lambda(d, l, x.embed())), poisson(d, w, x), 1e-10);
    }
  }
}

TEST(Unimodular, Values) {
  const Domain hp = Domain::half_plane();
  EXPECT_NEAR(std::abs(h_lambda(hp, 1, boundary_point(hp, 0)) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h_lambda(hp, 1, boundary_point(hp, 1)) - I), 0.0, 1e-15);
  for (double t : {0.0, 1.0, 2.5}) EXPECT_NEAR(std::abs(h_lambda(Domain::disc(), 0, boundary_point(Domain::disc(), t)) - 1.0), 0.0, 1e-15);
}

TEST(Unimodular, ClosedFormsAndModulus) {
  oracle::Rng rng(9);
  const Domain d = Domain::disc(), hp = Domain::half_plane(), s = Domain::strip(1.1);
  for (int k = 0; k < 50; ++k) {
    const double l = rng.uniform(-0.9, 0.9), t = rng.uniform(0, 2 * pi);
    const cplx hd = h_lambda(d, l, boundary_point(d, t));
    EXPECT_NEAR(std::abs(hd - (1.0 - l * std::exp(-I * t)) / (1.0 - l * std::exp(I * t))), 0.0, 1e-12);
    const double lh = rng.uniform(0.1, 3), x = rng.uniform(-5, 5);
    const cplx hh = h_lambda(hp, lh, boundary_point(hp, x));
    EXPECT_NEAR(std::abs(hh - (I * lh - x) / (I * lh + x)), 0.0, 1e-12);
    const double ls = rng.uniform(-2, 2);
    const cplx hs = h_lambda(s, ls, boundary_point(s, x));
    const double b = 1.1;
    const cplx closed = std::cosh(pi * (x + I * b / 2.0 - ls) / (2 * b)) / std::cosh(pi * (x - I * b / 2.0 - ls) / (2 * b));
    EXPECT_NEAR(std::abs(hs - closed), 0.0, 1e-12);
    for (cplx h : {hd, hh, hs}) EXPECT_NEAR(std::abs(h), 1.0, 1e-12);
    // h = Q_w* / conj(Q_w*) on the boundary
    const cplx q = std::conj(detail::szego_formula(s, fixed_point(s, ls), cplx(x, 0)));
    EXPECT_NEAR(std::abs(hs - q / std::conj(q)), 0.0, 1e-12);
  }
}

TEST(Theta, FixesSzegoAndIsInvolutive) {
  oracle::Rng rng(10);
  const std::pair<Domain, double> cases[] = {{Domain::disc(), 0.3}, {Domain::half_plane(), 1.2}, {Domain::strip(0.7), -0.5}};
  for (auto [d, l] : cases) {
    const cplx w = fixed_point(d, l);
    BoundaryFunction qw = boundary_values(d, [d, w](cplx z) { return detail::szego_formula(d, z, w); });
    BoundaryFunction tq = theta_w(d, l, qw);
    BoundaryFunction g = boundary_values(d, [](cplx z) { return std::exp(0.3 * z) / (z + cplx(0.2, 3.0)); });
    BoundaryFunction ttg = theta_w(d, l, theta_w(d, l, g));
    for (int k = 0; k < 50; ++k) {
      const BoundaryPoint x = sample_boundary(rng, d);
      EXPECT_NEAR(std::abs(tq(x) - qw(x)), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(ttg(x) - g(x)), 0.0, 1e-10);
    }
  }
}

TEST(Theta, ReflectionPositivityIdentityDisc) {
  // <f*, theta_w f*> = |f(w)|^2 / Q(w,w), f = F Q_w
  const Domain d = Domain::disc();
  const double l = 0.3;
  const cplx w = fixed_point(d, l);
  auto f = [&](cplx z) { return z * detail::szego_formula(d, z, w); };
  BoundaryFunction fb = boundary_values(d, f);
  const cplx lhs = boundary_inner(fb, theta_w(d, l, fb));
  const double rhs = std::norm(f(w)) / szego(d, w, w).real();
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-8);
}

TEST(Theta, ReflectionPositivityIdentityStrip) {
  const Domain s = Domain::strip(1.0);
  const double l = 0.25;
  const cplx w = fixed_point(s, l);
  auto f = [&](cplx z) { return (z * z - 1.0) * detail::szego_formula(s, z, w); };
  BoundaryFunction fb = boundary_values(s, f);
  const cplx lhs = boundary_inner(fb, theta_w(s, l, fb));
  const double rhs = std::norm(f(w)) / szego(s, w, w).real();
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-7);
}

TEST(OuterFromModulus, PoissonModulus) {
  auto psi = [](double p) { return 1.0 / (pi * (1.0 + p * p)); };
  oracle::Rng rng(12);
  for (int k = 0; k < 10; ++k) {
    const cplx z = rng.half_plane();
    EXPECT_NEAR(std::abs(outer_from_modulus(psi, z)), std::abs(outer_F_lambda(Domain::half_plane(), 1.0, z)), 1e-6) << z;
  }
}

TEST(OuterFromModulus, ConstantAndRationalModulus) {
  EXPECT_NEAR(std::abs(outer_from_modulus([](double) { return 1.0; }, cplx(0.4, 0.7)) - 1.0), 0.0, 1e-14);
  auto psi = [](double p) { return std::norm(I / (p + I)); };
  for (cplx z : {I, cplx(1, 0.5), cplx(-2, 3)}) EXPECT_NEAR(std::abs(outer_from_modulus(psi, z)), 1.0 / std::abs(z + I), 1e-6);
}

TEST(OuterFromModulus, BoundaryLimit) {
  auto psi = [](double p) { return (2.0 + std::tanh(p)) / (1.0 + p * p); };
  for (double x : {-1.0, 0.5, 2.0}) EXPECT_NEAR(std::abs(outer_from_modulus(psi, cplx(x, 1e-4))), std::sqrt(psi(x)), 1e-3);
}

TEST(OuterFromModulus, Errors) {
  EXPECT_THROW(outer_from_modulus([](double p) { return p; }, I), Error);
  try {
    outer_from_modulus([](double p) { return std::exp(p * p); }, I);
    ADD_FAILURE() << "expected divergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivergentLogIntegral);
  }
}

TEST(GramPsd, SinglePointAndSamples) {
  GramReport one = gram_psd({cplx(0.2, 0.1)}, KernelKind::szego(), Domain::disc());
  EXPECT_TRUE(one.verdict);
  EXPECT_NEAR(one.min_eigenvalue, szego(Domain::disc(), cplx(0.2, 0.1), cplx(0.2, 0.1)).real(), 1e-15);
  oracle::Rng rng(13);
  for (const Domain& d : all_domains())
    for (KernelKind k : {KernelKind::szego(), KernelKind::bergman(), KernelKind::power(0.5), KernelKind::power(1.5),
                         KernelKind::power(2), KernelKind::power(3)}) {
      std::vector<cplx> pts;
      for (int j = 0; j < 50; ++j) pts.push_back(sample(rng, d));
      GramReport r = gram_psd(pts, k, d);
      EXPECT_TRUE(r.verdict) << d.name() << " s=" << k.s << " min=" << r.min_eigenvalue;
    }
}

TEST(GramPsd, MatchesJacobiOracle) {
  oracle::Rng rng(14);
  const Domain s = Domain::strip(1.0);
  std::vector<cplx> pts;
  for (int j = 0; j < 20; ++j) pts.push_back(rng.strip(1.0));
  std::vector<std::vector<cplx>> A(20, std::vector<cplx>(20));
  for (int j = 0; j < 20; ++j)
    for (int k = 0; k < 20; ++k) A[j][k] = power_kernel(s, 0.5, pts[j], pts[k]);
  const auto ev = oracle::hermitian_eigenvalues(A);
  GramReport r = gram_psd(pts, KernelKind::power(0.5), s);
  EXPECT_NEAR(r.min_eigenvalue, ev.front(), 1e-10);
  EXPECT_GE(ev.front(), -1e-10 * ev.back());
  EXPECT_THROW(gram_psd({cplx(0, 2)}, KernelKind::szego(), s), Error);
}
