// Acceptance gate: one PASS/FAIL line per criterion. Tolerances are fixed here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rpos/kernels.hpp"
#include "rpos/measures.hpp"
#include "rpos/modular.hpp"
#include "rpos/numerics/identities.hpp"
#include "rpos/periodize.hpp"
#include "rpos/rpfunc.hpp"

using namespace rpos;

namespace {

constexpr double tol_hua = 1e-10;
constexpr double limit_hua_seconds = 1.0;
constexpr double tol_normalization = 1e-8;
constexpr double limit_normalization_seconds = 5.0;
constexpr double tol_halfplane_transform = 1e-8;
constexpr double tol_disc_moments = 1e-8;
constexpr double tol_gram = 1e-10;
constexpr double tol_reflection = 1e-12;
constexpr double tol_kms = 1e-8;
constexpr double tol_rp_circle = 1e-10;
constexpr double tol_gamma_kappa = 1e-15;
constexpr double tol_series_final = 1e-6;
constexpr double tol_kernel_measure = 1e-8;
constexpr double tol_sech = 1e-10;
constexpr double tol_sech2 = 1e-8;
constexpr double tol_ftcosh = 1e-9;
constexpr double tol_sinh_abs = 1e-13;
constexpr double tol_jdj = 1e-12;
constexpr double tol_psi_forms = 1e-8;
constexpr double tol_flip = 1e-7;
constexpr double limit_total_seconds = 120.0;

struct Line {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<Domain> domains() { return {Domain::disc(), Domain::half_plane(), Domain::strip(1.0)}; }

cplx interior(oracle::Rng& rng, const Domain& d) {
  switch (d.kind()) {
    case DomainKind::Disc: return rng.disc();
    case DomainKind::HalfPlane: return rng.half_plane();
    default: return rng.strip(d.beta());
  }
}

BoundaryPoint boundary(oracle::Rng& rng, const Domain& d) {
  switch (d.kind()) {
    case DomainKind::Disc: return boundary_point(d, rng.uniform(0, 2 * pi));
    case DomainKind::HalfPlane: return boundary_point(d, rng.uniform(-4, 4));
    default: return boundary_point(d, rng.uniform(-4, 4), rng.uniform(0, 1) < 0.5 ? StripComponent::Lower : StripComponent::Upper);
  }
}

MeasureOnR random_atomic(oracle::Rng& rng) {
  std::vector<Atom> at;
  for (int k = 0; k < 4; ++k) at.push_back({rng.uniform(0.05, 4.0), rng.uniform(0.1, 2.0)});
  return MeasureOnR(at);
}

// min eigenvalue >= -tol ||G|| with an independent Jacobi eigensolver
bool gram_ok(const std::vector<std::vector<cplx>>& G) {
  const auto ev = oracle::hermitian_eigenvalues(G);
  double lo = ev.front(), nrm = 0.0;
  for (double e : ev) {
    lo = std::min(lo, e);
    nrm = std::max(nrm, std::abs(e));
  }
  return lo >= -tol_gram * nrm;
}

template <class F>
std::vector<std::vector<cplx>> gram(const std::vector<double>& s, F entry) {
  std::vector<std::vector<cplx>> G(s.size(), std::vector<cplx>(s.size()));
  for (std::size_t j = 0; j < s.size(); ++j)
    for (std::size_t k = 0; k < s.size(); ++k) G[j][k] = entry(s[j], s[k]);
  return G;
}

Line c1_hua() {
  oracle::Rng rng(1);
  const auto t0 = Clock::now();
  double m = 0.0;
  for (const Domain& d : domains())
    for (int k = 0; k < 50; ++k) {
      const cplx z = interior(rng, d);
      const BoundaryPoint x = boundary(rng, d);
      m = std::max(m, std::abs(poisson(d, z, x) - std::norm(szego_boundary(d, z, x)) / szego(d, z, z).real()));
    }
  const double s = seconds_since(t0);
  return {m < tol_hua && s < limit_hua_seconds, fmt("max defect %.2e (tol %.0e), %.3f s (limit %.0f s)", m, tol_hua, s, limit_hua_seconds)};
}

Line c2_normalization() {
  oracle::Rng rng(2);
  const auto t0 = Clock::now();
  double m = 0.0;
  for (const Domain& d : domains()) {
    const BoundaryFunction one = boundary_values(d, [](cplx) { return cplx(1.0); });
    for (int k = 0; k < 5; ++k) m = std::max(m, std::abs(poisson_integral(d, interior(rng, d), one) - 1.0));
  }
  const double s = seconds_since(t0);
  return {m < tol_normalization && s < limit_normalization_seconds,
          fmt("max |int P - 1| %.2e (tol %.0e), %.3f s (limit %.0f s)", m, tol_normalization, s, limit_normalization_seconds)};
}

Line c3_halfplane_transform() {
  double m = 0.0;
  for (double l : {0.5, 1.0, 2.0})
    for (double t : {0.5, 1.0, 2.0}) m = std::max(m, std::abs(poisson_transform_half_plane(l, t) - std::exp(-l * std::abs(t))));
  return {m < tol_halfplane_transform, fmt("max defect %.2e (tol %.0e)", m, tol_halfplane_transform)};
}

Line c4_disc_moments() {
  double m = 0.0;
  for (double l : {-0.5, 0.3, 0.9})
    for (long n = 0; n <= 5; ++n) m = std::max(m, std::abs(poisson_moment_disc(l, n) - std::pow(l, double(n))));
  return {m < tol_disc_moments, fmt("max defect %.2e (tol %.0e)", m, tol_disc_moments)};
}

Line c5_grams() {
  oracle::Rng rng(5);
  int failures = 0, total = 0;
  auto run = [&](auto phi, auto reduce, auto draw_all, auto draw_plus) {
    std::vector<double> all, plus;
    for (int k = 0; k < 30; ++k) {
      all.push_back(draw_all());
      plus.push_back(draw_plus());
    }
    total += 2;
    if (!gram_ok(gram(all, [&](double a, double b) { return cplx(phi(reduce(a - b))); }))) ++failures;
    if (!gram_ok(gram(plus, [&](double a, double b) { return cplx(phi(reduce(a + b))); }))) ++failures;
  };
  auto id = [](double x) { return x; };
  for (int draw = 0; draw < 10; ++draw) {
    const double lz = rng.uniform(-1, 1);
    run([&](double n) { return phi_Z(lz, std::lround(n)); }, id, [&] { return std::round(rng.uniform(-15, 15)); },
        [&] { return std::round(rng.uniform(0, 15)); });
    const double lr = rng.uniform(0, 4);
    run([&](double t) { return phi_R(lr, t); }, id, [&] { return rng.uniform(-5, 5); }, [&] { return rng.uniform(0, 5); });
    for (double b : {0.5, 1.0, 3.0}) {
      const double lt = rng.uniform(0, 4);
      auto modb = [b](double y) {
        y = std::fmod(y, b);
        return y < 0 ? y + b : y;
      };
      run([&](double y) { return phi_T(b, lt, y); }, modb, [&] { return rng.uniform(0, b); }, [&] { return rng.uniform(0, b / 2); });
    }
  }
  return {failures == 0, fmt("%d of %d Gram matrices fail min_eig >= -%.0e ||G||", failures, total, tol_gram)};
}

Line c6_reflection_kms() {
  oracle::Rng rng(6);
  double refl = 0.0, kms = 0.0, circ = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double b = rng.uniform(0.3, 3);
    const MeasureOnR mu = random_atomic(rng);
    const MeasureOnR nu = Gamma_map(mu, b);
    // reflection: nu({-l}) = e^{-beta l} nu({l}) atomwise
    for (const Atom& a : nu.atoms()) {
      if (a.location <= 0) continue;
      double neg = -1;
      for (const Atom& c : nu.atoms())
        if (std::abs(c.location + a.location) < 1e-12) neg = c.weight;
      refl = std::max(refl, neg < 0 ? 1.0 : std::abs(neg - std::exp(-b * a.location) * a.weight) / a.weight);
    }
    // KMS: nu^(i beta + t) = conj(nu^(t)) with a direct exponential sum
    for (int j = 0; j < 9; ++j) {
      const double t = rng.uniform(-5, 5);
      cplx lhs = 0.0, rhs = 0.0;
      for (const Atom& a : nu.atoms()) {
        lhs += a.weight * std::exp(I * cplx(t, b) * a.location);
        rhs += a.weight * std::exp(I * t * a.location);
      }
      kms = std::max(kms, std::abs(lhs - std::conj(rhs)));
    }
    const auto f = rp_circle_from_measure(mu, b);
    for (int j = 0; j < 10; ++j) {
      const double y = rng.uniform(0, b);
      double s = 0;
      for (const Atom& a : mu.atoms())
        s += a.weight * (std::exp(-y * a.location) + std::exp(-(b - y) * a.location)) / (1 + std::exp(-b * a.location));
      circ = std::max(circ, std::abs(f(y) - s));
    }
  }
  return {refl < tol_reflection && kms < tol_kms && circ < tol_rp_circle,
          fmt("reflection %.2e (tol %.0e), KMS %.2e (tol %.0e), phi_T %.2e (tol %.0e)", refl, tol_reflection, kms, tol_kms, circ,
              tol_rp_circle)};
}

Line c7_gamma_kappa() {
  oracle::Rng rng(7);
  double m = 0.0;
  bool exact = true;
  for (int k = 0; k < 10; ++k) {
    const double b = rng.uniform(0.3, 3);
    const MeasureOnR mu = random_atomic(rng);
    const MeasureOnR a = gamma_map(multiply_kappa(mu, b), b), c = Gamma_map(mu, b);
    if (a.atoms().size() != c.atoms().size()) return {false, "atom count mismatch"};
    for (std::size_t j = 0; j < a.atoms().size(); ++j) {
      if (a.atoms()[j].location != c.atoms()[j].location) exact = false;
      m = std::max(m, std::abs(a.atoms()[j].weight - c.atoms()[j].weight));
    }
    const MeasureOnR back = gamma_inverse(gamma_map(mu, b), b);
    if (back.atoms().size() != mu.atoms().size()) return {false, "roundtrip atom count mismatch"};
    for (std::size_t j = 0; j < mu.atoms().size(); ++j)
      if (back.atoms()[j].location != mu.atoms()[j].location || back.atoms()[j].weight != mu.atoms()[j].weight) exact = false;
  }
  return {m < tol_gamma_kappa && exact,
          fmt("atomwise defect %.2e (tol %.0e), restriction roundtrip %s", m, tol_gamma_kappa, exact ? "exact" : "NOT exact")};
}

Line c8_series() {
  oracle::Rng rng(8);
  const double b = 1.0;
  int unsound = 0;
  double final_sz = 0, final_sinh = 0, final_be = 0;
  for (int k = 0; k < 100; ++k) {
    const cplx z = rng.strip(b), w = rng.strip(b);
    const cplx u = z - std::conj(w);
    for (long N : {100L, 1000L, 10000L}) {
      const SeriesEval sh = sinh_partial_fractions(b, u, N), sz = szego_series(b, z, w, N), be = bergman_series(b, z, w, N);
      // closed forms evaluated here, independent of the library's own
      const double dsh = std::abs(sh.value - (pi / (2 * b)) / std::sinh(pi * u / (2 * b)));
      const double dsz = std::abs(sz.value - (I / (4 * b)) / std::sinh(pi * u / (2 * b)));
      const double dbe = std::abs(be.value + 1.0 / (16 * b * b * std::pow(std::sinh(pi * u / (2 * b)), 2)));
      unsound += (dsh > sh.tail_bound) + (dsz > sz.tail_bound) + (dbe > be.tail_bound);
      if (N == 10000) {
        final_sinh = std::max(final_sinh, dsh);
        final_sz = std::max(final_sz, dsz);
        final_be = std::max(final_be, dbe);
      }
    }
  }
  const bool pass = unsound == 0 && final_sinh < tol_series_final && final_sz < tol_series_final && final_be < tol_series_final;
  return {pass, fmt("%d bound violations; N=1e4 defects sinh %.2e, szego %.2e, bergman %.2e (tol %.0e)", unsound, final_sinh,
                    final_sz, final_be, tol_series_final)};
}

Line c9_kernel_from_measure() {
  const double b = 1.0;
  const MeasureOnR sz = szego_measure(b), be = bergman_measure(b);
  oracle::Rng rng(9);
  double ms = 0, mb = 0;
  for (int k = 0; k < 10; ++k) {
    const cplx z = rng.strip(b), w = rng.strip(b);
    const cplx u = z - std::conj(w);
    ms = std::max(ms, std::abs(kernel_from_measure(sz, b, z, w) - (I / (4 * b)) / std::sinh(pi * u / (2 * b))));
    mb = std::max(mb, std::abs(kernel_from_measure(be, b, z, w) + 1.0 / (16 * b * b * std::pow(std::sinh(pi * u / (2 * b)), 2))));
  }
  return {ms < tol_kernel_measure && mb < tol_kernel_measure,
          fmt("Szego %.2e, Bergman %.2e (tol %.0e)", ms, mb, tol_kernel_measure)};
}

Line c10_appendix() {
  bool ok = true;
  double worst_ratio = 0;
  for (double l : {0.5, 1.0, 2.0})
    for (double b : {1.0, 2.0})
      for (double x : {0.0, 0.3 * b, 0.5 * b}) {
        const PoissonSummationReport r = poisson_summation_check(b, l, x, 10000);
        const double bound = 2 * (b * l / (2 * pi)) / (pi * 10000.0);
        worst_ratio = std::max(worst_ratio, r.defect / bound);
        ok = ok && r.defect <= bound;
      }
  const std::vector<double> xis = {0.0, 0.5, 1.0, -1.0, 2.5};
  double sech = 0;
  for (double xi : xis) {
    const double q = oracle::simpson([xi](double x) { return std::cos(xi * x) / std::cosh(x); }, -40, 40, 200000).real();
    sech = std::max(sech, std::abs(q - pi / std::cosh(pi * xi / 2)));
  }
  sech = std::max(sech, sech_ft_check(xis).max_defect);
  const double sech2 = sech2_ft_check({0.0, 0.5, 1.0, 2.0}).max_defect;
  double rec = 0;
  for (int n : {1, 2, 3}) rec = std::max(rec, sech_power_recursion_check(n, {0.0, 1.0, 2.0}).max_defect);
  double ftc = 0;
  for (double b : {0.5, 1.0, 2.0}) ftc = std::max(ftc, ftcosh_check(b, {cplx(0, b), cplx(1, b), cplx(-0.7, 0.4 * b)}).max_defect);
  const double sh = sinh_abs_identity_check().max_defect;
  ok = ok && sech < tol_sech && sech2 < tol_sech2 && rec < tol_sech2 && ftc < tol_ftcosh && sh < tol_sinh_abs;
  return {ok, fmt("Poisson sum defect/bound %.3f; sech %.1e; sech^2 %.1e; recursion %.1e; FTcosh %.1e; |sinh|^2 %.1e", worst_ratio,
                  sech, sech2, rec, ftc, sh)};
}

Line c11_modular() {
  const double b = 0.8;
  const ModularData md = build_modular(Gamma_map(MeasureOnR({{0.2, 1.0}, {1.5, 0.4}, {3.0, 0.2}}), b), b);
  oracle::Rng rng(11);
  double jdj = 0, kms = 0;
  bool pd = true;
  for (int k = 0; k < 10; ++k) {
    CVector v(static_cast<Eigen::Index>(md.size()));
    for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const CVector a = J_Delta_J(md, v);
    for (Eigen::Index j = 0; j < v.size(); ++j)
      jdj = std::max(jdj, std::abs(a[j] - v[j] / md.delta[static_cast<std::size_t>(j)]) / std::abs(v[j] / md.delta[static_cast<std::size_t>(j)]));
    const CVector w = 0.5 * (v + tomita(md, v));
    std::vector<double> ts;
    for (int j = 0; j < 20; ++j) ts.push_back(rng.uniform(-5, 5));
    pd = pd && gram_ok(gram(ts, [&](double s, double t) { return modular_coefficient(md, w, s - t); }));
    const MeasureOnR cm = coefficient_measure(md, w);
    for (double t : {-2.0, 0.0, 0.7, 3.0}) {
      cplx lhs = 0, rhs = 0;
      for (const Atom& at : cm.atoms()) {
        lhs += at.weight * std::exp(I * cplx(t, b) * at.location);
        rhs += at.weight * std::exp(I * t * at.location);
      }
      kms = std::max(kms, std::abs(lhs - std::conj(rhs)));
    }
  }
  double forms = 0;
  for (double t : {0.0, 0.5, 1.0}) {
    const PsiReport r = psi_hardy_midline(1.0, t);
    forms = std::max({forms, std::abs(r.final_form - r.third_form), std::abs(r.final_form - r.defining)});
  }
  return {jdj < tol_jdj && pd && kms < tol_kms && forms < tol_psi_forms,
          fmt("J Delta J %.2e (tol %.0e), psi pd %s, KMS %.2e (tol %.0e), psi forms %.2e (tol %.0e)", jdj, tol_jdj,
              pd ? "yes" : "NO", kms, tol_kms, forms, tol_psi_forms)};
}

Line c12_flip() {
  const std::vector<std::function<cplx(cplx)>> Fs = {
      [](cplx) { return cplx(1.0); }, [](cplx z) { return z; }, [](cplx z) { return z * z - 1.0; },
      [](cplx z) { return 1.0 + 0.5 * z + 0.25 * z * z * z; }, [](cplx z) { return cplx(0.3, 1.0) * z - 2.0; }};
  double m = 0;
  for (const Domain& d : {Domain::disc(), Domain::strip(1.0)}) {
    const double l = 0.25;
    const cplx w = fixed_point(d, l);
    for (const auto& F : Fs) {
      auto f = [&](cplx z) { return F(z) * szego(d, z, w); };
      auto fb = [&](cplx z) { return F(z) * detail::szego_formula(d, z, w); };
      const BoundaryFunction b = boundary_values(d, fb);
      m = std::max(m, std::abs(boundary_inner(b, theta_w(d, l, b)) - std::norm(f(w)) / szego(d, w, w).real()));
    }
  }
  return {m < tol_flip, fmt("max defect %.2e (tol %.0e)", m, tol_flip)};
}

Line c13_strip() {
  oracle::Rng rng(13);
  const double b = 1.0;
  int inside = 0, witnessed = 0;
  for (int k = 0; k < 100; ++k) {
    const cplx z(rng.uniform(-5, 5), b * rng.uniform(0.01, 0.99));
    bool all_below = strip_characterization_check(b, z).verdict == StripVerdict::Inside;
    for (double t : strip_t_grid()) all_below = all_below && std::abs(c_t(b, t, z)) < 1.0;
    inside += all_below;
  }
  for (int k = 0; k < 20; ++k) {
    const double y = k % 2 ? b * rng.uniform(1.01, 3) : -b * rng.uniform(0.01, 2);
    const cplx z(rng.uniform(-5, 5), y);
    const StripCharacterization r = strip_characterization_check(b, z);
    // witness verified with the direct formula
    if (r.witness) {
      const double t = *r.witness;
      const cplx c = (std::exp(I * t * z) + std::exp(-b * t) * std::exp(-I * t * z)) / (1 + std::exp(-b * t));
      witnessed += std::abs(c) >= 1.0;
    }
  }
  return {inside == 100 && witnessed == 20, fmt("%d/100 interior points with |c_t| < 1 on the grid, %d/20 exterior witnesses", inside, witnessed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Line()>>> criteria = {
      {"Hua consistency", c1_hua},
      {"Poisson normalization", c2_normalization},
      {"half-plane Poisson transform", c3_halfplane_transform},
      {"disc Poisson moments", c4_disc_moments},
      {"reflection-positivity Grams", c5_grams},
      {"Gamma(mu): reflection, KMS, phi_T", c6_reflection_kms},
      {"gamma o M_kappa = Gamma, roundtrip", c7_gamma_kappa},
      {"series soundness", c8_series},
      {"kernel from measure", c9_kernel_from_measure},
      {"appendix identities", c10_appendix},
      {"modular suite", c11_modular},
      {"reflection identity for f = F Q_w", c12_flip},
      {"strip characterization", c13_strip},
  };
  const auto t0 = Clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Line l;
    try {
      l = criteria[i].second();
    } catch (const std::exception& e) {
      l = {false, std::string("exception: ") + e.what()};
    }
    failed += !l.pass;
    std::printf("%s %2zu %-36s %s\n", l.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, l.detail.c_str());
    std::fflush(stdout);
  }
  const double total = seconds_since(t0);
  std::printf("total %.2f s (limit %.0f s); %d of %zu criteria failed\n", total, limit_total_seconds, failed, criteria.size());
  return failed == 0 && total < limit_total_seconds ? 0 : 1;
}
