#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rpos/core.hpp"
#include "rpos/domains.hpp"
#include "rpos/kernels.hpp"
#include "rpos/measures.hpp"
#include "rpos/modular.hpp"
#include "rpos/numerics/identities.hpp"
#include "rpos/periodize.hpp"
#include "rpos/rpfunc.hpp"

namespace rpos {

struct CheckOutcome {
  double defect = 0.0;
  double tol = 0.0;
};

struct Check {
  std::string id;
  std::string anchor;
  std::string suite;
  std::function<CheckOutcome()> run;
};

struct CheckResult {
  std::string id;
  std::string anchor;
  double defect = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> results;
  int passed = 0;
  int failed = 0;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"all", "kernels", "series", "measures", "modular", "appendix", "rp"};
  return names;
}

namespace detail {

struct Sampler {
  std::mt19937_64 gen;
  explicit Sampler(unsigned long seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  cplx interior(const Domain& d) {
    switch (d.kind()) {
      case DomainKind::Disc: return std::polar(std::sqrt(uniform(0.0, 0.9)), uniform(0.0, 2.0 * pi));
      case DomainKind::HalfPlane: return {uniform(-3.0, 3.0), uniform(0.05, 3.0)};
      default: return {uniform(-3.0, 3.0), d.beta() * uniform(0.02, 0.98)};
    }
  }
  BoundaryPoint boundary(const Domain& d) {
    switch (d.kind()) {
      case DomainKind::Disc: return boundary_point(d, uniform(0.0, 2.0 * pi));
      case DomainKind::HalfPlane: return boundary_point(d, uniform(-4.0, 4.0));
      default:
        return boundary_point(d, uniform(-4.0, 4.0), uniform(0.0, 1.0) < 0.5 ? StripComponent::Lower : StripComponent::Upper);
    }
  }
  MeasureOnR atomic(int n = 4) {
    std::vector<Atom> at;
    for (int k = 0; k < n; ++k) at.push_back({uniform(0.05, 4.0), uniform(0.1, 2.0)});
    return MeasureOnR(at);
  }
};

inline std::vector<Domain> check_domains() { return {Domain::disc(), Domain::half_plane(), Domain::strip(1.0)}; }

inline std::string short_name(const Domain& d) {
  switch (d.kind()) {
    case DomainKind::Disc: return "disc";
    case DomainKind::HalfPlane: return "halfplane";
    default: return "strip";
  }
}

// max(0, -min eigenvalue) relative to max(1, ||G||)
inline double gram_defect(const GramReport& g) {
  return std::max(0.0, -g.min_eigenvalue) / std::max(1.0, g.spectral_norm);
}

inline void add_kernel_checks(std::vector<Check>& out) {
  for (const Domain& d : check_domains()) {
    const std::string n = short_name(d);
    out.push_back({"kernels.hua." + n, "Hua formula for the Poisson kernel", "kernels", [d] {
                     Sampler rng(101);
                     double m = 0.0;
                     for (int k = 0; k < 50; ++k) {
                       const cplx z = rng.interior(d);
                       const BoundaryPoint x = rng.boundary(d);
                       m = std::max(m, std::abs(poisson(d, z, x) - std::norm(szego_boundary(d, z, x)) / szego(d, z, z).real()));
                     }
                     return CheckOutcome{m, 1e-10};
                   }});
    out.push_back({"kernels.poisson_normalization." + n, "Poisson kernel integrates to one", "kernels", [d] {
                     Sampler rng(102);
                     const BoundaryFunction one = boundary_values(d, [](cplx) { return cplx(1.0); });
                     double m = 0.0;
                     for (int k = 0; k < 5; ++k) m = std::max(m, std::abs(poisson_integral(d, rng.interior(d), one) - 1.0));
                     return CheckOutcome{m, 1e-8};
                   }});
  }
  for (const Domain& d : {Domain::disc(), Domain::strip(1.0)}) {
    out.push_back({"kernels.flip." + short_name(d), "reflection identity <f*, theta f*> = |f(w)|^2 / Q(w,w)", "kernels", [d] {
                     const double l = 0.25;
                     const cplx w = fixed_point(d, l);
                     const std::vector<std::function<cplx(cplx)>> Fs = {
                         [](cplx) { return cplx(1.0); }, [](cplx z) { return z; }, [](cplx z) { return z * z - 1.0; },
                         [](cplx z) { return 1.0 + 0.5 * z + 0.25 * z * z * z; }, [](cplx z) { return cplx(0.3, 1.0) * z - 2.0; }};
                     double m = 0.0;
                     for (const auto& F : Fs) {
                       auto f = [&](cplx z) { return F(z) * detail::szego_formula(d, z, w); };
                       const BoundaryFunction fb = boundary_values(d, f);
                       const cplx lhs = boundary_inner(fb, theta_w(d, l, fb));
                       m = std::max(m, std::abs(lhs - std::norm(f(w)) / szego(d, w, w).real()));
                     }
                     return CheckOutcome{m, 1e-7};
                   }});
  }
  out.push_back({"kernels.transfer_covariance", "Szego kernel covariance under Hardy-space transfers", "kernels", [] {
                   Sampler rng(103);
                   double m = 0.0;
                   for (const Domain& s : check_domains())
                     for (const Domain& t : check_domains()) {
                       if (s == t) continue;
                       const HardyTransfer h = hardy_transfer(s, t);
                       for (int k = 0; k < 10; ++k) {
                         const cplx z = rng.interior(t), w = rng.interior(t);
                         const cplx lhs = szego(t, z, w);
                         const cplx rhs = std::conj(h.factor(w)) * h.factor(z) * szego(s, h.map(z), h.map(w));
                         m = std::max(m, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
                       }
                     }
                   return CheckOutcome{m, 1e-10};
                 }});
  out.push_back({"kernels.gram_psd", "Szego, Bergman and power kernels are positive definite", "kernels", [] {
                   Sampler rng(104);
                   double m = 0.0;
                   for (const Domain& d : check_domains())
                     for (const KernelKind& k : {KernelKind::szego(), KernelKind::bergman(), KernelKind::power(1.5)}) {
                       std::vector<cplx> pts;
                       for (int j = 0; j < 30; ++j) pts.push_back(rng.interior(d));
                       m = std::max(m, gram_defect(gram_psd(pts, k, d)));
                     }
                   return CheckOutcome{m, 1e-10};
                 }});
}

inline void add_rp_checks(std::vector<Check>& out) {
  out.push_back({"rp.halfplane_transform", "Fourier transform of the half-plane Poisson kernel", "rp", [] {
                   double m = 0.0;
                   for (double l : {0.5, 1.0, 2.0})
                     for (double t : {0.5, 1.0, 2.0}) m = std::max(m, std::abs(poisson_transform_half_plane(l, t) - phi_R(l, t)));
                   return CheckOutcome{m, 1e-8};
                 }});
  out.push_back({"rp.disc_moments", "moments of the disc Poisson kernel", "rp", [] {
                   double m = 0.0;
                   for (double l : {-0.5, 0.3, 0.9})
                     for (long n = 0; n <= 5; ++n) m = std::max(m, std::abs(poisson_moment_disc(l, n) - phi_Z(l, n)));
                   return CheckOutcome{m, 1e-8};
                 }});
  auto gram_check = [](Group::Kind kind) {
    return [kind] {
      Sampler rng(105 + static_cast<unsigned long>(kind));
      double m = 0.0;
      const std::vector<double> betas = kind == Group::Circle ? std::vector<double>{0.5, 1.0, 3.0} : std::vector<double>{1.0};
      for (double b : betas)
        for (int draw = 0; draw < 10; ++draw) {
          const Group g = kind == Group::Integers ? Group::integers() : kind == Group::Reals ? Group::reals() : Group::circle(b);
          const double l = kind == Group::Integers ? rng.uniform(-1.0, 1.0) : rng.uniform(0.0, 4.0);
          std::vector<double> all, plus;
          for (int k = 0; k < 30; ++k) {
            if (kind == Group::Integers) {
              all.push_back(std::round(rng.uniform(-15.0, 15.0)));
              plus.push_back(std::round(rng.uniform(0.0, 15.0)));
            } else if (kind == Group::Reals) {
              all.push_back(rng.uniform(-5.0, 5.0));
              plus.push_back(rng.uniform(0.0, 5.0));
            } else {
              all.push_back(rng.uniform(0.0, b));
              plus.push_back(rng.uniform(0.0, b / 2.0));
            }
          }
          auto phi = [&](double x) {
            if (kind == Group::Integers) return phi_Z(l, std::lround(x));
            if (kind == Group::Reals) return phi_R(l, x);
            return phi_T(b, l, x);
          };
          m = std::max({m, gram_defect(pd_gram(g, phi, all)), gram_defect(rp_gram(g, phi, plus))});
        }
      return CheckOutcome{m, 1e-10};
    };
  };
  out.push_back({"rp.gram.integers", "reflection positive Grams of phi_lambda on Z", "rp", gram_check(Group::Integers)});
  out.push_back({"rp.gram.reals", "reflection positive Grams of phi_lambda on R", "rp", gram_check(Group::Reals)});
  out.push_back({"rp.gram.circle", "reflection positive Grams of phi_lambda on T_beta", "rp", gram_check(Group::Circle)});
  out.push_back({"rp.strip_characterization", "strip characterized by |c_t| < 1", "rp", [] {
                   Sampler rng(108);
                   const double b = 1.0;
                   int bad = 0;
                   for (int k = 0; k < 100; ++k)
                     if (strip_characterization_check(b, {rng.uniform(-5.0, 5.0), b * rng.uniform(0.01, 0.99)}).verdict !=
                         StripVerdict::Inside)
                       ++bad;
                   for (int k = 0; k < 20; ++k) {
                     const double y = k % 2 ? b * rng.uniform(1.01, 3.0) : -b * rng.uniform(0.01, 2.0);
                     const cplx z(rng.uniform(-5.0, 5.0), y);
                     const StripCharacterization r = strip_characterization_check(b, z);
                     if (r.verdict != StripVerdict::Outside || !r.witness || std::abs(c_t(b, *r.witness, z)) < 1.0) ++bad;
                   }
                   return CheckOutcome{static_cast<double>(bad), 0.0};
                 }});
}

inline void add_measure_checks(std::vector<Check>& out) {
  out.push_back({"measures.gamma_kappa", "gamma of kappa mu equals Gamma of mu", "measures", [] {
                   Sampler rng(201);
                   double m = 0.0;
                   for (int k = 0; k < 10; ++k) {
                     const double b = rng.uniform(0.3, 3.0);
                     const MeasureOnR mu = rng.atomic();
                     const MeasureOnR a = gamma_map(multiply_kappa(mu, b), b), c = Gamma_map(mu, b);
                     if (a.atoms().size() != c.atoms().size()) return CheckOutcome{inf, 1e-15};
                     for (std::size_t j = 0; j < a.atoms().size(); ++j)
                       m = std::max({m, std::abs(a.atoms()[j].weight - c.atoms()[j].weight),
                                     std::abs(a.atoms()[j].location - c.atoms()[j].location)});
                   }
                   return CheckOutcome{m, 1e-15};
                 }});
  out.push_back({"measures.roundtrip", "restriction inverts gamma and Gamma", "measures", [] {
                   Sampler rng(202);
                   double m = 0.0;
                   for (int k = 0; k < 10; ++k) {
                     const double b = rng.uniform(0.3, 3.0);
                     const MeasureOnR mu = rng.atomic();
                     for (const MeasureOnR& back : {gamma_inverse(gamma_map(mu, b), b), Gamma_inverse(Gamma_map(mu, b), b)}) {
                       if (back.atoms().size() != mu.atoms().size()) return CheckOutcome{inf, 1e-15};
                       for (std::size_t j = 0; j < mu.atoms().size(); ++j)
                         m = std::max({m, std::abs(back.atoms()[j].weight - mu.atoms()[j].weight) / mu.atoms()[j].weight,
                                       std::abs(back.atoms()[j].location - mu.atoms()[j].location)});
                     }
                   }
                   return CheckOutcome{m, 1e-15};
                 }});
  auto gamma_family = [](auto metric, double tol) {
    return [metric, tol] {
      Sampler rng(203);
      double m = 0.0;
      for (int k = 0; k < 10; ++k) {
        const double b = rng.uniform(0.3, 3.0);
        const MeasureOnR mu = rng.atomic();
        m = std::max(m, metric(mu, b, rng));
      }
      return CheckOutcome{m, tol};
    };
  };
  out.push_back({"measures.reflection", "Gamma(mu) satisfies the beta-reflection relation", "measures",
                 gamma_family([](const MeasureOnR& mu, double b, Sampler&) {
                   return reflection_check(Gamma_map(mu, b), {b, ReflectionOrder::Beta}).defect;
                 }, 1e-12)});
  out.push_back({"measures.kms", "Gamma(mu) satisfies the beta-KMS condition", "measures",
                 gamma_family([](const MeasureOnR& mu, double b, Sampler& rng) {
                   std::vector<double> ts;
                   for (int j = 0; j < 9; ++j) ts.push_back(rng.uniform(-5.0, 5.0));
                   return kms_check(Gamma_map(mu, b), b, ts).defect;
                 }, 1e-8)});
  out.push_back({"measures.rp_circle", "rp function on T_beta from Gamma(mu)", "measures",
                 gamma_family([](const MeasureOnR& mu, double b, Sampler& rng) {
                   const auto f = rp_circle_from_measure(mu, b);
                   double m = 0.0;
                   for (int j = 0; j < 10; ++j) {
                     const double y = rng.uniform(0.0, b);
                     CompensatedSum s;
                     for (const Atom& a : mu.atoms()) s += a.weight * phi_T(b, a.location, y);
                     m = std::max(m, std::abs(f(y) - s.value()));
                   }
                   return m;
                 }, 1e-10)});
  auto kernel_check = [](bool bergman_kind) {
    return [bergman_kind] {
      const double b = 1.0;
      const MeasureOnR nu = bergman_kind ? bergman_measure(b) : szego_measure(b);
      const Domain s = Domain::strip(b);
      Sampler rng(bergman_kind ? 205 : 204);
      double m = 0.0;
      for (int k = 0; k < 10; ++k) {
        const cplx z = rng.interior(s), w = rng.interior(s);
        const cplx ref = bergman_kind ? bergman_strip(b, z, w) : szego(s, z, w);
        m = std::max(m, std::abs(kernel_from_measure(nu, b, z, w) - ref));
      }
      return CheckOutcome{m, 1e-8};
    };
  };
  out.push_back({"measures.kernel_szego", "Szego kernel of the strip from its spectral measure", "measures", kernel_check(false)});
  out.push_back({"measures.kernel_bergman", "Bergman kernel of the strip from its spectral measure", "measures", kernel_check(true)});
  out.push_back({"measures.theta_involution", "kernel invariance under z -> beta i - conj-reflected pairs", "measures", [] {
                   const double b = 1.0;
                   Sampler rng(206);
                   std::vector<std::pair<cplx, cplx>> pairs;
                   for (int k = 0; k < 10; ++k) pairs.push_back({rng.interior(Domain::strip(b)), rng.interior(Domain::strip(b))});
                   const ThetaInvolutionReport r = theta_involution_check(szego_measure(b), b, pairs);
                   return CheckOutcome{std::max(r.kernel_defect, r.reflection_defect), 1e-8};
                 }});
  out.push_back({"measures.kappa", "kappa(t) = 2i Im mu_s^(t), Abel-regularized", "measures", [] {
                   const KappaReport r = kappa_check(nu_s_measure(1.5, 1.0, 80.0, 1e-3), riesz_measure(1.5, 80.0, 1e-4), 1.0, 1.0, 0.5);
                   return CheckOutcome{r.defect, 1e-6};
                 }});
}

inline void add_series_checks(std::vector<Check>& out) {
  // max of defect / tail_bound over random points and N in {1e2, 1e3, 1e4}
  auto soundness = [](auto eval) {
    return [eval] {
      Sampler rng(301);
      double m = 0.0;
      for (int k = 0; k < 100; ++k) {
        const cplx z = rng.interior(Domain::strip(1.0)), w = rng.interior(Domain::strip(1.0));
        for (long N : {100L, 1000L, 10000L}) {
          const SeriesEval r = eval(z, w, N);
          m = std::max(m, r.defect / r.tail_bound);
        }
      }
      return CheckOutcome{m, 1.0};
    };
  };
  auto at_n = [](auto eval) {
    return [eval] {
      Sampler rng(301);
      double m = 0.0;
      for (int k = 0; k < 100; ++k) {
        const cplx z = rng.interior(Domain::strip(1.0)), w = rng.interior(Domain::strip(1.0));
        m = std::max(m, eval(z, w, 10000L).defect);
      }
      return CheckOutcome{m, 1e-6};
    };
  };
  auto csc = [](cplx z, cplx w, long N) { return csc_partial_fractions(z - std::conj(w) + 0.5, N); };
  auto sinh = [](cplx z, cplx w, long N) { return sinh_partial_fractions(1.0, z - std::conj(w), N); };
  auto sz = [](cplx z, cplx w, long N) { return szego_series(1.0, z, w, N); };
  auto be = [](cplx z, cplx w, long N) { return bergman_series(1.0, z, w, N); };
  out.push_back({"series.csc.soundness", "partial fractions of pi/sin(pi z) within the tail bound", "series", soundness(csc)});
  out.push_back({"series.sinh.soundness", "partial fractions of 1/sinh within the tail bound", "series", soundness(sinh)});
  out.push_back({"series.szego.soundness", "periodized Szego series within the tail bound", "series", soundness(sz)});
  out.push_back({"series.bergman.soundness", "periodized Bergman series within the tail bound", "series", soundness(be)});
  out.push_back({"series.sinh.n10000", "partial fractions of 1/sinh at N = 1e4", "series", at_n(sinh)});
  out.push_back({"series.szego.n10000", "periodized Szego series at N = 1e4", "series", at_n(sz)});
  out.push_back({"series.bergman.n10000", "periodized Bergman series at N = 1e4", "series", at_n(be)});
  out.push_back({"series.splitting", "alternating splitting nu = nu+ + nu- and its reflection", "series", [] {
                   const double b = 1.0;
                   const GridSpec gs = default_strip_grid(b);
                   const MeasureOnR leb =
                       MeasureOnR::from_density([](double) { return 1.0 / (2.0 * pi); }, -gs.cutoff, gs.cutoff, gs.h);
                   const Splitting s = geometric_splitting(leb, b, SplittingMode::Alternating);
                   Sampler rng(302);
                   double m = 0.0;
                   for (int k = 0; k < 5; ++k) {
                     const cplx z = rng.interior(Domain::strip(2.0 * b));
                     const cplx nz = fourier(s.nu, z), zr = 2.0 * I * b - z;
                     m = std::max({m, std::abs(nz - fourier(s.nu, zr)), std::abs(nz - fourier(s.plus, z) - fourier(s.plus, zr))});
                   }
                   return CheckOutcome{m, 1e-8};
                 }});
}

inline void add_modular_checks(std::vector<Check>& out) {
  auto space = [] {
    const double b = 0.8;
    return build_modular(Gamma_map(MeasureOnR({{0.2, 1.0}, {1.5, 0.4}, {3.0, 0.2}}), b), b);
  };
  auto random_member = [](const ModularData& md, Sampler& rng) {
    CVector v(static_cast<Eigen::Index>(md.size()));
    for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return CVector(0.5 * (v + tomita(md, v)));
  };
  out.push_back({"modular.jdj", "J Delta J = Delta^{-1}", "modular", [space] {
                   const ModularData md = space();
                   Sampler rng(401);
                   double m = 0.0;
                   for (int k = 0; k < 10; ++k) {
                     CVector v(static_cast<Eigen::Index>(md.size()));
                     for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                     const CVector a = J_Delta_J(md, v), c = apply_Delta(md, v, -1.0);
                     m = std::max(m, (a - c).cwiseAbs().maxCoeff() / c.cwiseAbs().maxCoeff());
                   }
                   return CheckOutcome{m, 1e-12};
                 }});
  out.push_back({"modular.j_isometry", "J is an antilinear isometry", "modular", [space] {
                   const ModularData md = space();
                   Sampler rng(402);
                   double m = 0.0;
                   for (int k = 0; k < 10; ++k) {
                     CVector v(static_cast<Eigen::Index>(md.size()));
                     for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                     m = std::max(m, std::abs(norm(md, apply_J(md, v)) - norm(md, v)));
                   }
                   return CheckOutcome{m, 1e-12};
                 }});
  out.push_back({"modular.tomita_members", "fixed points of J Delta^{1/2} are the standard subspace", "modular",
                 [space, random_member] {
                   const ModularData md = space();
                   Sampler rng(403);
                   int bad = 0;
                   for (int k = 0; k < 50; ++k) {
                     const CVector w = random_member(md, rng);
                     if (!standard_membership(md, w).member) ++bad;
                     CVector v = w;
                     v[0] += cplx(0.0, 0.5);
                     if (standard_membership(md, v).member) ++bad;
                   }
                   return CheckOutcome{static_cast<double>(bad), 0.0};
                 }});
  out.push_back({"modular.psi_pd", "modular coefficient is positive definite", "modular", [space, random_member] {
                   const ModularData md = space();
                   Sampler rng(404);
                   double m = 0.0;
                   for (int k = 0; k < 5; ++k) {
                     const CVector v = random_member(md, rng);
                     std::vector<double> ts;
                     for (int j = 0; j < 20; ++j) ts.push_back(rng.uniform(-5.0, 5.0));
                     m = std::max(m, gram_defect(pd_gram(Group::reals(), [&](double t) { return modular_coefficient(md, v, t); }, ts)));
                   }
                   return CheckOutcome{m, 1e-10};
                 }});
  out.push_back({"modular.psi_kms", "modular coefficient satisfies the beta-KMS condition", "modular", [space, random_member] {
                   const ModularData md = space();
                   Sampler rng(405);
                   double m = 0.0;
                   for (int k = 0; k < 5; ++k) {
                     const MeasureOnR cm = coefficient_measure(md, random_member(md, rng));
                     m = std::max(m, kms_check(cm, md.beta, {-2.0, -0.5, 0.0, 0.7, 3.0}).defect);
                   }
                   return CheckOutcome{m, 1e-8};
                 }});
  out.push_back({"modular.psi_forms", "midline coefficient: integral forms and defining inner product agree", "modular", [] {
                   double m = 0.0;
                   for (double t : {0.0, 0.5, 1.0}) m = std::max(m, psi_hardy_midline(1.0, t).defect);
                   return CheckOutcome{m, 1e-8};
                 }});
  out.push_back({"modular.commutation_exact", "V_s U_t = e^{its} U_t V_s on the dual lattice", "modular",
                 [] { return CheckOutcome{commutation_check(1.0).exact_defect, 1e-12}; }});
  out.push_back({"modular.commutation_spectral", "V_s U_t = e^{its} U_t V_s, Fourier shift, generic s", "modular",
                 [] { return CheckOutcome{commutation_check(1.0).spectral_defect, 1e-8}; }});
  out.push_back({"modular.r_relation", "R U_t = e^{-beta t} U_t R", "modular",
                 [] { return CheckOutcome{commutation_check(1.0).rrel_defect, 1e-12}; }});
}

inline void add_appendix_checks(std::vector<Check>& out) {
  for (double l : {0.5, 1.0, 2.0})
    for (double b : {1.0, 2.0}) {
      char id[64];
      std::snprintf(id, sizeof id, "appendix.poisson_summation.l%g_b%g", l, b);
      out.push_back({id, "Poisson summation for the Lorentzian", "appendix", [l, b] {
                       double d = 0.0, bound = 0.0;
                       for (double x : {0.0, 0.3 * b, 0.5 * b, 0.8 * b}) {
                         const PoissonSummationReport r = poisson_summation_check(b, l, x, 10000);
                         d = std::max(d, r.defect);
                         bound = r.tail_bound;
                       }
                       return CheckOutcome{d, bound};
                     }});
    }
  out.push_back({"appendix.sech_ft", "Fourier transform of 1/cosh", "appendix",
                 [] { return CheckOutcome{sech_ft_check({0.0, 0.5, 1.0, -1.0, 2.5}).max_defect, 1e-10}; }});
  out.push_back({"appendix.sech2_ft", "Fourier transform of 1/cosh^2", "appendix",
                 [] { return CheckOutcome{sech2_ft_check({0.0, 0.5, 1.0, 2.0}).max_defect, 1e-8}; }});
  out.push_back({"appendix.sech_recursion", "recursion for the transforms of cosh^{-n-2}", "appendix", [] {
                   double m = 0.0;
                   for (int n : {1, 2, 3}) m = std::max(m, sech_power_recursion_check(n, {0.0, 1.0, 2.0}).max_defect);
                   return CheckOutcome{m, 1e-8};
                 }});
  out.push_back({"appendix.ftcosh", "Fourier transform of the strip Szego measure", "appendix", [] {
                   double m = 0.0;
                   for (double b : {0.5, 1.0, 2.0})
                     m = std::max(m, ftcosh_check(b, {cplx(0.0, b), cplx(1.0, b), cplx(-0.7, 0.4 * b)}).max_defect);
                   return CheckOutcome{m, 1e-9};
                 }});
  out.push_back({"appendix.sinh_abs", "|sinh(x+iy)|^2 = sinh^2 x + sin^2 y", "appendix",
                 [] { return CheckOutcome{sinh_abs_identity_check().max_defect, 1e-13}; }});
}

}  // namespace detail

inline std::vector<Check> registry() {
  std::vector<Check> out;
  detail::add_kernel_checks(out);
  detail::add_rp_checks(out);
  detail::add_measure_checks(out);
  detail::add_series_checks(out);
  detail::add_modular_checks(out);
  detail::add_appendix_checks(out);
  std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
  return out;
}

// With inject_defect, the first check with a nonzero defect gets tolerance 0.
inline VerificationReport run_suite(const std::string& suite, bool inject_defect = false) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    fail(ErrorKind::InvalidArgument, "unknown suite: " + suite);
  VerificationReport rep;
  rep.suite = suite;
  bool injected = false;
  for (const Check& c : registry()) {
    if (suite != "all" && c.suite != suite) continue;
    CheckResult r{c.id, c.anchor, 0.0, 0.0, false};
    try {
      const CheckOutcome o = c.run();
      r.defect = o.defect;
      r.tol = o.tol;
    } catch (const Error&) {
      r.defect = std::numeric_limits<double>::infinity();
    }
    if (inject_defect && !injected && r.defect > 0.0) {
      r.tol = 0.0;
      injected = true;
    }
    r.pass = r.defect <= r.tol;
    (r.pass ? rep.passed : rep.failed)++;
    rep.results.push_back(std::move(r));
  }
  return rep;
}

}  // namespace rpos
