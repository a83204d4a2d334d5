// rpos: command-line driver for kernels, series, measures, modular data and the verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "rpos/kernels.hpp"
#include "rpos/measures.hpp"
#include "rpos/modular.hpp"
#include "rpos/periodize.hpp"
#include "rpos/rpfunc.hpp"
#include "rpos/verify.hpp"

using json = nlohmann::ordered_json;
using rpos::cplx;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Defaults {
  double beta = 1.0;
  long N = rpos::default_series_terms;
  int nodes = 1024;
  int samples = 30;
};

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

// "a", "bi", "a+bi", "a-bi", "i", "-i"
cplx parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw UsageError("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s), 0.0};
  s.pop_back();
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  const std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
  std::string im = cut == std::string::npos ? s : s.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(cplx z) {
  if (z.imag() == 0.0) return fmt(z.real());
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

// non-finite doubles become strings so the output stays valid JSON
json num(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

std::string slurp(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
  if (arg == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(arg);
  if (!in) throw UsageError("cannot read '" + arg + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

json parse_json(const std::string& arg) {
  try {
    return json::parse(slurp(arg));
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad JSON: ") + e.what());
  }
}

rpos::MeasureOnR measure_from_json(const json& j) {
  try {
    std::vector<rpos::Atom> atoms;
    if (j.contains("atoms"))
      for (const auto& a : j.at("atoms")) atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    std::optional<rpos::DensityGrid> d;
    if (j.contains("density")) {
      const auto& g = j.at("density");
      rpos::DensityGrid grid;
      grid.x0 = g.at("x0").get<double>();
      grid.h = g.at("h").get<double>();
      grid.values = g.at("values").get<std::vector<double>>();
      grid.closed_left = g.value("closed_left", false);
      grid.closed_right = g.value("closed_right", false);
      d = std::move(grid);
    }
    return rpos::MeasureOnR(std::move(atoms), std::move(d));
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad measure: ") + e.what());
  }
}

json measure_to_json(const rpos::MeasureOnR& m) {
  json j;
  j["atoms"] = json::array();
  for (const auto& a : m.atoms()) j["atoms"].push_back({a.location, a.weight});
  if (m.has_density()) {
    const auto& g = *m.density();
    j["density"] = {{"x0", g.x0}, {"h", g.h}, {"values", g.values}};
    if (g.closed_left) j["density"]["closed_left"] = true;
    if (g.closed_right) j["density"]["closed_right"] = true;
  }
  return j;
}

json gram_json(const rpos::GramReport& r) {
  return {{"size", r.size},
          {"hermiticity_defect", num(r.hermiticity_defect)},
          {"min_eigenvalue", num(r.min_eigenvalue)},
          {"max_eigenvalue", num(r.max_eigenvalue)},
          {"spectral_norm", num(r.spectral_norm)},
          {"tolerance", r.tolerance},
          {"residual", num(r.residual)},
          {"pass", r.verdict}};
}

json series_json(const rpos::SeriesEval& s) {
  return {{"value", to_json(s.value)},
          {"terms_used", s.terms_used},
          {"tail_bound", num(s.tail_bound)},
          {"closed", to_json(s.closed)},
          {"defect", num(s.defect)}};
}

// --config file: {"beta": 1, "N": 10000, "nodes": 1024, "samples": 30}
Defaults load_defaults(int argc, char** argv) {
  Defaults d;
  std::string path;
  for (int k = 1; k < argc; ++k) {
    const std::string a = argv[k];
    if (a == "--config" && k + 1 < argc) path = argv[k + 1];
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  if (path.empty()) return d;
  const json j = parse_json(path);
  try {
    d.beta = j.value("beta", d.beta);
    d.N = j.value("N", d.N);
    d.nodes = j.value("nodes", d.nodes);
    d.samples = j.value("samples", d.samples);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
  return d;
}

rpos::Domain make_domain(const std::string& name, std::optional<double> beta) {
  if (name == "disc") return rpos::Domain::disc();
  if (name == "halfplane") return rpos::Domain::half_plane();
  if (!beta) throw UsageError("--domain strip needs --beta");
  return rpos::Domain::strip(*beta);
}

rpos::KernelKind make_kind(const std::string& k) {
  if (k == "szego") return rpos::KernelKind::szego();
  if (k == "bergman") return rpos::KernelKind::bergman();
  if (k.rfind("power:", 0) == 0) return rpos::KernelKind::power(parse_real(k.substr(6)));
  throw UsageError("unknown kernel kind '" + k + "'");
}

// "a:b:n" -> n points from a to b
std::vector<double> parse_range(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw UsageError("range must look like a:b:n, got '" + s + "'");
  const double a = parse_real(parts[0]), b = parse_real(parts[1]);
  const double n = parse_real(parts[2]);
  if (n < 1 || n != std::floor(n)) throw UsageError("range count must be a positive integer");
  std::vector<double> out;
  for (int k = 0; k < static_cast<int>(n); ++k) out.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
  return out;
}

// ---------------------------------------------------------------- kernel

struct KernelArgs {
  std::string mode = "eval";
  std::string domain;
  std::optional<double> beta;
  std::string kind = "szego";
  std::string z, w;
  std::optional<double> x;
  bool upper = false;
  std::string table;
  bool as_json = false;
};

int run_kernel(const KernelArgs& a) {
  const rpos::Domain d = make_domain(a.domain, a.beta);
  const bool poisson = a.kind == "poisson";
  if (poisson && !a.x) throw UsageError("--kind poisson needs --x");
  if (!poisson && a.w.empty()) throw UsageError("--kind " + a.kind + " needs --w");
  const bool tabulate = a.mode == "table" || !a.table.empty();
  if (a.mode == "table" && a.table.empty()) throw UsageError("kernel table needs --table re0:re1:n,im0:im1:m");

  std::optional<rpos::BoundaryPoint> x;
  if (poisson)
    x = rpos::boundary_point(d, *a.x, a.upper ? rpos::StripComponent::Upper : rpos::StripComponent::Lower);
  const rpos::KernelKind kind = poisson ? rpos::KernelKind::szego() : make_kind(a.kind);
  const cplx w = poisson ? x->embed() : parse_complex(a.w);
  auto value = [&](cplx z) -> cplx {
    if (poisson) return rpos::poisson(d, z, *x);
    return rpos::kernel(d, kind, z, w);
  };

  if (!tabulate) {
    const cplx z = parse_complex(a.z);
    const cplx v = value(z);
    if (a.as_json)
      std::cout << json{{"domain", d.name()}, {"kind", a.kind}, {"z", to_json(z)}, {"w", to_json(w)}, {"value", to_json(v)}}.dump()
                << "\n";
    else
      std::cout << fmt(v) << "\n";
    return 0;
  }

  const auto comma = a.table.find(',');
  if (comma == std::string::npos) throw UsageError("--table must look like re0:re1:n,im0:im1:m");
  const auto re = parse_range(a.table.substr(0, comma));
  const auto im = parse_range(a.table.substr(comma + 1));
  std::cout << "re_z,im_z,re_w,im_w,re_K,im_K\n";
  for (double y : im)
    for (double xr : re) {
      const cplx z(xr, y);
      const cplx v = value(z);
      std::cout << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(w.real()) << ',' << fmt(w.imag()) << ','
                << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
    }
  return 0;
}

// ---------------------------------------------------------------- verify

int run_verify(const std::string& suite, bool as_json, bool inject) {
  const rpos::VerificationReport r = rpos::run_suite(suite, inject);
  if (as_json) {
    json j{{"suite", r.suite}, {"results", json::array()}, {"passed", r.passed}, {"failed", r.failed}};
    for (const auto& c : r.results)
      j["results"].push_back({{"id", c.id}, {"anchor", c.anchor}, {"defect", num(c.defect)}, {"tol", c.tol}, {"pass", c.pass}});
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& c : r.results)
      std::printf("%s %-42s defect %-10.3g tol %-10.3g %s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.defect, c.tol,
                  c.anchor.c_str());
    std::printf("%s: %d passed, %d failed\n", r.suite.c_str(), r.passed, r.failed);
  }
  return r.failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- rp

struct RpArgs {
  std::string group;
  double beta = 1.0;
  std::optional<double> lambda;
  std::string mixing;
  int samples = 30;
  unsigned seed = 7;
};

int run_rp(const RpArgs& a) {
  if (a.lambda.has_value() == !a.mixing.empty()) throw UsageError("give exactly one of --lambda and --mixing");
  if (a.samples < 1 || a.samples > 512) throw UsageError("--samples must lie in [1, 512]");
  rpos::Group g = a.group == "Z" ? rpos::Group::integers() : a.group == "R" ? rpos::Group::reals() : rpos::Group::circle(a.beta);
  const rpos::RPFamily fam{g, a.lambda ? rpos::MeasureOnR::dirac(*a.lambda) : measure_from_json(parse_json(a.mixing))};
  auto phi = [&](double x) { return rpos::rp_family_eval(fam, x); };

  std::mt19937_64 gen(a.seed);
  std::vector<double> all, cone;
  for (int k = 0; k < a.samples; ++k) {
    switch (g.kind) {
      case rpos::Group::Integers:
        all.push_back(k - a.samples / 2);
        cone.push_back(k);
        break;
      case rpos::Group::Reals:
        all.push_back(std::uniform_real_distribution<double>(-5.0, 5.0)(gen));
        cone.push_back(std::uniform_real_distribution<double>(0.0, 5.0)(gen));
        break;
      case rpos::Group::Circle:
        all.push_back(std::uniform_real_distribution<double>(0.0, g.beta)(gen));
        cone.push_back(std::uniform_real_distribution<double>(0.0, g.beta / 2.0)(gen));
        break;
    }
  }
  const auto pd = rpos::pd_gram(g, phi, all);
  const auto rp = rpos::rp_gram(g, phi, cone);
  const bool pass = pd.verdict && rp.verdict;
  std::cout << json{{"group", a.group}, {"beta", g.kind == rpos::Group::Circle ? json(g.beta) : json(nullptr)},
                    {"positive_definite", gram_json(pd)}, {"reflection_positive", gram_json(rp)}, {"pass", pass}}
                   .dump(2)
            << "\n";
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------- measure

struct MeasureArgs {
  std::string op;
  double beta = 1.0;
  std::string in;
  std::vector<std::string> z;
  std::vector<double> t;
};

int run_measure(const MeasureArgs& a) {
  const rpos::MeasureOnR mu = measure_from_json(parse_json(a.in));
  if (a.op == "gamma") {
    std::cout << measure_to_json(rpos::gamma_map(mu, a.beta)).dump() << "\n";
  } else if (a.op == "Gamma") {
    std::cout << measure_to_json(rpos::Gamma_map(mu, a.beta)).dump() << "\n";
  } else if (a.op == "kms-check") {
    std::vector<double> ts = a.t;
    if (ts.empty())
      for (int k = -20; k <= 20; ++k) ts.push_back(0.25 * k);
    const auto kms = rpos::kms_check(mu, a.beta, ts);
    const auto refl = rpos::reflection_check(mu, {a.beta, rpos::ReflectionOrder::Beta});
    std::cout << json{{"beta", a.beta},
                      {"kms_defect", num(kms.defect)},
                      {"worst_t", kms.worst_t},
                      {"reflection_defect", num(refl.defect)},
                      {"symmetric_support", refl.symmetric_support}}
                     .dump(2)
              << "\n";
  } else {
    if (a.z.empty()) throw UsageError("measure fourier needs --z");
    json out = json::array();
    for (const auto& s : a.z) {
      const cplx z = parse_complex(s);
      out.push_back({{"z", to_json(z)}, {"value", to_json(rpos::fourier(mu, z))}});
    }
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- series

int run_series(const std::string& kind, double beta, const std::string& zs, const std::string& ws, long N) {
  const cplx z = parse_complex(zs);
  rpos::SeriesEval s;
  if (kind == "sinh") {
    s = rpos::sinh_partial_fractions(beta, z, N);
  } else if (kind == "csc") {
    s = rpos::csc_partial_fractions(z, N);
  } else {
    if (ws.empty()) throw UsageError("series " + kind + " needs --w");
    const cplx w = parse_complex(ws);
    s = kind == "szego" ? rpos::szego_series(beta, z, w, N) : rpos::bergman_series(beta, z, w, N);
  }
  json j{{"series", kind}, {"N", N}};
  j.update(series_json(s));
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- modular

int run_psi(double beta, const std::vector<double>& ts) {
  json out = json::array();
  for (double t : ts) {
    const auto r = rpos::psi_hardy_midline(beta, t);
    out.push_back({{"t", t},
                   {"closed", to_json(r.closed)},
                   {"final_form", to_json(r.final_form)},
                   {"third_form", to_json(r.third_form)},
                   {"defining", to_json(r.defining)},
                   {"defect", num(r.defect)}});
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

// Checks the modular relations of nu on a fixed smooth test vector.
int run_modular_check(const std::string& in, double beta, int nodes) {
  const rpos::MeasureOnR nu = measure_from_json(parse_json(in));
  const rpos::ModularData md = rpos::build_modular(nu, beta);
  const auto v = rpos::sample(md, [](double l) { return std::exp(-0.5 * l * l) * cplx(1.0, 0.3 * l); });
  const double nv = std::max(rpos::norm(md, v), 1e-300);

  const auto jdj = rpos::J_Delta_J(md, v);
  const auto inv = rpos::apply_Delta(md, v, -1.0);
  const double jdj_defect = rpos::norm(md, jdj - inv) / std::max(rpos::norm(md, inv), 1e-300);
  const double isometry = std::abs(rpos::norm(md, rpos::apply_J(md, v)) - nv) / nv;
  const double involution = rpos::norm(md, rpos::apply_J(md, rpos::apply_J(md, v)) - v) / nv;
  const auto member = rpos::standard_membership(md, rpos::tomita(md, v) + v);
  const auto comm = rpos::commutation_check(beta, static_cast<std::size_t>(nodes));
  const bool pass = jdj_defect < 1e-10 && isometry < 1e-10 && involution < 1e-12 && member.member &&
                    comm.exact_defect < 1e-10 && comm.rrel_defect < 1e-10;
  std::cout << json{{"beta", beta},
                    {"nodes", md.size()},
                    {"jdj_defect", num(jdj_defect)},
                    {"j_isometry_defect", num(isometry)},
                    {"j_involution_defect", num(involution)},
                    {"standard_membership_defect", num(member.defect)},
                    {"commutation",
                     {{"grid_nodes", comm.nodes},
                      {"exact_defect", num(comm.exact_defect)},
                      {"interp_defect", num(comm.interp_defect)},
                      {"spectral_defect", num(comm.spectral_defect)},
                      {"r_relation_defect", num(comm.rrel_defect)}}},
                    {"pass", pass}}
                   .dump(2)
            << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Defaults def;
  try {
    def = load_defaults(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"rpos: reflection positivity on the disc, half-plane and strip"};
  app.require_subcommand(1);
  std::string config;
  app.add_option("--config", config, "JSON file with defaults (beta, N, nodes, samples)");

  // kernel
  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "evaluate a reproducing or Poisson kernel");
  kernel->add_option("mode", ka.mode, "eval (default) or table")->check(CLI::IsMember({"eval", "table"}));
  kernel->add_option("--domain", ka.domain)->required()->check(CLI::IsMember({"disc", "halfplane", "strip"}));
  kernel->add_option("--beta", ka.beta, "strip height");
  kernel->add_option("--kind", ka.kind, "szego, poisson, bergman or power:s")->capture_default_str();
  kernel->add_option("--z", ka.z, "interior point (a+bi)");
  kernel->add_option("--w", ka.w, "second interior point");
  kernel->add_option("--x", ka.x, "boundary coordinate (angle on the disc)");
  kernel->add_flag("--upper", ka.upper, "use the upper boundary line of the strip");
  kernel->add_option("--table", ka.table, "CSV over the z grid re0:re1:n,im0:im1:m");
  kernel->add_flag("--json", ka.as_json);

  // verify
  std::string suite = "all";
  bool verify_json = false, inject = false;
  auto* verify = app.add_subcommand("verify", "run the identity checks");
  verify->add_option("--suite", suite)->check(CLI::IsMember(rpos::suite_names()))->capture_default_str();
  verify->add_flag("--json", verify_json);
  verify->add_flag("--inject-defect", inject, "set one tolerance to zero (harness self-test)");

  // rp
  RpArgs ra;
  ra.beta = def.beta;
  ra.samples = def.samples;
  auto* rp = app.add_subcommand("rp", "reflection positive function families");
  rp->require_subcommand(1);
  auto* rp_check = rp->add_subcommand("check", "Gram tests for the family of a mixing measure");
  rp_check->add_option("--group", ra.group)->required()->check(CLI::IsMember({"Z", "R", "T"}));
  rp_check->add_option("--beta", ra.beta, "circle period")->capture_default_str();
  rp_check->add_option("--lambda", ra.lambda, "single atom of the mixing measure");
  rp_check->add_option("--mixing", ra.mixing, "mixing measure as JSON (inline, file or -)");
  rp_check->add_option("--samples", ra.samples)->capture_default_str();
  rp_check->add_option("--seed", ra.seed)->capture_default_str();

  // measure
  MeasureArgs ma;
  ma.beta = def.beta;
  auto* measure = app.add_subcommand("measure", "measure transforms");
  measure->add_option("op", ma.op)->required()->check(CLI::IsMember({"gamma", "Gamma", "kms-check", "fourier"}));
  measure->add_option("--beta", ma.beta)->capture_default_str();
  measure->add_option("--in", ma.in, "measure as JSON (inline, file or -)")->required();
  measure->add_option("--z", ma.z, "evaluation points for fourier");
  measure->add_option("--t", ma.t, "real times for kms-check");

  // series
  std::string series_kind, sz, sw;
  double sbeta = def.beta;
  long sN = def.N;
  auto* series = app.add_subcommand("series", "lattice sums with tail bounds");
  series->add_option("kind", series_kind)->required()->check(CLI::IsMember({"szego", "bergman", "sinh", "csc"}));
  series->add_option("--beta", sbeta)->capture_default_str();
  series->add_option("--z", sz)->required();
  series->add_option("--w", sw);
  series->add_option("--N", sN)->capture_default_str();

  // modular
  double mbeta = def.beta;
  std::vector<double> mts;
  std::string min;
  int mnodes = def.nodes;
  auto* modular = app.add_subcommand("modular", "modular objects of the strip");
  modular->require_subcommand(1);
  auto* psi = modular->add_subcommand("psi", "midline coefficient of the Szego function");
  psi->add_option("--beta", mbeta)->capture_default_str();
  psi->add_option("--t", mts)->required();
  auto* mcheck = modular->add_subcommand("check", "J, Delta and commutation relations for a measure");
  mcheck->add_option("--measure", min, "measure as JSON (inline, file or -)")->required();
  mcheck->add_option("--beta", mbeta)->capture_default_str();
  mcheck->add_option("--nodes", mnodes, "grid size of the commutation check")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*kernel) return run_kernel(ka);
    if (*verify) return run_verify(suite, verify_json, inject);
    if (*rp_check) return run_rp(ra);
    if (*measure) return run_measure(ma);
    if (*series) return run_series(series_kind, sbeta, sz, sw, sN);
    if (*psi) return run_psi(mbeta, mts);
    if (*mcheck) return run_modular_check(min, mbeta, mnodes);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rpos::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
