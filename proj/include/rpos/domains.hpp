#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "rpos/core.hpp"

namespace rpos {

enum class DomainKind { Disc, HalfPlane, Strip };

class Domain {
 public:
  static Domain disc() { return Domain(DomainKind::Disc, 0.0); }
  static Domain half_plane() { return Domain(DomainKind::HalfPlane, 0.0); }
  static Domain strip(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) fail(ErrorKind::ParameterOutOfRange, "strip height must be positive");
    return Domain(DomainKind::Strip, beta);
  }

  DomainKind kind() const { return kind_; }
  bool is_strip() const { return kind_ == DomainKind::Strip; }
  // Strip height; zero for the disc and the half-plane.
  double beta() const { return beta_; }

  std::string name() const {
    switch (kind_) {
      case DomainKind::Disc: return "disc";
      case DomainKind::HalfPlane: return "halfplane";
      case DomainKind::Strip: return "strip";
    }
    return "?";
  }

  friend bool operator==(const Domain& a, const Domain& b) { return a.kind_ == b.kind_ && a.beta_ == b.beta_; }

 private:
  Domain(DomainKind k, double b) : kind_(k), beta_(b) {}
  DomainKind kind_;
  double beta_;
};

// Points closer than this to the boundary count as boundary points.
inline constexpr double boundary_eps = 1e-13;

inline bool contains(const Domain& d, cplx z) {
  switch (d.kind()) {
    case DomainKind::Disc: return std::abs(z) < 1.0 - boundary_eps;
    case DomainKind::HalfPlane: return z.imag() > boundary_eps;
    case DomainKind::Strip: return z.imag() > boundary_eps && z.imag() < d.beta() - boundary_eps;
  }
  return false;
}

inline bool in_closure(const Domain& d, cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  switch (d.kind()) {
    case DomainKind::Disc: return std::abs(z) <= 1.0 + boundary_eps;
    case DomainKind::HalfPlane: return z.imag() >= -boundary_eps;
    case DomainKind::Strip: return z.imag() >= -boundary_eps && z.imag() <= d.beta() + boundary_eps;
  }
  return false;
}

inline void require_inside(const Domain& d, cplx z, const char* what = "point") {
  if (!contains(d, z)) fail(ErrorKind::OutsideDomain, std::string(what) + " not inside the " + d.name());
}

inline cplx sigma(const Domain& d, cplx z) {
  switch (d.kind()) {
    case DomainKind::Disc: return std::conj(z);
    case DomainKind::HalfPlane: return -std::conj(z);
    case DomainKind::Strip: return cplx(z.real(), d.beta() - z.imag());
  }
  return z;
}

// Point of the fixed-point set of sigma indexed by lambda:
// lambda in (-1,1) on the disc, i*lambda (lambda > 0) on the half-plane, beta*i/2 + lambda on the strip.
inline cplx fixed_point(const Domain& d, double lambda) {
  switch (d.kind()) {
    case DomainKind::Disc:
      if (!(std::abs(lambda) < 1.0)) fail(ErrorKind::OutsideDomain, "disc fixed point needs |lambda| < 1");
      return {lambda, 0.0};
    case DomainKind::HalfPlane:
      if (!(lambda > 0.0)) fail(ErrorKind::OutsideDomain, "half-plane fixed point needs lambda > 0");
      return {0.0, lambda};
    case DomainKind::Strip: return {lambda, d.beta() / 2.0};
  }
  return {};
}

enum class StripComponent { Lower, Upper };

struct BoundaryPoint {
  Domain domain;
  double coordinate;  // angle on the disc, real coordinate otherwise
  StripComponent component = StripComponent::Lower;

  cplx embed() const {
    switch (domain.kind()) {
      case DomainKind::Disc: return {std::cos(coordinate), std::sin(coordinate)};
      case DomainKind::HalfPlane: return {coordinate, 0.0};
      case DomainKind::Strip:
        return {coordinate, component == StripComponent::Upper ? domain.beta() : 0.0};
    }
    return {};
  }
};

inline BoundaryPoint boundary_point(const Domain& d, double coordinate,
                                    StripComponent c = StripComponent::Lower) {
  return {d, coordinate, d.is_strip() ? c : StripComponent::Lower};
}

// sigma restricted to the boundary.
inline BoundaryPoint reflect(const BoundaryPoint& x) {
  switch (x.domain.kind()) {
    case DomainKind::Disc: return {x.domain, -x.coordinate, x.component};
    case DomainKind::HalfPlane: return {x.domain, -x.coordinate, x.component};
    case DomainKind::Strip:
      return {x.domain, x.coordinate,
              x.component == StripComponent::Lower ? StripComponent::Upper : StripComponent::Lower};
  }
  return x;
}

inline cplx cayley(cplx z) {
  if (z == cplx(1.0, 0.0)) fail(ErrorKind::PoleAtInput, "cayley pole at z = 1");
  return I * (1.0 + z) / (1.0 - z);
}

inline cplx cayley_inv(cplx w) {
  if (w == -I) fail(ErrorKind::PoleAtInput, "inverse cayley pole at w = -i");
  return (w - I) / (w + I);
}

inline cplx strip_exp(const Domain& d, cplx z) {
  if (!d.is_strip()) fail(ErrorKind::UnsupportedPair, "strip_exp needs a strip");
  return std::exp(pi * z / d.beta());
}

inline cplx strip_log(const Domain& d, cplx w) {
  if (!d.is_strip()) fail(ErrorKind::UnsupportedPair, "strip_log needs a strip");
  if (w.imag() == 0.0 && w.real() <= 0.0) fail(ErrorKind::BranchCutViolation, "log branch cut");
  return d.beta() / pi * std::log(w);
}

using ComplexFunction = std::function<cplx(cplx)>;

// Unitary transfer H^2(src) -> H^2(dst): f |-> factor(z) * f(map(z)), map: dst -> src.
struct HardyTransfer {
  Domain src;
  Domain dst;
  ComplexFunction map;
  ComplexFunction factor;

  ComplexFunction apply(ComplexFunction f) const {
    return [m = map, s = factor, f = std::move(f)](cplx z) { return s(z) * f(m(z)); };
  }
  cplx operator()(const ComplexFunction& f, cplx z) const { return factor(z) * f(map(z)); }
};

namespace detail {

inline HardyTransfer arrow_to_half_plane(const Domain& src) {
  const Domain hp = Domain::half_plane();
  if (src.kind() == DomainKind::Disc) {
    return {src, hp, [](cplx z) { return cayley_inv(z); },
            [](cplx z) {
              if (z == -I) fail(ErrorKind::PoleAtInput, "transfer factor pole at -i");
              return std::sqrt(2.0 * I) / (z + I);
            }};
  }
  const double b = src.beta();
  return {src, hp, [src](cplx z) { return strip_log(src, z); },
          [b](cplx z) {
            if (z.imag() == 0.0 && z.real() <= 0.0) fail(ErrorKind::BranchCutViolation, "sqrt branch cut");
            return std::sqrt(b / pi) / std::sqrt(z);
          }};
}

inline HardyTransfer arrow_from_half_plane(const Domain& dst) {
  const Domain hp = Domain::half_plane();
  if (dst.kind() == DomainKind::Disc) {
    return {hp, dst, [](cplx z) { return cayley(z); },
            [](cplx z) {
              if (z == cplx(1.0, 0.0)) fail(ErrorKind::PoleAtInput, "transfer factor pole at 1");
              return std::sqrt(2.0 * I) / (1.0 - z);
            }};
  }
  const double b = dst.beta();
  return {hp, dst, [dst](cplx z) { return strip_exp(dst, z); },
          [b](cplx z) { return std::sqrt(pi / b) * std::exp(pi * z / (2.0 * b)); }};
}

inline HardyTransfer compose(const HardyTransfer& first, const HardyTransfer& second) {
  // first: src -> mid, second: mid -> dst
  return {first.src, second.dst,
          [m1 = first.map, m2 = second.map](cplx z) { return m1(m2(z)); },
          [m2 = second.map, s1 = first.factor, s2 = second.factor](cplx z) { return s2(z) * s1(m2(z)); }};
}

}  // namespace detail

inline HardyTransfer hardy_transfer(const Domain& src, const Domain& dst) {
  if (src == dst) fail(ErrorKind::UnsupportedPair, "source and target domain coincide");
  if (dst.kind() == DomainKind::HalfPlane) return detail::arrow_to_half_plane(src);
  if (src.kind() == DomainKind::HalfPlane) return detail::arrow_from_half_plane(dst);
  return detail::compose(detail::arrow_to_half_plane(src), detail::arrow_from_half_plane(dst));
}

inline ComplexFunction hardy_transfer(const Domain& src, const Domain& dst, ComplexFunction f) {
  return hardy_transfer(src, dst).apply(std::move(f));
}

}  // namespace rpos
