#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "rpos/core.hpp"

namespace rpos {

struct GramReport {
  int size = 0;
  double hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double spectral_norm = 0.0;
  double tolerance = 1e-10;
  double residual = 0.0;  // max ||G v - mu v|| / ||G|| over the two extreme pairs
  bool verdict = true;
};

inline constexpr double default_gram_tolerance = 1e-10;

// Eigenvalue test on the Hermitian part of G.
inline GramReport gram_report(const Eigen::MatrixXcd& G, double tol = default_gram_tolerance) {
  GramReport r;
  r.size = static_cast<int>(G.rows());
  r.tolerance = tol;
  if (G.rows() != G.cols()) fail(ErrorKind::InvalidArgument, "Gram matrix must be square");
  if (G.rows() == 0) return r;
  const Eigen::MatrixXcd H = 0.5 * (G + G.adjoint());
  r.hermiticity_defect = (G - G.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success) fail(ErrorKind::ToleranceNotReached, "eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  const Eigen::Index n = ev.size();
  r.min_eigenvalue = ev(0);
  r.max_eigenvalue = ev(n - 1);
  r.spectral_norm = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  const double scale = std::max(r.spectral_norm, std::numeric_limits<double>::min());
  for (Eigen::Index k : {Eigen::Index(0), n - 1}) {
    const Eigen::VectorXcd v = es.eigenvectors().col(k);
    r.residual = std::max(r.residual, (H * v - ev(k) * v).norm() / scale);
  }
  r.verdict = r.min_eigenvalue >= -tol * std::max(1.0, r.spectral_norm);
  return r;
}

template <class K, class P>
Eigen::MatrixXcd gram_matrix(const std::vector<P>& pts, K kernel) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXcd G(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) G(j, k) = cplx(kernel(pts[j], pts[k]));
  return G;
}

}  // namespace rpos
