#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// Composite Simpson rule, n even.
template <class F>
cplx simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  cplx s = cplx(f(a)) + cplx(f(b));
  for (int j = 1; j < n; ++j) s += (j % 2 ? 4.0 : 2.0) * cplx(f(a + j * h));
  return s * h / 3.0;
}

// Eigenvalues of a Hermitian matrix via cyclic Jacobi on the real 2n x 2n embedding.
inline std::vector<double> hermitian_eigenvalues(const std::vector<std::vector<cplx>>& A) {
  const int n = static_cast<int>(A.size()), m = 2 * n;
  std::vector<std::vector<double>> S(m, std::vector<double>(m));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const cplx h = 0.5 * (A[j][k] + std::conj(A[k][j]));
      S[j][k] = h.real();
      S[j + n][k + n] = h.real();
      S[j][k + n] = -h.imag();
      S[j + n][k] = h.imag();
    }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) off += S[p][q] * S[p][q];
    if (off < 1e-30) break;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) {
        if (std::abs(S[p][q]) < 1e-300) continue;
        const double theta = (S[q][q] - S[p][p]) / (2.0 * S[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < m; ++k) {
          const double a = S[k][p], b = S[k][q];
          S[k][p] = c * a - s * b;
          S[k][q] = s * a + c * b;
        }
        for (int k = 0; k < m; ++k) {
          const double a = S[p][k], b = S[q][k];
          S[p][k] = c * a - s * b;
          S[q][k] = s * a + c * b;
        }
      }
  }
  std::vector<double> ev(m);
  for (int j = 0; j < m; ++j) ev[j] = S[j][j];
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (int j = 0; j < m; j += 2) out.push_back(ev[j]);
  return out;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  cplx disc() {
    const double r = std::sqrt(uniform(0.0, 0.9)), t = uniform(0.0, 2 * pi);
    return std::polar(r, t);
  }
  cplx half_plane() { return {uniform(-3.0, 3.0), uniform(0.05, 3.0)}; }
  cplx strip(double beta) { return {uniform(-3.0, 3.0), beta * uniform(0.02, 0.98)}; }
};

}  // namespace oracle
