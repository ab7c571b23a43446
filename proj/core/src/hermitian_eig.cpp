#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpflow/diagnostics.hpp"

namespace lpflow {

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
  const int n = static_cast<int>(h.rows());
  if (h.cols() != n) throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  const double scale = std::max(1.0, h.norm());
  if ((h - h.adjoint()).norm() > 1e-12 * scale)
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");

  CMatrix a = 0.5 * (h + h.adjoint());  // symmetrize away rounding noise

  auto off_norm = [&] {
    double s = 0.0;
    for (int q = 0; q < n; ++q)
      for (int p = 0; p < n; ++p)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  const double target = 1e-15 * scale;
  constexpr int kMaxSweeps = 60;
  int sweep = 0;
  while (off_norm() > target) {
    if (++sweep > kMaxSweeps)
      throw std::runtime_error("hermitian_eigenvalues: Jacobi iteration failed to converge");
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double beta = std::abs(a(p, q));
        if (beta == 0.0) continue;
        // Phase that makes the (p,q) entry real, then a real Jacobi rotation.
        const Complex v = a(p, q) / beta;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * beta);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Columns p and q of A <- U^H A U with U = [[v c, v s], [-s, c]].
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * (v * akp) - s * akq;
          a(k, q) = s * (v * akp) + c * akq;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = app - t * beta;
        a(q, q) = aqq + t * beta;
        a(p, q) = Complex(0, 0);
        a(q, p) = Complex(0, 0);
      }
  }

  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace lpflow
