#include "lpflow/quantization.hpp"

#include <cmath>
#include <stdexcept>

#include "lpflow/wigner.hpp"

namespace lpflow {

// Tridiagonal blocks of the Laplacian, recovered by probing laplacian_apply
// with canonical single-diagonal algebra elements.  Defined in laplacian.cpp
// next to the solver that consumes them.
std::vector<TridiagFactor> detail_build_laplacian_blocks(const QuantizationContext& ctx);

QuantizationContext::QuantizationContext(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("QuantizationContext: N must be >= 2");

  // Scaled angular momentum generators.  With gamma = 2/sqrt(N^2-1) they
  // satisfy [X_a, X_b] = (2i gamma) eps_abc X_c and X1^2+X2^2+X3^2 = I.
  const double gamma = 2.0 / std::sqrt(static_cast<double>(n) * n - 1.0);
  const double s = 0.5 * (n - 1);

  x3_diag_.resize(n);
  for (int i = 0; i < n; ++i) x3_diag_[i] = gamma * (s - i);

  ladder_.setZero(n);  // ladder_[i] = (X+)_{i-1,i}, valid for i = 1..N-1
  for (int i = 1; i < n; ++i)
    ladder_[i] = gamma * std::sqrt(static_cast<double>(i) * (n - i));

  x1_ = CMatrix::Zero(n, n);
  x2_ = CMatrix::Zero(n, n);
  x3_ = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) x3_(i, i) = x3_diag_[i];
  for (int i = 1; i < n; ++i) {
    const double t = ladder_[i];
    x1_(i - 1, i) = 0.5 * t;
    x1_(i, i - 1) = 0.5 * t;
    x2_(i - 1, i) = Complex(0, -0.5) * t;
    x2_(i, i - 1) = Complex(0, 0.5) * t;
  }

  // Basis T_{lm}: entry (i, i+m) = (-1)^i sqrt(2l+1) * 3j(s l s; -m1 m m2)
  // with m1 = s-i, m2 = s-(i+m).  Real, single-diagonal, orthonormal in the
  // Frobenius inner product.
  const int two_s = n - 1;
  basis_.resize(SphCoeffs::size_for(n - 1));
  for (int l = 1; l <= n - 1; ++l) {
    const double norm = std::sqrt(2.0 * l + 1.0);
    for (int m = -l; m <= l; ++m) {
      BasisBand band;
      band.offset = m;
      band.values.resize(n - std::abs(m));
      for (int r = 0; r < static_cast<int>(band.values.size()); ++r) {
        const int i = band.row(r);
        const int j = band.col(r);
        const HalfInt hs = HalfInt::from_twice(two_s);
        const HalfInt hm1 = HalfInt::from_twice(two_s - 2 * i);
        const HalfInt hm2 = HalfInt::from_twice(two_s - 2 * j);
        const double w = wigner3j(hs, HalfInt(l), hs, -hm1, HalfInt(m), hm2);
        band.values[r] = (i % 2 == 0 ? 1.0 : -1.0) * norm * w;
      }
      basis_[SphCoeffs::index(l, m)] = std::move(band);
    }
  }

  tridiag_ = detail_build_laplacian_blocks(*this);
}

CMatrix project(const SphCoeffs& coeffs, const QuantizationContext& ctx) {
  if (coeffs.l_max > ctx.l_max())
    throw std::invalid_argument("project: coefficient band limit exceeds N-1");
  const int n = ctx.size();
  CMatrix w = CMatrix::Zero(n, n);
  for (int l = 1; l <= coeffs.l_max; ++l)
    for (int m = -l; m <= l; ++m) {
      const Complex c = Complex(0, 1) * coeffs.at(l, m);
      if (c == Complex(0, 0)) continue;
      const BasisBand& band = ctx.basis(l, m);
      auto diag = w.diagonal(m);
      for (int r = 0; r < static_cast<int>(band.values.size()); ++r)
        diag[r] += c * band.values[r];
    }
  return w;
}

SphCoeffs to_coeffs(const CMatrix& w, const QuantizationContext& ctx) {
  const int n = ctx.size();
  if (w.rows() != n || w.cols() != n)
    throw std::invalid_argument("to_coeffs: matrix size does not match context");
  if (!is_skew_hermitian(w) || !is_traceless(w))
    throw std::invalid_argument("to_coeffs: matrix is not in su(N)");

  SphCoeffs coeffs(ctx.l_max());
  for (int l = 1; l <= ctx.l_max(); ++l)
    for (int m = -l; m <= l; ++m) {
      const BasisBand& band = ctx.basis(l, m);
      const auto diag = w.diagonal(m);
      Complex acc(0, 0);
      for (int r = 0; r < static_cast<int>(band.values.size()); ++r)
        acc += band.values[r] * diag[r];
      coeffs.at(l, m) = Complex(0, -1) * acc;  // <i T_lm, W>_F with real T
    }
  return coeffs;
}

}  // namespace lpflow
