#include <cmath>
#include <stdexcept>

#include "lpflow/quantization.hpp"

namespace lpflow {
namespace {

// R = [X+, B] with X+ the superdiagonal ladder matrix: R_ij = t_{i+1} B_{i+1,j} - B_{i,j-1} t_j.
CMatrix ladder_plus_comm(const CMatrix& b, const RVector& t) {
  const int n = static_cast<int>(b.rows());
  CMatrix r = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Complex v(0, 0);
      if (i + 1 < n) v += t[i + 1] * b(i + 1, j);
      if (j >= 1) v -= b(i, j - 1) * t[j];
      r(i, j) = v;
    }
  return r;
}

// R = [X-, B] with X- the subdiagonal ladder matrix: R_ij = t_i B_{i-1,j} - B_{i,j+1} t_{j+1}.
CMatrix ladder_minus_comm(const CMatrix& b, const RVector& t) {
  const int n = static_cast<int>(b.rows());
  CMatrix r = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Complex v(0, 0);
      if (i >= 1) v += t[i] * b(i - 1, j);
      if (j + 1 < n) v -= b(i, j + 1) * t[j + 1];
      r(i, j) = v;
    }
  return r;
}

}  // namespace

CMatrix laplacian_apply(const CMatrix& a, const QuantizationContext& ctx) {
  const int n = ctx.size();
  if (a.rows() != n || a.cols() != n)
    throw std::invalid_argument("laplacian_apply: matrix size does not match context");
  const RVector& d = ctx.x3_diagonal();
  const RVector& t = ctx.ladder_weights();

  CMatrix acc = 0.5 * (ladder_plus_comm(ladder_minus_comm(a, t), t) +
                       ladder_minus_comm(ladder_plus_comm(a, t), t));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double dd = d[i] - d[j];
      acc(i, j) += dd * dd * a(i, j);
    }
  const double pref = -0.25 * (static_cast<double>(n) * n - 1.0);
  return pref * acc;
}

void TridiagFactor::solve_in_place(Eigen::Ref<CVector> b) const {
  const int n = static_cast<int>(udiag.size());
  // The deflated (main diagonal) block is singular: kernel and cokernel are
  // both the constant vector.  Project the right-hand side onto the image
  // first (this is the pseudo-inverse; any identity component of the input
  // is discarded), then pin the last unknown and remove the mean so the
  // solution is the traceless representative.
  if (deflated) {
    const Complex rhs_mean = b.sum() / static_cast<double>(n);
    b.array() -= rhs_mean;
  }
  // Forward elimination.
  for (int i = 1; i < n; ++i) b[i] -= lmult[i - 1] * b[i - 1];
  if (deflated) {
    b[n - 1] = Complex(0, 0);
  } else {
    b[n - 1] /= udiag[n - 1];
  }
  for (int i = n - 2; i >= 0; --i) b[i] = (b[i] - upper[i] * b[i + 1]) / udiag[i];
  if (deflated) {
    const Complex mean = b.sum() / static_cast<double>(n);
    b.array() -= mean;
  }
}

std::vector<TridiagFactor> detail_build_laplacian_blocks(const QuantizationContext& ctx) {
  const int n = ctx.size();
  std::vector<TridiagFactor> blocks(n);

  for (int k = 0; k < n; ++k) {
    const int len = n - k;
    RVector diag(len), sup(std::max(0, len - 1)), sub(std::max(0, len - 1));

    // Probe column by column: the image of a single-diagonal element stays
    // on that diagonal, so reading it off recovers the tridiagonal block.
    for (int r = 0; r < len; ++r) {
      CMatrix probe = CMatrix::Zero(n, n);
      if (k == 0) {
        probe(r, r) = Complex(0, 1);
      } else {
        probe(r, r + k) = Complex(1, 0);
        probe(r + k, r) = Complex(-1, 0);
      }
      const CMatrix image = laplacian_apply(probe, ctx);
      const auto col = image.diagonal(k);
      auto coeff = [&](int i) { return k == 0 ? col[i].imag() : col[i].real(); };
      diag[r] = coeff(r);
      if (r > 0) sup[r - 1] = coeff(r - 1);
      if (r + 1 < len) sub[r] = coeff(r + 1);
    }

    // The block is symmetric up to rounding; the factorization uses the
    // measured entries directly.
    TridiagFactor f;
    f.deflated = (k == 0);
    f.udiag.resize(len);
    f.upper.assign(sup.data(), sup.data() + sup.size());
    f.lmult.resize(std::max(0, len - 1));
    f.udiag[0] = diag[0];
    for (int i = 1; i < len; ++i) {
      f.lmult[i - 1] = sub[i - 1] / f.udiag[i - 1];
      f.udiag[i] = diag[i] - f.lmult[i - 1] * f.upper[i - 1];
    }
    blocks[k] = std::move(f);
  }
  return blocks;
}

CMatrix laplacian_solve(const CMatrix& w, const QuantizationContext& ctx, LaplacianPath path) {
  const int n = ctx.size();
  if (w.rows() != n || w.cols() != n)
    throw std::invalid_argument("laplacian_solve: matrix size does not match context");
  if (!is_skew_hermitian(w))
    throw std::invalid_argument("laplacian_solve: matrix is not skew-Hermitian");

  // Any identity (trace) component lies in the operator's kernel and is
  // projected away; both paths return the traceless pseudo-inverse solution.
  // Midpoint stage matrices carry an O(h^2) trace, so this must accept all
  // of u(N), not just su(N).
  if (path == LaplacianPath::reference) {
    const CMatrix w0 = w - (w.trace() / static_cast<double>(n)) * CMatrix::Identity(n, n);
    SphCoeffs c = to_coeffs(w0, ctx);
    for (int l = 1; l <= c.l_max; ++l) {
      const double eig = -static_cast<double>(l) * (l + 1);
      for (int m = -l; m <= l; ++m) c.at(l, m) /= eig;
    }
    return project(c, ctx);
  }

  CMatrix p = CMatrix::Zero(n, n);
  for (int m = -(n - 1); m <= n - 1; ++m) {
    CVector rhs = w.diagonal(m);
    ctx.laplacian_block(std::abs(m)).solve_in_place(rhs);
    p.diagonal(m) = rhs;
  }
  return p;
}

}  // namespace lpflow
