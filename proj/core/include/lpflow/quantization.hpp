#pragma once

#include <vector>

#include "lpflow/algebra.hpp"
#include "lpflow/sph_coeffs.hpp"

namespace lpflow {

/// One basis element T^N_{lm}.  Its only nonzero entries sit on the single
/// diagonal with column - row = m, and they are real.  Entry r lives at
/// (r + max(0,-m), r + max(0,m)).
struct BasisBand {
  int offset = 0;
  std::vector<double> values;

  int row(int r) const { return r + std::max(0, -offset); }
  int col(int r) const { return r + std::max(0, offset); }

  /// Dense N x N form (mostly for tests and small-N experiments).
  CMatrix dense(int n) const {
    CMatrix m = CMatrix::Zero(n, n);
    for (int r = 0; r < static_cast<int>(values.size()); ++r)
      m(row(r), col(r)) = values[r];
    return m;
  }
};

/// Prefactorized LU of one symmetric tridiagonal block of the quantized
/// Laplacian (the operator acts independently on each matrix diagonal).
/// `deflated` marks the rank-one-deficient main-diagonal block, whose kernel
/// is the identity matrix; its solve pins the last unknown and removes the
/// mean afterwards.
struct TridiagFactor {
  std::vector<double> udiag;   // pivots of U
  std::vector<double> upper;   // superdiagonal of T (shared with U)
  std::vector<double> lmult;   // subdiagonal multipliers of L
  bool deflated = false;

  void solve_in_place(Eigen::Ref<CVector> b) const;
};

/// Immutable per-N tables: the orthonormal basis T^N_{lm}, the scaled
/// angular momentum generators X1, X2, X3, and the prefactorized
/// tridiagonal blocks of the quantized Laplacian.  Thread-safe to share
/// between workers once constructed.
class QuantizationContext {
 public:
  explicit QuantizationContext(int n);

  int size() const { return n_; }
  int l_max() const { return n_ - 1; }

  const BasisBand& basis(int l, int m) const { return basis_[SphCoeffs::index(l, m)]; }

  const CMatrix& x1() const { return x1_; }
  const CMatrix& x2() const { return x2_; }
  const CMatrix& x3() const { return x3_; }

  /// Diagonal of X3 and ladder weights t[i] = (X+)_{i-1,i}, i = 1..N-1.
  const RVector& x3_diagonal() const { return x3_diag_; }
  const RVector& ladder_weights() const { return ladder_; }

  const TridiagFactor& laplacian_block(int abs_offset) const { return tridiag_[abs_offset]; }

 private:
  int n_;
  std::vector<BasisBand> basis_;
  CMatrix x1_, x2_, x3_;
  RVector x3_diag_, ladder_;
  std::vector<TridiagFactor> tridiag_;
};

/// Matrix representation of a coefficient vector: W = sum c_{lm} (i T_{lm}).
/// Real fields (coefficients satisfying the reality symmetry) map into
/// su(N).  Requires coeffs.l_max <= N-1.
CMatrix project(const SphCoeffs& coeffs, const QuantizationContext& ctx);

/// Inverse of `project` on its image: c_{lm} = <i T_lm, W>_F.  Validates
/// that W is in su(N) (skew-Hermitian and traceless to 1e-12 relative).
SphCoeffs to_coeffs(const CMatrix& w, const QuantizationContext& ctx);

/// Quantized Laplacian: a scaled sum of double commutators with the
/// generators,
///   Delta(A) = -((N^2-1)/4) ([X3,[X3,A]] + 1/2 [X+,[X-,A]] + 1/2 [X-,[X+,A]]),
/// chosen so that Delta(T_lm) = -l(l+1) T_lm exactly mirrors the sphere
/// Laplacian on harmonics.  O(N^2); preserves each matrix diagonal.
CMatrix laplacian_apply(const CMatrix& a, const QuantizationContext& ctx);

enum class LaplacianPath { fast, reference };

/// Solve Delta(P) = W for skew-Hermitian W, returning the zero-mean
/// (traceless) solution P in su(N).  Any identity component of W lies in
/// the kernel of Delta and is projected away (pseudo-inverse); the midpoint
/// stage matrices carry an O(h^2) trace, so the domain is all of u(N).
///
/// `fast` solves one prefactorized tridiagonal system per matrix diagonal
/// (O(N^2) per call).  `reference` expands W in the T_lm basis, divides by
/// -l(l+1), and reassembles (O(N^3)); it exists as an independent check of
/// the fast path.
CMatrix laplacian_solve(const CMatrix& w, const QuantizationContext& ctx,
                        LaplacianPath path = LaplacianPath::fast);

}  // namespace lpflow
