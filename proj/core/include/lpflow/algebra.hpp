#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lpflow {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Vec3    = Eigen::Vector3d;
using Mat3    = Eigen::Matrix3d;

/// Matrix Lie algebras the integrators operate on.  Both satisfy
/// A^H J + J A = 0 with J^2 proportional to the identity (J = I for su(n),
/// J = I with real entries for so(3)), which is the property the
/// isospectral midpoint scheme needs.
enum class AlgebraTag { su, so3 };

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  return a * b - b * a;
}

inline double frobenius_norm(const CMatrix& a) { return a.norm(); }

/// Frobenius inner product <A,B> = tr(A^H B).
inline Complex frobenius_inner(const CMatrix& a, const CMatrix& b) {
  return (a.adjoint() * b).trace();
}

inline bool is_skew_hermitian(const CMatrix& a, double tol = 1e-12) {
  const double scale = std::max(1.0, a.norm());
  return (a + a.adjoint()).norm() <= tol * scale;
}

inline bool is_traceless(const CMatrix& a, double tol = 1e-12) {
  const double scale = std::max(1.0, a.norm());
  return std::abs(a.trace()) <= tol * scale;
}

/// True when `a` lies in the algebra named by `tag` up to a relative
/// Frobenius tolerance.
inline bool in_algebra(const CMatrix& a, AlgebraTag tag, double tol = 1e-12) {
  if (tag == AlgebraTag::su) return is_skew_hermitian(a, tol) && is_traceless(a, tol);
  // so(3): real, antisymmetric, 3x3.
  if (a.rows() != 3 || a.cols() != 3) return false;
  const double scale = std::max(1.0, a.norm());
  if (a.imag().norm() > tol * scale) return false;
  return (a + a.transpose()).norm() <= tol * scale;
}

/// Orthogonal projection onto the algebra: removes the Hermitian part and
/// the trace (su), or the symmetric and imaginary parts (so(3)).  Applied
/// after every accepted integrator step to stop rounding noise from
/// accumulating outside the algebra.
inline CMatrix project_to_algebra(const CMatrix& a, AlgebraTag tag) {
  if (tag == AlgebraTag::su) {
    CMatrix s = 0.5 * (a - a.adjoint());
    const Complex mean_trace = s.trace() / static_cast<double>(s.rows());
    s.diagonal().array() -= mean_trace;
    return s;
  }
  CMatrix s = 0.5 * (a - a.transpose());
  return s.real().cast<Complex>();
}

/// so(3) hat map: (hat v) w = v x w.
inline CMatrix hat(const Vec3& v) {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 1) = -v.z(); m(0, 2) =  v.y();
  m(1, 0) =  v.z(); m(1, 2) = -v.x();
  m(2, 0) = -v.y(); m(2, 1) =  v.x();
  return m;
}

inline Vec3 unhat(const CMatrix& m) {
  if (m.rows() != 3 || m.cols() != 3) throw std::invalid_argument("unhat: matrix must be 3x3");
  return Vec3(m(2, 1).real(), m(0, 2).real(), m(1, 0).real());
}

}  // namespace lpflow
