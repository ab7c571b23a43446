#include "lpflow/models.hpp"

#include <cmath>
#include <stdexcept>

namespace lpflow {
namespace {

// All Hamiltonians below are traces of products of (skew-)Hermitian
// matrices and are real up to rounding; a loud check beats silent drift.
double require_real(Complex value, const char* who) {
  if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value)))
    throw std::runtime_error(std::string(who) + ": trace has a non-real residue");
  return value.real();
}

}  // namespace

CMatrix EulerZeitlinModel::coefficient_map(const CMatrix& w) const {
  return laplacian_solve(w, *ctx);
}

double EulerZeitlinModel::hamiltonian(const CMatrix& w) const {
  const CMatrix m = coefficient_map(w);
  return require_real(0.5 * (w.adjoint() * m).trace(), "EulerZeitlinModel::hamiltonian");
}

FieldSet EulerZeitlinModel::rhs(const FieldSet& f) const {
  const CMatrix& w = f[0];
  return {commutator(w, coefficient_map(w))};
}

std::pair<CMatrix, CMatrix> MhdModel::coefficient_maps(const CMatrix& w,
                                                       const CMatrix& theta) const {
  return {laplacian_solve(w, *ctx), laplacian_apply(theta, *ctx)};
}

double MhdModel::hamiltonian(const CMatrix& w, const CMatrix& theta) const {
  const auto [m1, m2] = coefficient_maps(w, theta);
  const Complex tr = 0.5 * ((w.adjoint() * m1).trace() + (theta.adjoint() * m2).trace());
  return require_real(tr, "MhdModel::hamiltonian");
}

FieldSet MhdModel::rhs(const FieldSet& f) const {
  const CMatrix& w = f[0];
  const CMatrix& theta = f[1];
  const auto [m1, m2] = coefficient_maps(w, theta);
  return {commutator(w, m1) + commutator(theta, m2), commutator(theta, m1)};
}

PairMaps MhdModel::pair_maps() const {
  return [model = *this](const CMatrix& w, const CMatrix& theta) {
    return model.coefficient_maps(w, theta);
  };
}

std::tuple<CMatrix, CMatrix, CMatrix> HazeltineModel::coefficient_maps(
    const CMatrix& w, const CMatrix& theta, const CMatrix& chi) const {
  CMatrix m1 = laplacian_solve(w, *ctx);
  CMatrix m2 = laplacian_apply(theta, *ctx);
  CMatrix m3 = m1 - alpha * chi;
  return {std::move(m1), std::move(m2), std::move(m3)};
}

double HazeltineModel::hamiltonian(const CMatrix& w, const CMatrix& theta,
                                   const CMatrix& chi) const {
  const auto [m1, m2, m3] = coefficient_maps(w, theta, chi);
  const Complex tr =
      0.5 * (w * m1 + theta * m2 - alpha * (chi * chi)).trace();
  return require_real(tr, "HazeltineModel::hamiltonian");
}

FieldSet HazeltineModel::rhs(const FieldSet& f) const {
  const CMatrix& w = f[0];
  const CMatrix& theta = f[1];
  const CMatrix& chi = f[2];
  const auto [m1, m2, m3] = coefficient_maps(w, theta, chi);
  return {commutator(w, m1) + commutator(theta, m2), commutator(theta, m3),
          commutator(chi, m3) + commutator(theta, m2)};
}

TripleMaps HazeltineModel::triple_maps() const {
  return [model = *this](const CMatrix& w, const CMatrix& theta, const CMatrix& chi) {
    return model.coefficient_maps(w, theta, chi);
  };
}

KirchhoffParams KirchhoffParams::preset(KirchhoffPreset which) {
  KirchhoffParams p;
  switch (which) {
    case KirchhoffPreset::kirchhoff:
      // Axially symmetric body: a1 = a2, b11 = b22, c11 = c22.
      p.a = Vec3(1.0, 1.0, 2.0);
      p.b = Vec3(0.4, 0.4, 1.0).asDiagonal();
      p.c = Vec3(0.6, 0.6, 1.5).asDiagonal();
      break;
    case KirchhoffPreset::clebsch:
      // b scalar; (c11-c22)/a3 + (c33-c11)/a2 + (c22-c33)/a1 = 0.
      p.a = Vec3(1.0, 2.0, 4.0);
      p.b = 0.5 * Mat3::Identity();
      p.c = Vec3(1.0, 2.0, 2.5).asDiagonal();
      break;
    case KirchhoffPreset::lsk:
      // (b11-b22)/a3 + (b33-b11)/a2 + (b22-b33)/a1 = 0 and
      // c_ii - (b_jj-b_kk)^2/a_i equal for the three cyclic index triples.
      p.a = Vec3(1.0, 2.0, 4.0);
      p.b = Vec3(1.0, 2.0, 2.5).asDiagonal();
      p.c = Vec3(1.25, 2.125, 1.25).asDiagonal();
      break;
    case KirchhoffPreset::custom:
      throw std::invalid_argument("KirchhoffParams::preset: custom has no preset values");
  }
  return p;
}

void KirchhoffParams::validate(KirchhoffPreset which) const {
  constexpr double tol = 1e-12;
  if ((b - b.transpose()).norm() > tol * std::max(1.0, b.norm()))
    throw std::domain_error("KirchhoffParams: b must be symmetric");
  if ((c - c.transpose()).norm() > tol * std::max(1.0, c.norm()))
    throw std::domain_error("KirchhoffParams: c must be symmetric");

  auto near = [&](double x, double y) { return std::abs(x - y) <= tol; };
  auto cyclic = [&](const Mat3& m) {
    return (m(0, 0) - m(1, 1)) / a.z() + (m(2, 2) - m(0, 0)) / a.y() +
           (m(1, 1) - m(2, 2)) / a.x();
  };
  switch (which) {
    case KirchhoffPreset::kirchhoff:
      if (!near(a.x(), a.y()) || !near(b(0, 0), b(1, 1)) || !near(c(0, 0), c(1, 1)))
        throw std::domain_error("KirchhoffParams: axial symmetry constraints violated");
      break;
    case KirchhoffPreset::clebsch: {
      if (!near(b(0, 0), b(1, 1)) || !near(b(1, 1), b(2, 2)) || std::abs(cyclic(c)) > tol)
        throw std::domain_error("KirchhoffParams: Clebsch constraints violated");
      break;
    }
    case KirchhoffPreset::lsk: {
      const double k1 = c(0, 0) - std::pow(b(1, 1) - b(2, 2), 2) / a.x();
      const double k2 = c(1, 1) - std::pow(b(2, 2) - b(0, 0), 2) / a.y();
      const double k3 = c(2, 2) - std::pow(b(0, 0) - b(1, 1), 2) / a.z();
      if (std::abs(cyclic(b)) > tol || !near(k1, k2) || !near(k2, k3))
        throw std::domain_error("KirchhoffParams: Lyapunov-Steklov-Kolosov constraints violated");
      break;
    }
    case KirchhoffPreset::custom:
      break;  // only symmetry is required
  }
}

Vec3 KirchhoffModel::angular_velocity(const Vec3& m, const Vec3& p) const {
  return params.a.cwiseProduct(m) + params.b * p;
}

Vec3 KirchhoffModel::linear_velocity(const Vec3& m, const Vec3& p) const {
  return params.b * m + params.c * p;
}

double KirchhoffModel::hamiltonian(const Vec3& m, const Vec3& p) const {
  return 0.5 * m.dot(params.a.cwiseProduct(m)) + m.dot(params.b * p) +
         0.5 * p.dot(params.c * p);
}

std::pair<CMatrix, CMatrix> KirchhoffModel::coefficient_maps(const CMatrix& w,
                                                             const CMatrix& theta) const {
  const Vec3 m = unhat(w), p = unhat(theta);
  return {hat(angular_velocity(m, p)), hat(linear_velocity(m, p))};
}

FieldSet KirchhoffModel::rhs(const FieldSet& f) const {
  const auto [m1, m2] = coefficient_maps(f[0], f[1]);
  return {commutator(f[0], m1) + commutator(f[1], m2), commutator(f[1], m1)};
}

PairMaps KirchhoffModel::pair_maps() const {
  return [model = *this](const CMatrix& w, const CMatrix& theta) {
    return model.coefficient_maps(w, theta);
  };
}

}  // namespace lpflow
