#pragma once

#include <tuple>
#include <utility>

#include "lpflow/integrators.hpp"
#include "lpflow/quantization.hpp"

namespace lpflow {

/// Single-field incompressible flow on the quantized sphere:
///   W' = [W, M],  M = Delta^{-1} W.
struct EulerZeitlinModel {
  explicit EulerZeitlinModel(const QuantizationContext& ctx) : ctx(&ctx) {}
  const QuantizationContext* ctx;

  CMatrix coefficient_map(const CMatrix& w) const;
  double hamiltonian(const CMatrix& w) const;  // (1/2) tr(W^H M)
  FieldSet rhs(const FieldSet& f) const;       // f = {W}
};

/// Two-field magnetohydrodynamics:
///   W' = [W, M1] + [Theta, M2],  Theta' = [Theta, M1],
///   M1 = Delta^{-1} W,  M2 = Delta Theta.
struct MhdModel {
  explicit MhdModel(const QuantizationContext& ctx) : ctx(&ctx) {}
  const QuantizationContext* ctx;

  std::pair<CMatrix, CMatrix> coefficient_maps(const CMatrix& w, const CMatrix& theta) const;
  /// H = (1/2) (tr(W^H M1) + tr(Theta^H M2)).
  double hamiltonian(const CMatrix& w, const CMatrix& theta) const;
  FieldSet rhs(const FieldSet& f) const;  // f = {W, Theta}
  PairMaps pair_maps() const;
};

/// Three-field magnetized plasma flow:
///   W' = [W, M1] + [Theta, M2],
///   Theta' = [Theta, M3],
///   Chi' = [Chi, M3] + [Theta, M2],
///   M1 = Delta^{-1} W,  M2 = Delta Theta,  M3 = M1 - alpha Chi.
/// alpha = 0 decouples (W, Theta) into the two-field system above.
struct HazeltineModel {
  HazeltineModel(const QuantizationContext& ctx, double alpha) : ctx(&ctx), alpha(alpha) {}
  const QuantizationContext* ctx;
  double alpha = 0.0;

  std::tuple<CMatrix, CMatrix, CMatrix> coefficient_maps(const CMatrix& w, const CMatrix& theta,
                                                         const CMatrix& chi) const;
  /// H = (1/2) tr(W M1 + Theta M2 - alpha Chi^2).
  double hamiltonian(const CMatrix& w, const CMatrix& theta, const CMatrix& chi) const;
  FieldSet rhs(const FieldSet& f) const;  // f = {W, Theta, Chi}
  TripleMaps triple_maps() const;
};

enum class KirchhoffPreset { kirchhoff, clebsch, lsk, custom };

/// Quadratic Hamiltonian coefficients for a rigid body in an ideal fluid:
///   H(m, p) = (1/2) m.diag(a) m + m.b p + (1/2) p.c p,
/// with b and c symmetric.  The named presets satisfy the classical
/// integrability constraints exactly.
struct KirchhoffParams {
  Vec3 a = Vec3::Zero();
  Mat3 b = Mat3::Zero();
  Mat3 c = Mat3::Zero();

  static KirchhoffParams preset(KirchhoffPreset which);

  /// Throws std::domain_error if b or c is not symmetric (1e-12), or if a
  /// named preset's integrability constraints are violated (1e-12).
  void validate(KirchhoffPreset which = KirchhoffPreset::custom) const;
};

/// Rigid body in an ideal fluid as a flow on so(3) x so(3)*:
///   W = hat(m), Theta = hat(p), M1 = hat(omega), M2 = hat(u),
///   omega = dH/dm = diag(a) m + b p,  u = dH/dp = b m + c p.
struct KirchhoffModel {
  explicit KirchhoffModel(KirchhoffParams params,
                          KirchhoffPreset which = KirchhoffPreset::custom)
      : params(params) {
    params.validate(which);
  }
  KirchhoffParams params;

  Vec3 angular_velocity(const Vec3& m, const Vec3& p) const;
  Vec3 linear_velocity(const Vec3& m, const Vec3& p) const;
  double hamiltonian(const Vec3& m, const Vec3& p) const;

  std::pair<CMatrix, CMatrix> coefficient_maps(const CMatrix& w, const CMatrix& theta) const;
  FieldSet rhs(const FieldSet& f) const;  // f = {hat(m), hat(p)}
  PairMaps pair_maps() const;
};

}  // namespace lpflow
