#include "lpflow/bracket_check.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lpflow/sphere_grid.hpp"

namespace lpflow {
namespace {

constexpr double kPi = std::numbers::pi;

struct SynthesizedDerivatives {
  // Row a = Gauss-Legendre colatitude node, column b = longitude.
  RMatrix d_theta;
  RMatrix d_phi;
};

// Synthesize d_theta f and d_phi f at the quadrature nodes.
SynthesizedDerivatives synthesize(const SphCoeffs& f, const std::vector<double>& theta,
                                  int n_phi) {
  const int lmax = f.l_max;
  const int n_th = static_cast<int>(theta.size());
  SynthesizedDerivatives out;
  out.d_theta.setZero(n_th, n_phi);
  out.d_phi.setZero(n_th, n_phi);

  RMatrix p, dp;
  std::vector<Complex> cm_dth(lmax + 1), cm(lmax + 1);
  for (int a = 0; a < n_th; ++a) {
    legendre_table_with_deriv(lmax, theta[a], p, dp);
    for (int m = 0; m <= lmax; ++m) {
      Complex acc_d(0, 0), acc(0, 0);
      for (int l = std::max(1, m); l <= lmax; ++l) {
        acc_d += f.at(l, m) * dp(l, m);
        acc += f.at(l, m) * p(l, m);
      }
      cm_dth[m] = acc_d;
      cm[m] = acc;
    }
    for (int b = 0; b < n_phi; ++b) {
      const double phi = 2.0 * kPi * b / n_phi;
      double vt = cm_dth[0].real();
      double vp = 0.0;  // d_phi of the m = 0 part vanishes
      for (int m = 1; m <= lmax; ++m) {
        const Complex e = std::polar(1.0, m * phi);
        vt += 2.0 * (cm_dth[m] * e).real();
        vp += 2.0 * (Complex(0, m) * cm[m] * e).real();
      }
      out.d_theta(a, b) = vt;
      out.d_phi(a, b) = vp;
    }
  }
  return out;
}

}  // namespace

double quantization_hbar(int n) {
  return 4.0 * std::sqrt(kPi / (static_cast<double>(n) * (static_cast<double>(n) * n - 1.0)));
}

SphCoeffs sphere_poisson_bracket(const SphCoeffs& f, const SphCoeffs& g, int l_out) {
  if (l_out < 1) throw std::invalid_argument("sphere_poisson_bracket: l_out must be >= 1");
  const int band = f.l_max + g.l_max;  // bracket band limit is at most band - 1

  // Quadrature exact for the product of the bracket (degree <= band - 1)
  // with conj(Y_lm), l <= l_out.
  const int n_th = band + l_out / 2 + 2;
  const int n_phi = 2 * (band + l_out) + 2;
  auto [nodes, weights] = gauss_legendre(n_th);
  std::vector<double> theta(n_th);
  for (int a = 0; a < n_th; ++a) theta[a] = std::acos(nodes[a]);

  const SynthesizedDerivatives df = synthesize(f, theta, n_phi);
  const SynthesizedDerivatives dg = synthesize(g, theta, n_phi);

  // Bracket values h(theta_a, phi_b).
  RMatrix h(n_th, n_phi);
  for (int a = 0; a < n_th; ++a) {
    const double inv_sin = 1.0 / std::sin(theta[a]);
    for (int b = 0; b < n_phi; ++b)
      h(a, b) = inv_sin * (df.d_phi(a, b) * dg.d_theta(a, b) -
                           df.d_theta(a, b) * dg.d_phi(a, b));
  }

  // Analysis: c_lm = sum_a w_a sum_b (2 pi / n_phi) h conj(Y_lm).
  SphCoeffs out(l_out);
  RMatrix p;
  const double dphi_w = 2.0 * kPi / n_phi;
  // Longitude transform first: H(a, m) = sum_b h e^{-i m phi_b}.
  Eigen::MatrixXcd hm(n_th, l_out + 1);
  hm.setZero();
  for (int a = 0; a < n_th; ++a)
    for (int b = 0; b < n_phi; ++b) {
      const double phi = 2.0 * kPi * b / n_phi;
      for (int m = 0; m <= l_out; ++m)
        hm(a, m) += h(a, b) * std::polar(1.0, -m * phi);
    }
  for (int a = 0; a < n_th; ++a) {
    legendre_table(l_out, theta[a], p);
    for (int m = 0; m <= l_out; ++m)
      for (int l = std::max(1, m); l <= l_out; ++l)
        out.at(l, m) += weights[a] * dphi_w * hm(a, m) * p(l, m);
  }
  // Fill m < 0 from the real-field symmetry (h is real).
  for (int l = 1; l <= l_out; ++l)
    for (int m = 1; m <= l; ++m)
      out.at(l, -m) = (m % 2 == 0 ? 1.0 : -1.0) * std::conj(out.at(l, m));
  return out;
}

double bracket_consistency_error(const SphCoeffs& f, const SphCoeffs& g,
                                 const QuantizationContext& ctx) {
  const int n = ctx.size();
  if (f.l_max > ctx.l_max() || g.l_max > ctx.l_max())
    throw std::invalid_argument("bracket_consistency_error: band limit exceeds N-1");

  const CMatrix pf = project(f, ctx);
  const CMatrix pg = project(g, ctx);
  const CMatrix scaled_comm = commutator(pf, pg) / quantization_hbar(n);

  // p truncates the bracket at l = N-1 (higher harmonics map to zero).
  const SphCoeffs full = sphere_poisson_bracket(f, g, std::min(f.l_max + g.l_max, n - 1));
  const CMatrix projected = project(full, ctx);

  return (projected - scaled_comm).norm();
}

}  // namespace lpflow
