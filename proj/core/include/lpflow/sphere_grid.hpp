#pragma once

#include <utility>
#include <vector>

#include "lpflow/algebra.hpp"
#include "lpflow/sph_coeffs.hpp"

namespace lpflow {

/// Real samples of a field on a colatitude x longitude grid.
struct GridField {
  int n_lat = 0;
  int n_lon = 0;
  RMatrix values;  // (n_lat x n_lon), row a = colatitude index

  double theta(int a) const;  // cell-centred colatitude of row a
  double phi(int b) const;    // longitude of column b
};

/// Fully normalized associated Legendre functions Pbar_lm(cos theta)
/// (Condon-Shortley phase folded in, so Y_lm = Pbar_lm e^{i m phi}),
/// for all 0 <= m <= l <= l_max at a single colatitude.  Entries with
/// m > l are left zero.  Requires 0 < theta < pi.
void legendre_table(int l_max, double theta, RMatrix& p);

/// Same table plus the colatitude derivatives d(Pbar_lm)/dtheta.
void legendre_table_with_deriv(int l_max, double theta, RMatrix& p, RMatrix& dp);

/// Synthesize the real field on a cell-centred grid:
///   theta_a = pi (a + 1/2) / n_lat,  phi_b = 2 pi b / n_lon.
/// The coefficients must satisfy the real-field symmetry.
GridField evaluate_on_grid(const SphCoeffs& coeffs, int n_lat, int n_lon);

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on the
/// Legendre polynomial; exact for polynomials of degree <= 2n-1).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

}  // namespace lpflow
