#include "lpflow/sphere_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lpflow {

namespace {
constexpr double kPi = std::numbers::pi;
}

double GridField::theta(int a) const { return kPi * (a + 0.5) / n_lat; }
double GridField::phi(int b) const { return 2.0 * kPi * b / n_lon; }

void legendre_table(int l_max, double theta, RMatrix& p) {
  if (theta <= 0.0 || theta >= kPi)
    throw std::domain_error("legendre_table: theta must lie strictly inside (0, pi)");
  p.setZero(l_max + 1, l_max + 1);
  const double ct = std::cos(theta), st = std::sin(theta);

  p(0, 0) = std::sqrt(1.0 / (4.0 * kPi));
  // Diagonal: Pbar_mm = -sqrt((2m+1)/(2m)) sin(theta) Pbar_{m-1,m-1}.
  for (int m = 1; m <= l_max; ++m)
    p(m, m) = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * p(m - 1, m - 1);
  // First off-diagonal, then the three-term recurrence upward in l.
  for (int m = 0; m < l_max; ++m)
    p(m + 1, m) = std::sqrt(2.0 * m + 3.0) * ct * p(m, m);
  for (int m = 0; m <= l_max; ++m)
    for (int l = m + 2; l <= l_max; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) /
                                 (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) -
                                  static_cast<double>(m) * m) /
                                 (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
      p(l, m) = a * (ct * p(l - 1, m) - b * p(l - 2, m));
    }
}

void legendre_table_with_deriv(int l_max, double theta, RMatrix& p, RMatrix& dp) {
  legendre_table(l_max, theta, p);
  dp.setZero(l_max + 1, l_max + 1);
  const double ct = std::cos(theta), st = std::sin(theta);
  // d(Pbar_lm)/dtheta = (l cos(theta) Pbar_lm - c_lm Pbar_{l-1,m}) / sin(theta)
  // with c_lm = sqrt((l^2 - m^2)(2l+1)/(2l-1)); the l = m term has no lower
  // neighbour.
  for (int l = 0; l <= l_max; ++l)
    for (int m = 0; m <= l; ++m) {
      double lower = 0.0;
      if (l - 1 >= m) {
        const double c = std::sqrt((static_cast<double>(l) * l - static_cast<double>(m) * m) *
                                   (2.0 * l + 1.0) / (2.0 * l - 1.0));
        lower = c * p(l - 1, m);
      }
      dp(l, m) = (l * ct * p(l, m) - lower) / st;
    }
}

GridField evaluate_on_grid(const SphCoeffs& coeffs, int n_lat, int n_lon) {
  if (n_lat < 1 || n_lon < 1)
    throw std::invalid_argument("evaluate_on_grid: grid dimensions must be positive");
  double max_abs = 0.0;
  for (const Complex& c : coeffs.data) max_abs = std::max(max_abs, std::abs(c));
  if (!coeffs.is_real_field(1e-9 * std::max(1.0, max_abs)))
    throw std::invalid_argument("evaluate_on_grid: coefficients violate the real-field symmetry");

  GridField grid;
  grid.n_lat = n_lat;
  grid.n_lon = n_lon;
  grid.values.setZero(n_lat, n_lon);

  const int lmax = coeffs.l_max;
  RMatrix p;
  std::vector<Complex> cm(lmax + 1);
  for (int a = 0; a < n_lat; ++a) {
    legendre_table(lmax, grid.theta(a), p);
    // Collapse l: cm[m] = sum_l c_{lm} Pbar_lm(theta_a).
    for (int m = 0; m <= lmax; ++m) {
      Complex acc(0, 0);
      for (int l = std::max(1, m); l <= lmax; ++l) acc += coeffs.at(l, m) * p(l, m);
      cm[m] = acc;
    }
    for (int b = 0; b < n_lon; ++b) {
      const double phi = grid.phi(b);
      double v = cm[0].real();
      for (int m = 1; m <= lmax; ++m)
        v += 2.0 * (cm[m] * std::polar(1.0, m * phi)).real();
      grid.values(a, b) = v;
    }
  }
  return grid;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  return {x, w};
}

}  // namespace lpflow
