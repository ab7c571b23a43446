#pragma once

#include <complex>
#include <vector>

#include "lpflow/algebra.hpp"

namespace lpflow {

/// Coefficients of a zero-mean real function on the sphere in the complex
/// spherical harmonic basis: f = sum_{l=1}^{l_max} sum_{m=-l}^{l} c_{lm} Y_lm.
/// The l = 0 term is excluded (vorticity-like fields have zero mean).
/// A real field satisfies c_{l,-m} = (-1)^m conj(c_{lm}).
struct SphCoeffs {
  int l_max = 0;
  std::vector<Complex> data;  // packed by index(l, m)

  SphCoeffs() = default;
  explicit SphCoeffs(int lmax) : l_max(lmax), data(size_for(lmax), Complex(0, 0)) {}

  static int size_for(int lmax) { return (lmax + 1) * (lmax + 1) - 1; }

  /// Packed position of (l, m): l ranges over 1..l_max, m over -l..l.
  static int index(int l, int m) { return (l * l - 1) + (m + l); }

  Complex& at(int l, int m) { return data[index(l, m)]; }
  const Complex& at(int l, int m) const { return data[index(l, m)]; }

  /// Largest deviation from the real-field symmetry c_{l,-m} = (-1)^m conj(c_{lm}).
  double reality_defect() const {
    double worst = 0.0;
    for (int l = 1; l <= l_max; ++l)
      for (int m = 0; m <= l; ++m) {
        const Complex expect = (m % 2 == 0 ? 1.0 : -1.0) * std::conj(at(l, m));
        worst = std::max(worst, std::abs(at(l, -m) - expect));
      }
    return worst;
  }

  bool is_real_field(double tol = 1e-12) const { return reality_defect() <= tol; }
};

}  // namespace lpflow
