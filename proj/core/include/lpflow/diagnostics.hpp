#pragma once

#include <map>
#include <string>
#include <vector>

#include "lpflow/algebra.hpp"

namespace lpflow {

/// Eigenvalues of a Hermitian matrix, ascending, computed by a
/// self-contained cyclic complex Jacobi iteration (no external eigensolver
/// involved, so it can serve as an independent check of one).
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

/// Spectrum of a traceless skew-Hermitian matrix reported through its
/// Hermitian counterpart -iA: sorted real eigenvalues lambda_k, so that the
/// eigenvalues of A itself are i lambda_k.
std::vector<double> spectrum(const CMatrix& a);

/// Power-sum Casimir tr((-iA)^k); real for skew-Hermitian A.  Equals the
/// k-th power sum of spectrum(A).
double trace_casimir(const CMatrix& a, int k);

/// Cross invariant Re tr((-iW) (-iTheta)^d), conserved by the magnetic
/// midpoint flow for every d.
double cross_helicity(const CMatrix& w, const CMatrix& theta, int d);

/// The conserved set of the three-field plasma system for power functions:
/// tr((-i(W-Chi))^k), tr((-iTheta)^k), and Re tr((-iChi)(-iTheta)^d).
struct ThreeFieldCasimirs {
  double w_minus_chi_power = 0.0;
  double theta_power = 0.0;
  double cross = 0.0;
};
ThreeFieldCasimirs hazeltine_casimirs(const CMatrix& w, const CMatrix& theta,
                                      const CMatrix& chi, int k, int d);

/// Named scalar time series collected while integrating.
struct DiagnosticsRecord {
  std::vector<std::string> names;
  std::vector<double> times;
  std::vector<std::vector<double>> rows;   // rows[i][j] = series j at times[i]
  std::vector<int> stage_iterations;       // Picard sweeps per recorded step

  void append(double t, std::vector<double> values, int iterations);
};

struct SeriesDrift {
  double max_deviation = 0.0;  // max_t |x(t) - x(0)|
  double slope = 0.0;          // least-squares d/dt fit
  double amplitude = 0.0;      // max - min over the window
};

/// Drift statistics for every column of the record.
std::map<std::string, SeriesDrift> drift_report(const DiagnosticsRecord& record);

}  // namespace lpflow
