#include "lpflow/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace lpflow {
namespace {

CMatrix hermitian_counterpart(const CMatrix& a, const char* who) {
  if (!is_skew_hermitian(a))
    throw std::invalid_argument(std::string(who) + ": matrix is not skew-Hermitian");
  return Complex(0, -1) * a;
}

CMatrix matrix_power(const CMatrix& h, int k) {
  CMatrix acc = h;
  for (int i = 1; i < k; ++i) acc = acc * h;
  return acc;
}

double real_trace(const CMatrix& m, const char* who) {
  const Complex tr = m.trace();
  if (std::abs(tr.imag()) > 1e-12 * std::max(1.0, std::abs(tr)))
    throw std::runtime_error(std::string(who) + ": trace has a non-real residue");
  return tr.real();
}

}  // namespace

std::vector<double> spectrum(const CMatrix& a) {
  return hermitian_eigenvalues(hermitian_counterpart(a, "spectrum"));
}

double trace_casimir(const CMatrix& a, int k) {
  if (k < 1) throw std::invalid_argument("trace_casimir: power must be >= 1");
  return real_trace(matrix_power(hermitian_counterpart(a, "trace_casimir"), k),
                    "trace_casimir");
}

double cross_helicity(const CMatrix& w, const CMatrix& theta, int d) {
  if (d < 1) throw std::invalid_argument("cross_helicity: power must be >= 1");
  const CMatrix hw = hermitian_counterpart(w, "cross_helicity");
  const CMatrix ht = hermitian_counterpart(theta, "cross_helicity");
  return real_trace(hw * matrix_power(ht, d), "cross_helicity");
}

ThreeFieldCasimirs hazeltine_casimirs(const CMatrix& w, const CMatrix& theta,
                                      const CMatrix& chi, int k, int d) {
  ThreeFieldCasimirs out;
  out.w_minus_chi_power = trace_casimir(w - chi, k);
  out.theta_power = trace_casimir(theta, k);
  out.cross = cross_helicity(chi, theta, d);
  return out;
}

void DiagnosticsRecord::append(double t, std::vector<double> values, int iterations) {
  if (values.size() != names.size())
    throw std::invalid_argument("DiagnosticsRecord::append: value count does not match names");
  times.push_back(t);
  rows.push_back(std::move(values));
  stage_iterations.push_back(iterations);
}

std::map<std::string, SeriesDrift> drift_report(const DiagnosticsRecord& record) {
  std::map<std::string, SeriesDrift> out;
  const size_t n = record.times.size();
  if (n == 0) return out;

  // Least-squares slope against centred time to keep the normal equations
  // well conditioned.
  double t_mean = 0.0;
  for (double t : record.times) t_mean += t;
  t_mean /= static_cast<double>(n);
  double tt = 0.0;
  for (double t : record.times) tt += (t - t_mean) * (t - t_mean);

  for (size_t j = 0; j < record.names.size(); ++j) {
    SeriesDrift d;
    const double x0 = record.rows[0][j];
    double lo = x0, hi = x0, xt = 0.0, x_mean = 0.0;
    for (size_t i = 0; i < n; ++i) x_mean += record.rows[i][j];
    x_mean /= static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) {
      const double x = record.rows[i][j];
      d.max_deviation = std::max(d.max_deviation, std::abs(x - x0));
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      xt += (record.times[i] - t_mean) * (x - x_mean);
    }
    d.amplitude = hi - lo;
    d.slope = (tt > 0.0) ? xt / tt : 0.0;
    out[record.names[j]] = d;
  }
  return out;
}

}  // namespace lpflow
