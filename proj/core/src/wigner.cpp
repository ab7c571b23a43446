#include "lpflow/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace lpflow {
namespace {

// Factorial table in long double.  1755! is the largest factorial that fits
// in an 80-bit long double; the cap below stays well inside that while
// covering every basis size this library targets (N up to ~500).
constexpr int kMaxFactorial = 1200;

const long double* factorial_table() {
  static const std::array<long double, kMaxFactorial + 1> table = [] {
    std::array<long double, kMaxFactorial + 1> t{};
    t[0] = 1.0L;
    for (int n = 1; n <= kMaxFactorial; ++n) t[n] = t[n - 1] * static_cast<long double>(n);
    return t;
  }();
  return table.data();
}

// n must already be validated non-negative and within range.
inline long double fact(int n) { return factorial_table()[n]; }

}  // namespace

double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3,
                HalfInt m1, HalfInt m2, HalfInt m3) {
  const int tj1 = j1.twice(), tj2 = j2.twice(), tj3 = j3.twice();
  const int tm1 = m1.twice(), tm2 = m2.twice(), tm3 = m3.twice();

  if (tj1 < 0 || tj2 < 0 || tj3 < 0)
    throw std::domain_error("wigner3j: negative angular momentum");
  if ((tj1 - tm1) % 2 != 0 || (tj2 - tm2) % 2 != 0 || (tj3 - tm3) % 2 != 0)
    throw std::domain_error("wigner3j: j - m must be an integer");

  // Selection rules.
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  if (tj3 > tj1 + tj2 || tj3 < std::abs(tj1 - tj2)) return 0.0;

  // With m1+m2+m3 = 0 and all j-m integral, j1+j2+j3 is an integer.
  const int jsum = (tj1 + tj2 + tj3) / 2;
  if (jsum + 1 > kMaxFactorial)
    throw std::domain_error("wigner3j: arguments exceed supported factorial range");

  // Integer factorial arguments of the Racah formula.
  const int a1 = (tj1 + tj2 - tj3) / 2;
  const int a2 = (tj1 - tj2 + tj3) / 2;
  const int a3 = (-tj1 + tj2 + tj3) / 2;
  const int b1 = (tj1 + tm1) / 2, b2 = (tj1 - tm1) / 2;
  const int b3 = (tj2 + tm2) / 2, b4 = (tj2 - tm2) / 2;
  const int b5 = (tj3 + tm3) / 2, b6 = (tj3 - tm3) / 2;

  const long double pref =
      sqrtl(fact(a1) * fact(a2) * fact(a3) / fact(jsum + 1) *
            fact(b1) * fact(b2) * fact(b3) * fact(b4) * fact(b5) * fact(b6));

  // Summation limits: every factorial argument below must stay >= 0.
  const int c1 = (tj2 - tj3 - tm1) / 2;  // k >= c1
  const int c2 = (tj1 - tj3 + tm2) / 2;  // k >= c2
  const int kmin = std::max({0, c1, c2});
  const int kmax = std::min({a1, b2, b3});

  long double sum = 0.0L, comp = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double denom = fact(k) * fact(a1 - k) * fact(b2 - k) *
                              fact(b3 - k) * fact(k - c1) * fact(k - c2);
    long double term = pref / denom;
    if (k % 2 != 0) term = -term;
    // Kahan compensated accumulation.
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  const int phase_exp = (tj1 - tj2 - tm3) / 2;
  const long double phase = (phase_exp % 2 == 0) ? 1.0L : -1.0L;
  return static_cast<double>(phase * sum);
}

}  // namespace lpflow
