#include "lpflow/random_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lpflow {

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // 53-bit uniforms; u1 shifted into (0, 1] so the log is finite.
  const double u1 = 1.0 - (gen_() >> 11) * 0x1.0p-53;
  const double u2 = (gen_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

SphCoeffs random_coeffs(int l_cut, double gamma, double amplitude, std::uint64_t seed) {
  if (l_cut < 1) throw std::invalid_argument("random_coeffs: l_cut must be >= 1");
  GaussianStream g(seed);
  SphCoeffs c(l_cut);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int l = 1; l <= l_cut; ++l) {
    const double scale = amplitude * std::pow(static_cast<double>(l), -gamma);
    for (int m = 0; m <= l; ++m) {
      if (m == 0) {
        c.at(l, 0) = Complex(scale * g.next(), 0.0);
      } else {
        const double re = g.next(), im = g.next();
        c.at(l, m) = scale * inv_sqrt2 * Complex(re, im);
        c.at(l, -m) = (m % 2 == 0 ? 1.0 : -1.0) * std::conj(c.at(l, m));
      }
    }
  }
  return c;
}

CMatrix random_su(const QuantizationContext& ctx, int l_cut, double gamma, double amplitude,
                  std::uint64_t seed) {
  if (l_cut > ctx.l_max())
    throw std::invalid_argument("random_su: l_cut exceeds N-1");
  return project(random_coeffs(l_cut, gamma, amplitude, seed), ctx);
}

std::pair<Vec3, Vec3> random_body_state(double amplitude, std::uint64_t seed) {
  GaussianStream g(seed);
  Vec3 m, p;
  for (int i = 0; i < 3; ++i) m[i] = amplitude * g.next();
  for (int i = 0; i < 3; ++i) p[i] = amplitude * g.next();
  return {m, p};
}

}  // namespace lpflow
