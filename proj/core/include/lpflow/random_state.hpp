#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "lpflow/quantization.hpp"
#include "lpflow/sph_coeffs.hpp"

namespace lpflow {

/// Deterministic standard-normal stream: mt19937_64 bits mapped to (0, 1]
/// uniforms and passed through Box-Muller.  Unlike
/// std::normal_distribution, the exact output sequence is pinned across
/// platforms and standard library versions.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}
  double next();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Random zero-mean real field with an l^{-gamma} spectral profile:
/// draws independent Gaussians for m >= 0 (l ascending, then m ascending,
/// real part before imaginary), scales mode (l, m) by amplitude * l^{-gamma},
/// and fills m < 0 from the real-field symmetry.
SphCoeffs random_coeffs(int l_cut, double gamma, double amplitude, std::uint64_t seed);

/// random_coeffs followed by projection into su(N).
CMatrix random_su(const QuantizationContext& ctx, int l_cut, double gamma, double amplitude,
                  std::uint64_t seed);

/// Independent Gaussian (m, p) pair for the rigid-body system, scaled by
/// `amplitude`.
std::pair<Vec3, Vec3> random_body_state(double amplitude, std::uint64_t seed);

}  // namespace lpflow
