// Integrator tests: Picard solver behavior, exact spectral conservation of
// the midpoint schemes, agreement between the two-field scheme and its
// block-embedding cross-check, decoupling limits, and the RK4 baseline.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lpflow/diagnostics.hpp"
#include "lpflow/integrators.hpp"
#include "lpflow/models.hpp"
#include "lpflow/quantization.hpp"
#include "lpflow/random_state.hpp"

using namespace lpflow;

namespace {

double frob(const CMatrix& a) { return a.norm(); }

double spectrum_distance(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("fixed point: constant map converges immediately") {
  const CMatrix target = CMatrix::Random(3, 3);
  FieldSet state{CMatrix::Zero(3, 3)};
  const StageReport rep = fixed_point_solve([&](const FieldSet&) { return FieldSet{target}; },
                                            state, FixedPointConfig{1e-14, 10});
  CHECK(rep.converged);
  CHECK(rep.iterations <= 3);
  CHECK(frob(state[0] - target) == 0.0);
}

TEST_CASE("fixed point: affine contraction reaches the fixed point") {
  // x <- x/2 + 1 has fixed point 2.
  FieldSet state{CMatrix::Zero(2, 2)};
  const CMatrix ones = CMatrix::Constant(2, 2, Complex(1, 0));
  const StageReport rep = fixed_point_solve(
      [&](const FieldSet& f) { return FieldSet{0.5 * f[0] + ones}; }, state,
      FixedPointConfig{1e-14, 100});
  CHECK(rep.converged);
  CHECK(frob(state[0] - 2.0 * ones) < 1e-12);
}

TEST_CASE("fixed point: divergence raises StageFailure with the report") {
  FieldSet state{CMatrix::Constant(2, 2, Complex(1, 0))};
  try {
    fixed_point_solve([&](const FieldSet& f) { return FieldSet{2.0 * f[0]}; }, state,
                      FixedPointConfig{1e-14, 7});
    FAIL("expected StageFailure");
  } catch (const StageFailure& e) {
    CHECK(e.report.iterations == 7);
    CHECK_FALSE(e.report.converged);
    // ||2x - x|| / ||x|| for the doubling map: saturates at exactly 1.
    CHECK(e.report.residual >= 1.0);
  }
}

TEST_CASE("isospectral midpoint preserves the spectrum over many steps") {
  const int n = 6;
  const QuantizationContext ctx(n);
  const EulerZeitlinModel model(ctx);
  const StepConfig cfg{0.1, {1e-14, 200}};
  CMatrix w = random_su(ctx, n - 1, 1.0, 0.8, 13);
  const std::vector<double> initial = spectrum(w);
  for (int k = 0; k < 200; ++k)
    w = isospectral_midpoint_step(
        w, [&](const CMatrix& v) { return model.coefficient_map(v); }, cfg, AlgebraTag::su);
  CHECK(spectrum_distance(spectrum(w), initial) < 1e-12);
  CHECK(in_algebra(w, AlgebraTag::su));
}

TEST_CASE("one midpoint step is consistent with the vector field") {
  // || (W_+ - W)/h - [W, M(W)] || = O(h): halving h halves the defect.
  const int n = 5;
  const QuantizationContext ctx(n);
  const EulerZeitlinModel model(ctx);
  const CMatrix w = random_su(ctx, n - 1, 1.0, 0.8, 3);
  const CMatrix rhs = commutator(w, model.coefficient_map(w));
  auto defect = [&](double h) {
    const StepConfig cfg{h, {1e-15, 200}};
    const CMatrix wp = isospectral_midpoint_step(
        w, [&](const CMatrix& v) { return model.coefficient_map(v); }, cfg);
    return frob((wp - w) / h - rhs);
  };
  const double e1 = defect(2e-3);
  const double e2 = defect(1e-3);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("two-field scheme conserves Theta spectrum and cross Casimir") {
  const int n = 5;
  const QuantizationContext ctx(n);
  const MhdModel model(ctx);
  const StepConfig cfg{0.1, {1e-14, 200}};
  CMatrix w = random_su(ctx, n - 1, 2.0, 0.5, 21);
  CMatrix theta = random_su(ctx, n - 1, 2.0, 0.5, 22);
  const std::vector<double> spec0 = spectrum(theta);
  const double cross0 = cross_helicity(w, theta, 1);
  for (int k = 0; k < 100; ++k) {
    auto [wn, tn] = magnetic_midpoint_step(w, theta, model.pair_maps(), cfg, AlgebraTag::su);
    w = wn;
    theta = tn;
  }
  CHECK(spectrum_distance(spectrum(theta), spec0) < 1e-12);
  CHECK(std::abs(cross_helicity(w, theta, 1) - cross0) < 1e-12);
}

TEST_CASE("two-field scheme equals the block-embedding cross-check per step") {
  const int n = 5;
  const QuantizationContext ctx(n);
  const MhdModel model(ctx);
  const StepConfig cfg{0.1, {1e-15, 300}};
  CMatrix w = random_su(ctx, n - 1, 2.0, 0.5, 31);
  CMatrix theta = random_su(ctx, n - 1, 2.0, 0.5, 32);
  for (int k = 0; k < 20; ++k) {
    auto [w_direct, t_direct] =
        magnetic_midpoint_step(w, theta, model.pair_maps(), cfg, AlgebraTag::su);
    auto [w_block, t_block] = block_embedding_step(w, theta, model.pair_maps(), cfg, AlgebraTag::su);
    CHECK(frob(w_direct - w_block) < 1e-12);
    CHECK(frob(t_direct - t_block) < 1e-12);
    w = w_direct;
    theta = t_direct;
  }
}

TEST_CASE("zero magnetic field reduces the two-field scheme to the one-field one") {
  const int n = 5;
  const QuantizationContext ctx(n);
  const MhdModel mhd(ctx);
  const EulerZeitlinModel euler(ctx);
  const StepConfig cfg{0.1, {1e-13, 120}};
  CMatrix w_pair = random_su(ctx, n - 1, 2.0, 0.5, 41);
  CMatrix w_single = w_pair;
  CMatrix theta = CMatrix::Zero(n, n);
  for (int k = 0; k < 50; ++k) {
    auto [wn, tn] = magnetic_midpoint_step(w_pair, theta, mhd.pair_maps(), cfg, AlgebraTag::su);
    w_pair = wn;
    theta = tn;
    w_single = isospectral_midpoint_step(
        w_single, [&](const CMatrix& v) { return euler.coefficient_map(v); }, cfg, AlgebraTag::su);
    CHECK(frob(theta) == 0.0);
    CHECK(frob(w_pair - w_single) == 0.0);  // identical arithmetic, bit for bit
  }
}

TEST_CASE("three-field scheme conserves its Casimirs") {
  const int n = 5;
  const QuantizationContext ctx(n);
  const double alpha = 2.0;
  const HazeltineModel model(ctx, alpha);
  const StepConfig cfg{0.1, {1e-14, 200}};
  CMatrix w = random_su(ctx, n - 1, 2.0, 0.5, 51);
  CMatrix theta = random_su(ctx, n - 1, 2.0, 0.5, 52);
  CMatrix chi = random_su(ctx, n - 1, 2.0, 0.5, 53);
  const std::vector<double> spec_theta0 = spectrum(theta);
  const std::vector<double> spec_wchi0 = spectrum(w - chi);
  const double cross0 = cross_helicity(chi, theta, 1);
  for (int k = 0; k < 100; ++k) {
    auto [wn, tn, cn] =
        hazeltine_midpoint_step(w, theta, chi, model.triple_maps(), alpha, cfg, AlgebraTag::su);
    w = wn;
    theta = tn;
    chi = cn;
  }
  CHECK(spectrum_distance(spectrum(theta), spec_theta0) < 1e-12);
  CHECK(spectrum_distance(spectrum(w - chi), spec_wchi0) < 1e-12);
  CHECK(std::abs(cross_helicity(chi, theta, 1) - cross0) < 1e-12);
}

TEST_CASE("alpha = 0 decouples the three-field scheme into the two-field one") {
  const int n = 5;
  const QuantizationContext ctx(n);
  const HazeltineModel haz(ctx, 0.0);
  const MhdModel mhd(ctx);
  const StepConfig cfg{0.1, {1e-15, 300}};
  CMatrix w3 = random_su(ctx, n - 1, 2.0, 0.5, 61);
  CMatrix t3 = random_su(ctx, n - 1, 2.0, 0.5, 62);
  CMatrix c3 = random_su(ctx, n - 1, 2.0, 0.5, 63);
  CMatrix w2 = w3, t2 = t3;
  for (int k = 0; k < 50; ++k) {
    auto [wn, tn, cn] =
        hazeltine_midpoint_step(w3, t3, c3, haz.triple_maps(), 0.0, cfg, AlgebraTag::su);
    w3 = wn;
    t3 = tn;
    c3 = cn;
    auto [wm, tm] = magnetic_midpoint_step(w2, t2, mhd.pair_maps(), cfg, AlgebraTag::su);
    w2 = wm;
    t2 = tm;
    CHECK(frob(w3 - w2) < 1e-13);
    CHECK(frob(t3 - t2) < 1e-13);
  }
}

TEST_CASE("so(3) steps stay in the algebra and conserve the Kirchhoff Casimirs") {
  const KirchhoffModel model(KirchhoffParams::preset(KirchhoffPreset::clebsch),
                             KirchhoffPreset::clebsch);
  const StepConfig cfg{0.1, {1e-14, 200}};
  auto [m0, p0] = random_body_state(1.0, 71);
  CMatrix w = hat(m0), theta = hat(p0);
  const double psq0 = p0.squaredNorm();
  const double mdotp0 = m0.dot(p0);
  for (int k = 0; k < 200; ++k) {
    auto [wn, tn] = magnetic_midpoint_step(w, theta, model.pair_maps(), cfg, AlgebraTag::so3);
    w = wn;
    theta = tn;
    CHECK(in_algebra(w, AlgebraTag::so3));
    CHECK(in_algebra(theta, AlgebraTag::so3));
  }
  const Vec3 p = unhat(theta), m = unhat(w);
  CHECK(std::abs(p.squaredNorm() - psq0) < 1e-12);
  CHECK(std::abs(m.dot(p) - mdotp0) < 1e-12);
}

TEST_CASE("rk4 on a linear field matches the degree-4 exponential truncation") {
  const int n = 4;
  CMatrix a = CMatrix::Random(n, n);
  CMatrix x0 = CMatrix::Random(n, 1);
  const double h = 0.05;
  const FieldSet out =
      rk4_step({x0}, [&](const FieldSet& f) { return FieldSet{a * f[0]}; }, h);
  CMatrix want = x0;
  CMatrix term = x0;
  for (int k = 1; k <= 4; ++k) {
    term = (h / k) * (a * term);
    want += term;
  }
  CHECK(frob(out[0] - want) < 1e-14 * std::max(1.0, frob(want)));
}

TEST_CASE("rk4 does not conserve the Theta spectrum (baseline contrast)") {
  const int n = 5;
  const QuantizationContext ctx(n);
  const MhdModel model(ctx);
  FieldSet f{random_su(ctx, n - 1, 2.0, 0.5, 81), random_su(ctx, n - 1, 2.0, 0.5, 82)};
  const std::vector<double> spec0 = spectrum(f[1]);
  for (int k = 0; k < 100; ++k) {
    f = rk4_step(f, [&](const FieldSet& g) { return model.rhs(g); }, 0.1);
    for (CMatrix& m : f) m = project_to_algebra(m, AlgebraTag::su);
  }
  // Not a tolerance check: the point is that the deviation is far above
  // rounding, unlike the structure-preserving scheme's 1e-13.
  CHECK(spectrum_distance(spectrum(f[1]), spec0) > 1e-8);
}

TEST_CASE("midpoint step with an exhausted budget raises StageFailure") {
  const int n = 5;
  const QuantizationContext ctx(n);
  const EulerZeitlinModel model(ctx);
  const StepConfig cfg{50.0, {1e-14, 5}};  // absurd step size: Picard diverges
  const CMatrix w = random_su(ctx, n - 1, 1.0, 5.0, 91);
  CHECK_THROWS_AS(isospectral_midpoint_step(
                      w, [&](const CMatrix& v) { return model.coefficient_map(v); }, cfg),
                  StageFailure);
}

TEST_CASE("stage report is populated on success") {
  const int n = 5;
  const QuantizationContext ctx(n);
  const MhdModel model(ctx);
  const StepConfig cfg{0.1, {1e-13, 100}};
  const CMatrix w = random_su(ctx, n - 1, 2.0, 0.5, 95);
  const CMatrix theta = random_su(ctx, n - 1, 2.0, 0.5, 96);
  StageReport rep;
  magnetic_midpoint_step(w, theta, model.pair_maps(), cfg, AlgebraTag::su, &rep);
  CHECK(rep.converged);
  CHECK(rep.iterations > 0);
  CHECK(rep.residual <= 1e-13);
}
