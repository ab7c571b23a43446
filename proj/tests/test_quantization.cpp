// Quantized-sphere basis and Laplacian tests: explicit 2x2 values, Gram
// orthonormality, the -l(l+1) eigenvalue property, coefficient round trips,
// and agreement between the fast per-diagonal solver and the coefficient
// space reference solver.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "lpflow/quantization.hpp"
#include "lpflow/random_state.hpp"

using namespace lpflow;

namespace {

CMatrix basis_dense(const QuantizationContext& ctx, int l, int m) {
  return ctx.basis(l, m).dense(ctx.size());
}

double frob(const CMatrix& a) { return a.norm(); }

}  // namespace

TEST_CASE("explicit 2x2 basis matrices") {
  const QuantizationContext ctx(2);
  const double r = 1.0 / std::sqrt(2.0);

  const CMatrix t10 = basis_dense(ctx, 1, 0);
  CHECK(t10(0, 0).real() == doctest::Approx(r).epsilon(1e-15));
  CHECK(t10(1, 1).real() == doctest::Approx(-r).epsilon(1e-15));
  CHECK(std::abs(t10(0, 1)) == 0.0);

  const CMatrix t11 = basis_dense(ctx, 1, 1);
  CHECK(t11(0, 1).real() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(t11(1, 0)) == 0.0);

  const CMatrix t1m1 = basis_dense(ctx, 1, -1);
  CHECK(t1m1(1, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("basis values are real and the transpose symmetry holds") {
  const QuantizationContext ctx(6);
  for (int l = 1; l <= ctx.l_max(); ++l)
    for (int m = 0; m <= l; ++m) {
      const CMatrix tp = basis_dense(ctx, l, m);
      CHECK(tp.imag().norm() == 0.0);
      // T_{l,-m} = (-1)^m transpose(T_{l,m})
      const CMatrix tm = basis_dense(ctx, l, -m);
      const double sign = m % 2 == 0 ? 1.0 : -1.0;
      CHECK(frob(tm - sign * tp.transpose()) < 1e-14);
      // dagger(T_{l,m}) = (-1)^m T_{l,-m}
      CHECK(frob(tp.adjoint() - sign * tm) < 1e-14);
    }
}

TEST_CASE("Gram matrix is the identity") {
  for (int n : {3, 5, 8}) {
    const QuantizationContext ctx(n);
    double worst = 0.0;
    for (int l = 1; l <= ctx.l_max(); ++l)
      for (int m = -l; m <= l; ++m) {
        const CMatrix a = basis_dense(ctx, l, m);
        for (int lp = 1; lp <= ctx.l_max(); ++lp)
          for (int mp = -lp; mp <= lp; ++mp) {
            const CMatrix b = basis_dense(ctx, lp, mp);
            const Complex g = (a.adjoint() * b).trace();
            const double want = (l == lp && m == mp) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(g - Complex(want, 0)));
          }
      }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("generators: su(2) commutator and unit Casimir sum") {
  for (int n : {2, 4, 9}) {
    const QuantizationContext ctx(n);
    const double gamma = 2.0 / std::sqrt(static_cast<double>(n) * n - 1.0);
    const CMatrix x1 = ctx.x1(), x2 = ctx.x2(), x3 = ctx.x3();
    // [x1, x2] = i*gamma*x3 and cyclic.
    CHECK(frob(commutator(x1, x2) - Complex(0, 1) * gamma * x3) < 1e-14);
    CHECK(frob(commutator(x2, x3) - Complex(0, 1) * gamma * x1) < 1e-14);
    CHECK(frob(commutator(x3, x1) - Complex(0, 1) * gamma * x2) < 1e-14);
    // x1^2 + x2^2 + x3^2 = I exactly for this normalization.
    CHECK(frob(x1 * x1 + x2 * x2 + x3 * x3 - CMatrix::Identity(n, n)) < 1e-13);
  }
}

TEST_CASE("Laplacian eigenvalue property on every basis element") {
  for (int n : {3, 5, 8}) {
    const QuantizationContext ctx(n);
    double worst = 0.0;
    for (int l = 1; l <= ctx.l_max(); ++l)
      for (int m = -l; m <= l; ++m) {
        SphCoeffs c(l);
        c.at(l, m) = 1.0;
        // W = i T_lm is a complex multiple of a basis element; linearity of
        // Delta makes the eigen-check equivalent.
        const CMatrix w = project(c, ctx);
        const CMatrix residual = laplacian_apply(w, ctx) + static_cast<double>(l) * (l + 1) * w;
        worst = std::max(worst, frob(residual));
      }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("laplacian_apply preserves matrix diagonals") {
  const QuantizationContext ctx(7);
  CMatrix a = CMatrix::Zero(7, 7);
  a(1, 4) = Complex(0.3, -0.7);  // single entry on diagonal +3
  a(2, 5) = Complex(-1.1, 0.2);
  const CMatrix image = laplacian_apply(a, ctx);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      if (j - i != 3) CHECK(std::abs(image(i, j)) == 0.0);
}

TEST_CASE("project / to_coeffs round trip") {
  for (int n : {4, 9}) {
    const QuantizationContext ctx(n);
    const SphCoeffs c = random_coeffs(n - 1, 1.5, 1.0, 77);
    const CMatrix w = project(c, ctx);
    CHECK(in_algebra(w, AlgebraTag::su));
    const SphCoeffs back = to_coeffs(w, ctx);
    REQUIRE(back.l_max == n - 1);
    double worst = 0.0;
    for (size_t i = 0; i < c.data.size(); ++i)
      worst = std::max(worst, std::abs(c.data[i] - back.data[i]));
    CHECK(worst < 1e-13);
    // Orthonormality makes the map an isometry: |c|_2 = |W|_F.
    double csq = 0.0;
    for (const Complex& v : c.data) csq += std::norm(v);
    CHECK(std::sqrt(csq) == doctest::Approx(frob(w)).epsilon(1e-13));
  }
}

TEST_CASE("validation errors") {
  const QuantizationContext ctx(4);
  SphCoeffs too_wide(4);  // l_max = 4 > N-1 = 3
  CHECK_THROWS_AS(project(too_wide, ctx), std::invalid_argument);

  CMatrix not_skew = CMatrix::Zero(4, 4);
  not_skew(0, 1) = 1.0;  // missing the -1 partner
  CHECK_THROWS_AS(to_coeffs(not_skew, ctx), std::invalid_argument);
  CHECK_THROWS_AS(laplacian_solve(not_skew, ctx), std::invalid_argument);

  CMatrix wrong_size = CMatrix::Zero(3, 3);
  CHECK_THROWS_AS(laplacian_apply(wrong_size, ctx), std::invalid_argument);
  CHECK_THROWS_AS(laplacian_solve(wrong_size, ctx), std::invalid_argument);

  CHECK_THROWS_AS(QuantizationContext(1), std::invalid_argument);
}

TEST_CASE("fast solve equals reference solve") {
  for (int n : {5, 8, 16}) {
    const QuantizationContext ctx(n);
    const CMatrix w = random_su(ctx, n - 1, 1.0, 1.0, 31 + n);
    const CMatrix fast = laplacian_solve(w, ctx, LaplacianPath::fast);
    const CMatrix ref = laplacian_solve(w, ctx, LaplacianPath::reference);
    CHECK(frob(fast - ref) < 1e-10);
  }
}

TEST_CASE("solve then apply is the identity on su(N)") {
  for (int n : {5, 12}) {
    const QuantizationContext ctx(n);
    const CMatrix w = random_su(ctx, n - 1, 1.0, 1.0, 5 + n);
    const CMatrix p = laplacian_solve(w, ctx);
    CHECK(in_algebra(p, AlgebraTag::su));
    CHECK(frob(laplacian_apply(p, ctx) - w) < 1e-11 * std::max(1.0, frob(w)));
    // and the other way round
    const CMatrix img = laplacian_apply(w, ctx);
    CHECK(frob(laplacian_solve(img, ctx) - w) < 1e-11 * std::max(1.0, frob(w)));
  }
}

TEST_CASE("identity component is projected away (pseudo-inverse on u(N))") {
  const int n = 6;
  const QuantizationContext ctx(n);
  const CMatrix w = random_su(ctx, n - 1, 1.0, 1.0, 404);
  // Shift by an imaginary multiple of the identity: still skew-Hermitian,
  // no longer traceless.  The solve must ignore the shift entirely.
  const CMatrix shifted = w + Complex(0, 0.37) * CMatrix::Identity(n, n);
  for (auto path : {LaplacianPath::fast, LaplacianPath::reference}) {
    const CMatrix a = laplacian_solve(w, ctx, path);
    const CMatrix b = laplacian_solve(shifted, ctx, path);
    CHECK(frob(a - b) < 1e-12);
    CHECK(in_algebra(b, AlgebraTag::su));
  }
}
