#pragma once

#include <functional>
#include <optional>
#include <tuple>
#include <utility>

#include "lpflow/fixed_point.hpp"

namespace lpflow {

struct StepConfig {
  double h = 0.1;
  FixedPointConfig fp;
};

/// Isospectral midpoint step for V' = [V, M(V)] on a J-quadratic matrix
/// Lie algebra (su(N) or so(3)).  The implicit stage
///   Vt = V + (h/2)[Vt, M] + (h^2/4) M Vt M,   M = m_fn(Vt),
/// is solved by Picard iteration, then V+ = V + h [Vt, M].  The spectrum of
/// V is preserved exactly (up to the stage residual).  When `tag` is given
/// the result is re-projected onto the algebra to shed rounding noise.
CMatrix isospectral_midpoint_step(
    const CMatrix& v, const std::function<CMatrix(const CMatrix&)>& m_fn,
    const StepConfig& cfg, std::optional<AlgebraTag> tag = std::nullopt,
    StageReport* report = nullptr);

/// Coefficient maps for the two-field systems: (W, Theta) -> (M1, M2).
using PairMaps =
    std::function<std::pair<CMatrix, CMatrix>(const CMatrix&, const CMatrix&)>;

/// Midpoint step for the magnetic-extension system
///   W' = [W, M1] + [Theta, M2],   Theta' = [Theta, M1].
/// Preserves the spectrum of Theta and tr(W g(Theta)) exactly (up to the
/// stage residual).  Second order in h.
std::pair<CMatrix, CMatrix> magnetic_midpoint_step(
    const CMatrix& w, const CMatrix& theta, const PairMaps& m_fns,
    const StepConfig& cfg, std::optional<AlgebraTag> tag = std::nullopt,
    StageReport* report = nullptr);

/// Same flow advanced through the 2N x 2N lower-triangular block embedding
///   V = [[Theta, 0], [W, Theta]],   M = [[M1, 0], [M2, M1]],
/// using the plain isospectral midpoint step on V.  Algebraically equivalent
/// to magnetic_midpoint_step; kept as an independently assembled
/// cross-check of the stage equations.
std::pair<CMatrix, CMatrix> block_embedding_step(
    const CMatrix& w, const CMatrix& theta, const PairMaps& m_fns,
    const StepConfig& cfg, std::optional<AlgebraTag> tag = std::nullopt,
    StageReport* report = nullptr);

/// Coefficient maps for the three-field plasma system:
/// (W, Theta, Chi) -> (M1, M2, M3).
using TripleMaps = std::function<std::tuple<CMatrix, CMatrix, CMatrix>(
    const CMatrix&, const CMatrix&, const CMatrix&)>;

/// Midpoint step for the three-field system
///   W' = [W, M1] + [Theta, M2],
///   Theta' = [Theta, M3],
///   Chi' = [Chi, M3] + [Theta, M2],
/// with M3 = M1 - alpha Chi.  Preserves the spectra of Theta and W - Chi
/// and tr(Chi g(Theta)) exactly (up to the stage residual).  `alpha` must
/// match the coupling used inside m_fns.
std::tuple<CMatrix, CMatrix, CMatrix> hazeltine_midpoint_step(
    const CMatrix& w, const CMatrix& theta, const CMatrix& chi,
    const TripleMaps& m_fns, double alpha, const StepConfig& cfg,
    std::optional<AlgebraTag> tag = std::nullopt, StageReport* report = nullptr);

/// Classical fourth-order Runge-Kutta on an arbitrary field set; the
/// non-preserving baseline the structure-preserving schemes are measured
/// against.
FieldSet rk4_step(const FieldSet& fields,
                  const std::function<FieldSet(const FieldSet&)>& rhs, double h);

}  // namespace lpflow
