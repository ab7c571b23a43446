#pragma once

#include "lpflow/quantization.hpp"
#include "lpflow/sph_coeffs.hpp"

namespace lpflow {

/// Commutator rescaling that matches the sphere Poisson bracket for the
/// orthonormal basis used here: (1/hbar_N) [p(f), p(g)] -> p({f,g}).
/// Exact on the l = 1 subalgebra, O(hbar) accurate above it.
double quantization_hbar(int n);

/// Poisson bracket on the sphere,
///   {f,g} = (d_phi f d_theta g - d_theta f d_phi g) / sin(theta),
/// the orientation under which the vorticity equations below describe
/// ordinary advection.  Computed pseudo-spectrally on a Gauss-Legendre x
/// uniform-longitude grid sized so the quadrature is exact for band-limited
/// inputs; the result is truncated at l_out.
SphCoeffs sphere_poisson_bracket(const SphCoeffs& f, const SphCoeffs& g, int l_out);

/// Frobenius distance ||p({f,g}) - (1/hbar_N)[p(f), p(g)]||_F.
/// Decays as N grows for fixed band-limited f, g (empirically ~1/N^2 for
/// low degrees); identically zero (up to rounding) when both fields live
/// on l = 1.
double bracket_consistency_error(const SphCoeffs& f, const SphCoeffs& g,
                                 const QuantizationContext& ctx);

}  // namespace lpflow
