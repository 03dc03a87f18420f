#pragma once

#include "mslab/scheme.hpp"
#include "mslab/weights.hpp"

#include <complex>
#include <cstddef>
#include <functional>

namespace mslab {

/// Truncated lattice sum with a bound on the omitted terms.
struct CombPairing {
    std::complex<double> value{0.0, 0.0};
    double tail_bound = 0.0;
    /// Bound on the floating-point error of the accumulated sum.
    double rounding_bound = 0.0;
    std::size_t n_terms = 0;
    double truncation_radius = 0.0;
};

/// One factor of a product test function on G x H: its values and a decay certificate.
struct Factor {
    std::function<std::complex<double>(double)> value;
    Envelope envelope;
};

Factor spatial_factor(const WeightFunction& f);
/// t -> ∫ f(y) exp(+2πi t y) dy.
Factor inverse_fourier_factor(const WeightFunction& f);

/**
 * @brief Σ over lattice points (x, y) of second(y) * first(x).
 *
 * Compact factors are summed exactly over their supports. A power-law
 * factor is truncated at distance `radius` from its center; the omitted
 * part is bounded with the block argument along the projection set: beyond
 * R, distinct positions are at least δ apart, so one side contributes at
 * most Σ_l env(R + (l-1)δ) per stacked point. When both factors decay by a
 * power law the lattice is covered by square cells that hold at most one
 * point each and the product envelope is summed over the cells outside
 * the box.
 *
 * Throws NoTailBound when no certificate covers the omitted terms.
 */
CombPairing pair_factors(const LatticeScheme& s, const Factor& second, const Factor& first, double radius);

/// ω_h(g) = Σ h(y) g(x).
CombPairing pair_comb(const LatticeScheme& s, const WeightFunction& h, const WeightFunction& g, double radius);

struct PsfResidual {
    CombPairing lhs;
    /// dens(L) Σ over L0 of ǧ(χ) ȟ(η), tail already scaled by dens(L).
    CombPairing rhs;
    double residual = 0.0;
    /// lhs.tail + rhs.tail + rounding.
    double allowance = 0.0;
    bool within_contract = false;
};

/// Both sides of the Poisson summation formula ω_h(g) = dens(L) ω_ȟ(ǧ).
PsfResidual psf_residual(const LatticeScheme& s, const WeightFunction& h, const WeightFunction& g, double radius);

/// Σ_{l>=1} min(sup, C / (R + (l-1)δ)^p), bounded above in closed form.
double block_tail(const Envelope& env, double r, double delta);

} // namespace mslab
