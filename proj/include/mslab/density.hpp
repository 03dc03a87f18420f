#pragma once

#include "mslab/combs.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace mslab {

/**
 * @brief Nested intervals A_n = [-T_n, T_n) and a grid of translates.
 *
 * Sup and inf over all translates are replaced by extrema over
 * `shift_count` shifts spread evenly over [0, shift_span).
 */
struct VanHoveSeq {
    std::vector<double> half_widths;
    double shift_span = 1000.0;
    int shift_count = 64;

    /// T_n = 2^n t0 for n = 0..n_max.
    static VanHoveSeq geometric(double t0 = 25.0, int n_max = 10);
    std::vector<double> shifts() const;
};

/// measure(∂^K A) / measure(A).
double boundary_ratio(const Interval& a, const IntervalSet& k);

struct DensityLevel {
    int n = 0;
    double half_width = 0.0;
    std::size_t inf_count = 0;
    std::size_t sup_count = 0;
    double lower_est = 0.0;
    double upper_est = 0.0;
};

struct DensityReport {
    /// Grid extrema at the largest level; empirical proxies for D- and D+.
    double lower = 0.0;
    double upper = 0.0;
    double predicted = 0.0;
    /// max(|lower - predicted|, |upper - predicted|) / predicted.
    double relative_error = 0.0;
    /// (upper - lower) / predicted.
    double shift_spread = 0.0;
    std::vector<DensityLevel> levels;
};

/// Sorted positions of the point set inside a range.
using PointsProvider = std::function<std::vector<double>(const Interval&)>;

PointsProvider model_set_provider(const LatticeScheme& s, const IntervalSet& window);

DensityReport banach_density(const PointsProvider& points, const VanHoveSeq& seq, double predicted);

/// Λ_W against dens(L) θ(W).
DensityReport model_set_density(const LatticeScheme& s, const IntervalSet& window, const VanHoveSeq& seq);

/// ω_h(δ_{s0} * g_n) with the Fejér averager g_n; radius 0 picks 40 n.
CombPairing smooth_density(const LatticeScheme& s, const WeightFunction& h, int n, double shift, double radius = 0.0);

/// Σ h(y) g_n(x) exp(-2πi χ x); radius 0 picks 40 n.
CombPairing fourier_bohr_coefficient(const LatticeScheme& s, const WeightFunction& h, double chi, int n,
                                     double radius = 0.0);

/// Limit of fourier_bohr_coefficient: dens(L) Σ ȟ(η) over dual points (χ, η), within a tolerance on χ.
std::complex<double> fourier_bohr_limit(const LatticeScheme& s, const WeightFunction& h, double chi,
                                        double eta_radius = 1e4, double tol = 1e-9);

} // namespace mslab
