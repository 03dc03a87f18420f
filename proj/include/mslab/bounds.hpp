#pragma once

#include "mslab/combs.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mslab {

/**
 * @brief A stability constant together with the terms it was built from.
 *
 * Upper kinds: value = main + correction + tail. Lower kinds:
 * value = main - correction - tail. A lower certificate with
 * positive == false makes no claim.
 */
struct BoundCertificate {
    enum class Kind { SamplingUpper, SamplingLower, InterpUpper, InterpLower };

    Kind kind = Kind::SamplingUpper;
    double value = 0.0;
    bool positive = false;
    std::map<std::string, double> ingredients;
    std::vector<std::string> warnings;
};

std::string to_string(BoundCertificate::Kind kind);

/// Safety shrink applied to measured gaps.
inline constexpr double kGapShrink = 1e-6;

/**
 * @brief Upper sampling bound dens(L) Σ_{χ ∈ K-K} |ȟ(η)| over the dual lattice.
 *
 * h is the outer trapezoid on the hull of W; the truncated sum is
 * increased by its tail bound.
 */
BoundCertificate sampling_upper(const LatticeScheme& s, const IntervalSet& w, const IntervalSet& k, double u,
                                double radius);

/**
 * @brief Lower sampling bound dens(L) (2(w-u) - Σ_{χ ∈ K-K, η ∉ B} |ȟ_W(η)| - tail).
 *
 * B = [-b, b) with b half the smallest gap of the dual projection of K - K,
 * so every translate of B holds at most one of its points.
 */
BoundCertificate sampling_lower(const LatticeScheme& s, const IntervalSet& k, const IntervalSet& w, double u,
                                double radius);

/**
 * @brief Lower interpolation bound ĝ_K(0) - Σ_{x ∈ Λ_{W-W} ∖ B} |ĝ_K(x)| - tail.
 *
 * g_K is the inner trapezoid on the hull of K with smoothing v. Equals
 * sampling_lower on annihilator(s.swapped()) with K and W exchanged,
 * divided by dens(L0).
 */
BoundCertificate interp_lower(const LatticeScheme& s, const IntervalSet& w, const IntervalSet& k, double v,
                              double radius);

/**
 * @brief Upper interpolation bound ‖v‖² / ε² with a triangle v.
 *
 * The triangle half-width a is below half the smallest gap (times
 * `support_fraction`), so each translate supp(v) + λ meets one point, and
 * ε = min over K of v̂ = sinc²(π a ξ). Throws NotUniformlyDiscrete for a
 * zero gap.
 */
BoundCertificate interp_upper(const std::vector<double>& points, const IntervalSet& k, double support_fraction = 0.8);
BoundCertificate interp_upper(const LatticeScheme& s, const IntervalSet& w, const IntervalSet& k,
                              double support_fraction = 0.8);

/// dens (2(w+u) + 1/(8ub²)).
double sampling_upper_envelope(double dens, double w, double u, double b);
/// dens (2(w-u) - 1/(8ub²)).
double sampling_lower_envelope(double dens, double w, double u, double b);

struct EnvelopeOptimum {
    double u = 0.0;
    double value = 0.0;
};

/// Numerical minimum over u > 0 of the upper envelope.
EnvelopeOptimum minimize_sampling_upper_envelope(double dens, double w, double b);
/// Numerical maximum over 0 < u < w of the lower envelope.
EnvelopeOptimum maximize_sampling_lower_envelope(double dens, double w, double b);

struct SearchResult {
    double half_width = 0.0;
    BoundCertificate certificate;
    bool found = false;
    int steps = 0;
};

/// Grows a centered half-width geometrically until the certificate is positive, up to cap * initial.
SearchResult grow_until_positive(const std::function<BoundCertificate(double)>& make, double initial,
                                 double factor = 2.0, double cap = 32768.0);

} // namespace mslab
