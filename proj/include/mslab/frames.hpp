#pragma once

#include "mslab/scheme.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace mslab {

inline constexpr std::size_t kDefaultDimCap = 4000;

/// G[j, l] = ∫_K exp(-2πi ξ (λ_j - λ_l)) dξ, the quadratic form of ‖1_K f_φ‖².
struct GramMatrix {
    Eigen::MatrixXcd entries;
    std::vector<double> points;
    IntervalSet spectrum;
};

/// Throws DuplicateNode when two points coincide.
GramMatrix interpolation_gram(const std::vector<double>& points, const IntervalSet& k);

struct TracePoint {
    std::size_t dim = 0;
    double truncation = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

struct FrameEstimate {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::size_t dim = 0;
    double truncation = 0.0;
    std::vector<TracePoint> monotone_trace;
};

/// Extreme eigenvalues of a Hermitian matrix. Throws TooLarge above dim_cap.
FrameEstimate eig_extremes(const Eigen::MatrixXcd& h, std::size_t dim_cap = kDefaultDimCap);
FrameEstimate eig_extremes(const GramMatrix& g, std::size_t dim_cap = kDefaultDimCap);

/// Gram extremes for the points inside [-T, T], for each T; the result carries the whole trace.
FrameEstimate gram_trace(const std::vector<double>& points, const IntervalSet& k, const std::vector<double>& truncations,
                         std::size_t dim_cap = kDefaultDimCap);

struct SamplingOptions {
    /// Subspace functions are concentrated in [-ρT, ρT]; d ≈ 2ρT|K| of them.
    double concentration = 0.5;
    /// Relative change of both extremes that stops node doubling.
    double tolerance = 0.01;
    int max_refinements = 5;
    std::size_t dim_cap = kDefaultDimCap;
};

struct SamplingQuotientEstimate {
    /// Smallest Rayleigh quotient on the subspace: an upper proxy for the lower sampling constant.
    double lambda_min = 0.0;
    /// Largest Rayleigh quotient on the subspace: a lower proxy for the upper sampling constant.
    double lambda_max = 0.0;
    std::size_t n_nodes = 0;
    std::size_t subspace_dim = 0;
    std::size_t n_points = 0;
    double truncation = 0.0;
    int refinements = 0;
};

/**
 * @brief Extreme values of Σ_λ |f(λ)|² / ‖f̂‖² over a finite subspace of PW_K.
 *
 * f̂ ranges over sine modes sin(jπ(ξ - a)/ℓ) on each part [a, a + ℓ] of K.
 * f(λ) and the mass matrix come from composite Gauss-Legendre quadrature
 * with at least `n_nodes` nodes; nodes double until both extremes move by
 * less than the tolerance. Throws QuadratureError when the mass matrix is
 * not numerically positive definite.
 */
SamplingQuotientEstimate sampling_quotient(const std::vector<double>& points, const IntervalSet& k,
                                           std::size_t n_nodes, const SamplingOptions& opt = {});

struct StabilityTrace {
    std::vector<TracePoint> levels;
    double threshold = 0.0;
    bool stable = false;
};

struct DualityReport {
    double model_density = 0.0;
    double spectrum_measure = 0.0;
    double dual_density = 0.0;
    double window_measure = 0.0;
    /// Λ_W against K: sampling quotient and Gram.
    StabilityTrace sampling;
    StabilityTrace interpolation;
    /// _KΛ against W: sampling quotient and Gram.
    StabilityTrace dual_sampling;
    StabilityTrace dual_interpolation;
    std::string regime;
    std::string verdict;
    /// The dual pair predicted by the duality theorem agrees.
    bool consistent = false;
};

struct DualityOptions {
    double stability_fraction = 0.05;
    double critical_band = 0.05;
    SamplingOptions sampling;
    std::size_t n_nodes = 64;
};

/**
 * @brief Empirical check of the sampling/interpolation duality for Λ_W and _KΛ.
 *
 * A side is stable when λ_min ≥ stability_fraction · measure(spectrum) at
 * every truncation level (at least three are required). When
 * dens(L)|W| > θ(K), Λ_W should be sampling for PW_K and _KΛ interpolating
 * for PW_W; below, Λ_W should be interpolating and _KΛ sampling.
 */
DualityReport duality_experiment(const LatticeScheme& s, const Interval& w, const IntervalSet& k,
                                 const std::vector<double>& truncations, const DualityOptions& opt = {});

} // namespace mslab
