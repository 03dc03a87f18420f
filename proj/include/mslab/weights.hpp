#pragma once

#include "mslab/intervals.hpp"

#include <complex>

namespace mslab {

/**
 * @brief Decay certificate for a function on the line.
 *
 * Compact: zero outside `support`. PowerLaw: |f(t)| <= min(sup, coefficient / |t - center|^power).
 */
struct Envelope {
    enum class Kind { Compact, PowerLaw, None };

    Kind kind = Kind::None;
    Interval support;
    double center = 0.0;
    double coefficient = 0.0;
    int power = 0;
    double sup = 0.0;

    /// Upper bound for |f| at t.
    double bound_at(double t) const;
    /// Upper bound for sup |f| over [a, b].
    double bound_on(double a, double b) const;
};

/**
 * @brief Weight and test functions with closed-form Fourier transforms.
 *
 * Conventions: fourier(k) = ∫ f(y) exp(-2πi k y) dy and
 * inverse_fourier(k) = ∫ f(y) exp(+2πi k y) dy.
 *
 * The trapezoids are box convolutions 1_[c-L, c+L] * (1/2u) 1_[-u, u]:
 * the outer one has L = w + u (so it is 1 on W and vanishes outside
 * W + [-2u, 2u]); the inner one has L = w - u (1 on [c-(w-2u), c+(w-2u)],
 * 0 outside W).
 */
class WeightFunction {
public:
    enum class Kind { Indicator, OuterTrapezoid, InnerTrapezoid, FejerAverager, Triangle };

    static WeightFunction indicator(const IntervalSet& w);
    /// Throws InvalidSmoothing unless u > 0.
    static WeightFunction outer_trapezoid(const Interval& w, double u);
    static WeightFunction outer_trapezoid(double half_width, double u);
    /// Throws InvalidSmoothing unless 0 < u < half-width of W.
    static WeightFunction inner_trapezoid(const Interval& w, double u);
    static WeightFunction inner_trapezoid(double half_width, double u);
    /// g_n(x) = (3 / 2n) sinc^4(πx/n), the normalized Fejér-type averager.
    static WeightFunction fejer_averager(int n);
    /// Triangle of the given half-width and unit integral.
    static WeightFunction triangle(double half_width);

    WeightFunction scaled(double factor) const;
    /// x -> f(x - t).
    WeightFunction shifted(double t) const;

    Kind kind() const { return kind_; }
    double amplitude() const { return amplitude_; }
    double shift() const { return shift_; }
    const IntervalSet& window() const { return window_; }
    double smoothing() const { return smoothing_; }
    int scale_index() const { return scale_index_; }
    /// Half-width of the centered window for trapezoids, of the support for triangles.
    double half_width() const { return half_width_; }

    double evaluate(double y) const;
    std::complex<double> fourier(double k) const;
    std::complex<double> inverse_fourier(double k) const { return std::conj(fourier(k)); }
    double integral() const { return fourier(0.0).real(); }

    Envelope spatial_envelope() const;
    Envelope fourier_envelope() const;

private:
    WeightFunction() = default;

    Kind kind_ = Kind::Indicator;
    IntervalSet window_;
    double center_ = 0.0;
    double half_width_ = 0.0;
    double box_half_ = 0.0;
    double smoothing_ = 0.0;
    int scale_index_ = 0;
    double amplitude_ = 1.0;
    double shift_ = 0.0;
};

/// Dirac-sequence element v_n (triangle, half-width 1/n, height n) and its averager g_n.
struct FejerPair {
    WeightFunction v;
    WeightFunction g;
};

FejerPair fejer_pair(int n);

/// Cubic B-spline (box^{*4}) on [-2, 2]; the Fourier side of g_n is (3/2) bspline4(n ξ).
double bspline4(double t);

} // namespace mslab
