#include "mslab/density.hpp"

#include "mslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mslab {

VanHoveSeq VanHoveSeq::geometric(double t0, int n_max) {
    if (!(t0 > 0.0) || n_max < 0) {
        throw InvalidWindow("van Hove sequence needs t0 > 0 and n_max >= 0");
    }
    VanHoveSeq seq;
    for (int n = 0; n <= n_max; ++n) {
        seq.half_widths.push_back(std::ldexp(t0, n));
    }
    return seq;
}

std::vector<double> VanHoveSeq::shifts() const {
    std::vector<double> out;
    const int count = std::max(shift_count, 1);
    out.reserve(count);
    for (int j = 0; j < count; ++j) {
        out.push_back(shift_span * j / count);
    }
    return out;
}

double boundary_ratio(const Interval& a, const IntervalSet& k) {
    return van_hove_boundary(IntervalSet(a), k).measure() / a.length();
}

PointsProvider model_set_provider(const LatticeScheme& s, const IntervalSet& window) {
    return [s, window](const Interval& range) { return enumerate_strip(s, window, range).positions(); };
}

DensityReport banach_density(const PointsProvider& points, const VanHoveSeq& seq, double predicted) {
    if (seq.half_widths.empty()) {
        throw InvalidWindow("van Hove sequence is empty");
    }
    const std::vector<double> shifts = seq.shifts();
    const double s_lo = *std::min_element(shifts.begin(), shifts.end());
    const double s_hi = *std::max_element(shifts.begin(), shifts.end());
    DensityReport rep;
    rep.predicted = predicted;
    for (std::size_t n = 0; n < seq.half_widths.size(); ++n) {
        const double t = seq.half_widths[n];
        if (!(t > 0.0)) {
            throw InvalidWindow("van Hove half-widths must be positive");
        }
        // One enumeration covers every translate; counts come from binary search.
        const std::vector<double> pos = points(Interval::closed(s_lo - t, s_hi + t));
        DensityLevel lv;
        lv.n = static_cast<int>(n);
        lv.half_width = t;
        lv.inf_count = std::numeric_limits<std::size_t>::max();
        for (double sh : shifts) {
            const auto lo = std::lower_bound(pos.begin(), pos.end(), sh - t);
            const auto hi = std::lower_bound(pos.begin(), pos.end(), sh + t);
            const auto c = static_cast<std::size_t>(hi - lo);
            lv.inf_count = std::min(lv.inf_count, c);
            lv.sup_count = std::max(lv.sup_count, c);
        }
        lv.lower_est = static_cast<double>(lv.inf_count) / (2.0 * t);
        lv.upper_est = static_cast<double>(lv.sup_count) / (2.0 * t);
        rep.levels.push_back(lv);
    }
    rep.lower = rep.levels.back().lower_est;
    rep.upper = rep.levels.back().upper_est;
    if (predicted > 0.0) {
        rep.relative_error = std::max(std::abs(rep.lower - predicted), std::abs(rep.upper - predicted)) / predicted;
        rep.shift_spread = (rep.upper - rep.lower) / predicted;
    }
    return rep;
}

DensityReport model_set_density(const LatticeScheme& s, const IntervalSet& window, const VanHoveSeq& seq) {
    return banach_density(model_set_provider(s, window), seq, s.density() * window.measure());
}

CombPairing smooth_density(const LatticeScheme& s, const WeightFunction& h, int n, double shift, double radius) {
    const WeightFunction g = WeightFunction::fejer_averager(n).shifted(shift);
    if (radius <= 0.0) {
        radius = 40.0 * n;
    }
    return pair_comb(s, h, g, radius);
}

CombPairing fourier_bohr_coefficient(const LatticeScheme& s, const WeightFunction& h, double chi, int n,
                                     double radius) {
    const WeightFunction g = WeightFunction::fejer_averager(n);
    if (radius <= 0.0) {
        radius = 40.0 * n;
    }
    const double two_pi_chi = 2.0 * std::numbers::pi * chi;
    const Factor first{[g, two_pi_chi](double x) { return g.evaluate(x) * std::polar(1.0, -two_pi_chi * x); },
                       g.spatial_envelope()};
    return pair_factors(s, spatial_factor(h), first, radius);
}

std::complex<double> fourier_bohr_limit(const LatticeScheme& s, const WeightFunction& h, double chi,
                                        double eta_radius, double tol) {
    const DualScheme dual = annihilator(s);
    const ProjectionSet ps = project(dual, Axis::First, Interval::closed(chi - tol, chi + tol),
                                     Interval::closed(-eta_radius, eta_radius));
    std::complex<double> acc{0.0, 0.0};
    for (const auto& p : ps.points) {
        acc += h.inverse_fourier(p.h_coord);
    }
    return s.density() * acc;
}

} // namespace mslab
