#include "mslab/bounds.hpp"

#include "mslab/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mslab {

using std::numbers::pi;

std::string to_string(BoundCertificate::Kind kind) {
    switch (kind) {
    case BoundCertificate::Kind::SamplingUpper:
        return "sampling_upper";
    case BoundCertificate::Kind::SamplingLower:
        return "sampling_lower";
    case BoundCertificate::Kind::InterpUpper:
        return "interp_upper";
    case BoundCertificate::Kind::InterpLower:
        return "interp_lower";
    }
    return "unknown";
}

namespace {

Factor abs_transform(const WeightFunction& f, double exclude_below) {
    return {[f, exclude_below](double t) {
                return std::abs(t) < exclude_below ? std::complex<double>(0.0, 0.0)
                                                   : std::complex<double>(std::abs(f.inverse_fourier(t)), 0.0);
            },
            f.fourier_envelope()};
}

Factor membership(const IntervalSet& set) {
    Envelope e;
    e.kind = Envelope::Kind::Compact;
    e.support = set.hull();
    e.sup = 1.0;
    return {[set](double t) { return std::complex<double>(set.contains(t) ? 1.0 : 0.0, 0.0); }, e};
}

void require_nonempty(const IntervalSet& set, const char* what) {
    if (set.empty()) {
        throw InvalidWindow(std::string(what) + " must be nonempty");
    }
}

// Half-width of B from a separation profile; 0 when the origin is stacked.
double neighborhood(const Separation& sep, std::vector<std::string>& warnings, const char* what) {
    if (sep.multiplicity > 1) {
        warnings.push_back(std::string(what) + " is not injective: several points project to 0");
        return 0.0;
    }
    if (!std::isfinite(sep.gap)) {
        return std::numeric_limits<double>::infinity();
    }
    return 0.5 * sep.gap * (1.0 - kGapShrink);
}

// Lower certificate shared by sampling_lower and interp_lower:
// main - Σ |f̂| over points of `lat` whose filter coordinate is in `diff`, away from B.
BoundCertificate lower_certificate(BoundCertificate::Kind kind, const LatticeScheme& lat, Axis filter,
                                   const IntervalSet& diff, const WeightFunction& f, double scale, double radius,
                                   const char* what) {
    BoundCertificate c;
    c.kind = kind;
    const Separation sep = separation_profile(lat, filter, diff);
    const double b = neighborhood(sep, c.warnings, what);
    const double main = f.integral();
    c.ingredients["main"] = scale * main;
    c.ingredients["b"] = b;
    c.ingredients["gap"] = sep.gap;
    if (!(b > 0.0)) {
        c.value = -std::numeric_limits<double>::infinity();
        c.positive = false;
        c.ingredients["correction"] = std::numeric_limits<double>::infinity();
        c.ingredients["tail"] = 0.0;
        return c;
    }
    const Factor weight = abs_transform(f, b);
    const Factor set = membership(diff);
    const CombPairing p = filter == Axis::First ? pair_factors(lat, weight, set, radius)
                                                : pair_factors(lat, set, weight, radius);
    const double correction = p.value.real();
    const double tail = p.tail_bound + p.rounding_bound;
    c.value = scale * (main - correction - tail);
    c.positive = c.value > 0.0 && std::isfinite(c.value);
    c.ingredients["correction"] = scale * correction;
    c.ingredients["tail"] = scale * tail;
    c.ingredients["terms"] = static_cast<double>(p.n_terms);
    c.ingredients["radius"] = radius;
    return c;
}

double zstar() {
    // Root of z cot z = 3/4 in (0, π/2): minimizer of z³ / sin⁴ z.
    static const double z = [] {
        auto f = [](double t) { return t * std::cos(t) - 0.75 * std::sin(t); };
        boost::uintmax_t iters = 200;
        const auto r = boost::math::tools::toms748_solve(f, 0.1, 1.5, boost::math::tools::eps_tolerance<double>(52),
                                                         iters);
        return 0.5 * (r.first + r.second);
    }();
    return z;
}

BoundCertificate interp_upper_from_gap(double gap, const IntervalSet& k, double support_fraction) {
    if (!(gap > 0.0)) {
        throw NotUniformlyDiscrete("interpolation upper bound needs a positive minimal gap");
    }
    if (!(support_fraction > 0.0 && support_fraction <= 1.0)) {
        throw InvalidSmoothing("support fraction must lie in (0, 1]");
    }
    const double xi = k.max_abs();
    double a = support_fraction * 0.5 * gap;
    if (xi > 0.0) {
        a = std::min(a, zstar() / (pi * xi));
    }
    if (!std::isfinite(a)) {
        a = 1.0 / std::max(xi, 1.0);
    }
    BoundCertificate c;
    c.kind = BoundCertificate::Kind::InterpUpper;
    double eps = 0.0;
    int retries = 0;
    for (; retries < 60; ++retries) {
        // sinc² is decreasing on [0, π], so its minimum over K sits at max |ξ|.
        if (a * xi < 1.0) {
            const double s = sinc(pi * a * xi);
            eps = s * s;
            if (eps > 0.0) {
                break;
            }
        }
        a *= 0.5;
    }
    if (!(eps > 0.0)) {
        throw InvalidSmoothing("no triangle with positive transform on K was found");
    }
    const double norm_sq = 2.0 / (3.0 * a);
    c.value = norm_sq / (eps * eps);
    c.positive = std::isfinite(c.value);
    c.ingredients["gap"] = gap;
    c.ingredients["half_width"] = a;
    c.ingredients["epsilon"] = eps;
    c.ingredients["norm_sq"] = norm_sq;
    c.ingredients["xi_max"] = xi;
    c.ingredients["retries"] = retries;
    return c;
}

} // namespace

BoundCertificate sampling_upper(const LatticeScheme& s, const IntervalSet& w, const IntervalSet& k, double u,
                                double radius) {
    require_nonempty(w, "window W");
    require_nonempty(k, "spectrum K");
    const Interval hull = w.hull();
    const WeightFunction h = WeightFunction::outer_trapezoid(hull, u);
    const IntervalSet kk = difference_set(k).closure();
    const DualScheme dual = annihilator(s);
    const double dens = s.density();

    BoundCertificate c;
    c.kind = BoundCertificate::Kind::SamplingUpper;
    const Separation sep = separation_profile(dual, Axis::First, kk);
    const double b = neighborhood(sep, c.warnings, "dual projection of K-K");
    const CombPairing p = pair_factors(dual, abs_transform(h, 0.0), membership(kk), radius);
    const double half = 0.5 * hull.length();
    const double tail = p.tail_bound + p.rounding_bound;
    c.value = dens * (p.value.real() + tail);
    c.positive = c.value > 0.0 && std::isfinite(c.value);
    c.ingredients["dens"] = dens;
    c.ingredients["u"] = u;
    c.ingredients["w"] = half;
    c.ingredients["b"] = b;
    c.ingredients["main"] = dens * h.integral();
    c.ingredients["correction"] = dens * (p.value.real() - h.integral());
    c.ingredients["tail"] = dens * tail;
    c.ingredients["terms"] = static_cast<double>(p.n_terms);
    c.ingredients["radius"] = radius;
    if (b > 0.0 && std::isfinite(b)) {
        c.ingredients["envelope"] = sampling_upper_envelope(dens, half, u, b);
    }
    return c;
}

BoundCertificate sampling_lower(const LatticeScheme& s, const IntervalSet& k, const IntervalSet& w, double u,
                                double radius) {
    require_nonempty(w, "window W");
    require_nonempty(k, "spectrum K");
    const Interval hull = w.hull();
    const WeightFunction hw = WeightFunction::inner_trapezoid(hull, u);
    const IntervalSet kk = difference_set(k).closure();
    const double dens = s.density();
    BoundCertificate c = lower_certificate(BoundCertificate::Kind::SamplingLower, annihilator(s), Axis::First, kk, hw,
                                           dens, radius, "dual projection of K-K");
    const double half = 0.5 * hull.length();
    c.ingredients["dens"] = dens;
    c.ingredients["u"] = u;
    c.ingredients["w"] = half;
    const double b = c.ingredients["b"];
    if (b > 0.0 && std::isfinite(b)) {
        c.ingredients["envelope"] = sampling_lower_envelope(dens, half, u, b);
    }
    return c;
}

BoundCertificate interp_lower(const LatticeScheme& s, const IntervalSet& w, const IntervalSet& k, double v,
                              double radius) {
    require_nonempty(w, "window W");
    require_nonempty(k, "spectrum K");
    const Interval hull = k.hull();
    const WeightFunction gk = WeightFunction::inner_trapezoid(hull, v);
    const IntervalSet ww = difference_set(w).closure();
    BoundCertificate c =
        lower_certificate(BoundCertificate::Kind::InterpLower, s, Axis::Second, ww, gk, 1.0, radius, "Λ_{W-W}");
    c.ingredients["v"] = v;
    c.ingredients["k"] = 0.5 * hull.length();
    return c;
}

BoundCertificate interp_upper(const std::vector<double>& points, const IntervalSet& k, double support_fraction) {
    std::vector<double> p = points;
    std::sort(p.begin(), p.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < p.size(); ++i) {
        gap = std::min(gap, p[i] - p[i - 1]);
    }
    return interp_upper_from_gap(gap, k, support_fraction);
}

BoundCertificate interp_upper(const LatticeScheme& s, const IntervalSet& w, const IntervalSet& k,
                              double support_fraction) {
    return interp_upper_from_gap(separation_lower_bound(s, Axis::Second, w), k, support_fraction);
}

double sampling_upper_envelope(double dens, double w, double u, double b) {
    return dens * (2.0 * (w + u) + 1.0 / (8.0 * u * b * b));
}

double sampling_lower_envelope(double dens, double w, double u, double b) {
    return dens * (2.0 * (w - u) - 1.0 / (8.0 * u * b * b));
}

EnvelopeOptimum minimize_sampling_upper_envelope(double dens, double w, double b) {
    // Search in log u over a wide bracket around the scale 1/b.
    auto f = [&](double t) { return sampling_upper_envelope(dens, w, std::exp(t), b); };
    const double c = -std::log(b);
    const auto r = boost::math::tools::brent_find_minima(f, c - 20.0, c + 20.0, 50);
    return {std::exp(r.first), r.second};
}

EnvelopeOptimum maximize_sampling_lower_envelope(double dens, double w, double b) {
    auto f = [&](double t) { return -sampling_lower_envelope(dens, w, w * std::exp(t), b); };
    const auto r = boost::math::tools::brent_find_minima(f, -40.0, -1e-12, 50);
    return {w * std::exp(r.first), -r.second};
}

SearchResult grow_until_positive(const std::function<BoundCertificate(double)>& make, double initial, double factor,
                                 double cap) {
    if (!(initial > 0.0) || !(factor > 1.0)) {
        throw InvalidWindow("search needs a positive start and a growth factor > 1");
    }
    SearchResult r;
    for (double hw = initial; hw <= cap * initial * (1.0 + 1e-12); hw *= factor) {
        ++r.steps;
        r.half_width = hw;
        r.certificate = make(hw);
        if (r.certificate.positive) {
            r.found = true;
            return r;
        }
    }
    return r;
}

} // namespace mslab
