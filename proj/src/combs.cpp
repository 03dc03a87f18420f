#include "mslab/combs.hpp"

#include "mslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mslab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Neumaier-compensated sum of one real component.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        abs_ += std::abs(x);
    }
    double value() const { return sum_ + comp_; }
    double abs_total() const { return abs_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_ = 0.0;
};

struct Term {
    double key;
    std::int64_t n;
    std::int64_t m;
    std::complex<double> value;
};

CombPairing accumulate(std::vector<Term>& terms, double radius) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        if (a.key != b.key) {
            return a.key < b.key;
        }
        return a.n != b.n ? a.n < b.n : a.m < b.m;
    });
    CompensatedSum re;
    CompensatedSum im;
    for (const auto& t : terms) {
        re.add(t.value.real());
        im.add(t.value.imag());
    }
    CombPairing out;
    out.value = {re.value(), im.value()};
    out.rounding_bound = 16.0 * kEps * (re.abs_total() + im.abs_total()) + 1e-300;
    out.n_terms = terms.size();
    out.truncation_radius = radius;
    return out;
}

bool decays(const Envelope& e) { return e.kind != Envelope::Kind::None; }

Interval closed_support(const Envelope& e) { return Interval::closed(e.support.lo, e.support.hi); }

// Sum of cell sups of an envelope over cells [c + i s, c + (i+1) s) with -k <= i < k.
double inner_cells(const Envelope& e, double s, std::int64_t k) {
    double acc = 0.0;
    for (std::int64_t i = -k; i < k; ++i) {
        const double a = e.center + static_cast<double>(i) * s;
        acc += e.bound_on(a, a + s);
    }
    return acc;
}

} // namespace

double block_tail(const Envelope& env, double r, double delta) {
    if (env.kind == Envelope::Kind::Compact) {
        // Handled by exact enumeration; nothing decays past the support.
        return 0.0;
    }
    if (env.kind != Envelope::Kind::PowerLaw || env.power < 2) {
        return std::numeric_limits<double>::infinity();
    }
    const double c = env.coefficient;
    const double p = env.power;
    if (c == 0.0 || env.sup == 0.0) {
        return 0.0;
    }
    r = std::max(r, 0.0);
    const double first = r > 0.0 ? std::min(env.sup, c / std::pow(r, p)) : env.sup;
    if (!(delta > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(delta)) {
        return first;
    }
    // ∫_r^∞ min(sup, c/d^p) dd, split at the crossover d0.
    const double d0 = std::pow(c / env.sup, 1.0 / p);
    double integral;
    if (r >= d0) {
        integral = c / ((p - 1.0) * std::pow(r, p - 1.0));
    } else {
        integral = env.sup * (d0 - r) + c / ((p - 1.0) * std::pow(d0, p - 1.0));
    }
    return first + integral / delta;
}

Factor spatial_factor(const WeightFunction& f) {
    return {[f](double t) { return std::complex<double>(f.evaluate(t), 0.0); }, f.spatial_envelope()};
}

Factor inverse_fourier_factor(const WeightFunction& f) {
    return {[f](double t) { return f.inverse_fourier(t); }, f.fourier_envelope()};
}

CombPairing pair_factors(const LatticeScheme& s, const Factor& second, const Factor& first, double radius) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw InvalidWindow("truncation radius must be finite and nonnegative");
    }
    const Envelope& e2 = second.envelope;
    const Envelope& e1 = first.envelope;
    if (!decays(e1) || !decays(e2)) {
        throw NoTailBound("comb pairing needs a decay certificate for both factors");
    }
    const bool c1 = e1.kind == Envelope::Kind::Compact;
    const bool c2 = e2.kind == Envelope::Kind::Compact;

    std::vector<Term> terms;
    auto collect = [&](const ProjectionSet& ps, double center) {
        terms.reserve(ps.size());
        for (const auto& q : ps.points) {
            const std::complex<double> v = second.value(q.h_coord) * first.value(q.g_coord);
            terms.push_back({std::abs(coord(q, ps.projected) - center), q.n, q.m, v});
        }
    };

    if (c1 && c2) {
        const Interval s1 = closed_support(e1);
        collect(project(s, Axis::Second, IntervalSet(closed_support(e2)), s1), s1.center());
        return accumulate(terms, radius);
    }
    if (c2) {
        const IntervalSet w(closed_support(e2));
        collect(project(s, Axis::Second, w, Interval::closed(e1.center - radius, e1.center + radius)), e1.center);
        CombPairing out = accumulate(terms, radius);
        if (e2.sup > 0.0) {
            const Separation sep = separation_profile(s, Axis::Second, w);
            out.tail_bound = 2.0 * static_cast<double>(sep.multiplicity) * e2.sup * block_tail(e1, radius, sep.gap);
        }
        return out;
    }
    if (c1) {
        const IntervalSet k(closed_support(e1));
        collect(project(s, Axis::First, k, Interval::closed(e2.center - radius, e2.center + radius)), e2.center);
        CombPairing out = accumulate(terms, radius);
        if (e1.sup > 0.0) {
            const Separation sep = separation_profile(s, Axis::First, k);
            out.tail_bound = 2.0 * static_cast<double>(sep.multiplicity) * e1.sup * block_tail(e2, radius, sep.gap);
        }
        return out;
    }

    // Both factors decay by a power law: enumerate the box, bound the rest cell by cell.
    const IntervalSet box_h(Interval::closed(e2.center - radius, e2.center + radius));
    collect(project(s, Axis::Second, box_h, Interval::closed(e1.center - radius, e1.center + radius)), e1.center);
    CombPairing out = accumulate(terms, radius);

    const double cell = shortest_vector_length(s) / std::numbers::sqrt2 * (1.0 - 1e-9);
    const auto k = static_cast<std::int64_t>(std::floor(radius / cell));
    const double edge = static_cast<double>(k) * cell;
    const double a_in = inner_cells(e1, cell, k);
    const double b_in = inner_cells(e2, cell, k);
    const double a_out = 2.0 * block_tail(e1, edge, cell);
    const double b_out = 2.0 * block_tail(e2, edge, cell);
    out.tail_bound = a_out * (b_in + b_out) + a_in * b_out;
    return out;
}

CombPairing pair_comb(const LatticeScheme& s, const WeightFunction& h, const WeightFunction& g, double radius) {
    return pair_factors(s, spatial_factor(h), spatial_factor(g), radius);
}

PsfResidual psf_residual(const LatticeScheme& s, const WeightFunction& h, const WeightFunction& g, double radius) {
    if (!decays(h.fourier_envelope()) || !decays(g.fourier_envelope())) {
        throw NoTailBound("Poisson summation check needs weights with decaying transforms (no indicators)");
    }
    PsfResidual r;
    r.lhs = pair_comb(s, h, g, radius);
    const DualScheme dual = annihilator(s);
    r.rhs = pair_factors(dual, inverse_fourier_factor(h), inverse_fourier_factor(g), radius);
    const double dens = s.density();
    r.rhs.value *= dens;
    r.rhs.tail_bound *= dens;
    r.rhs.rounding_bound *= dens;
    r.residual = std::abs(r.lhs.value - r.rhs.value);
    r.allowance = r.lhs.tail_bound + r.rhs.tail_bound + r.lhs.rounding_bound + r.rhs.rounding_bound + 1e-12;
    r.within_contract = r.residual <= r.allowance;
    return r;
}

} // namespace mslab
