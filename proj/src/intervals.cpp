#include "mslab/intervals.hpp"

#include "mslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace mslab {

Interval::Interval(double lo_, double hi_, bool lo_closed_, bool hi_closed_)
    : lo(lo_), hi(hi_), lo_closed(lo_closed_), hi_closed(hi_closed_) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidInterval("interval endpoints must be finite");
    }
    if (lo > hi) {
        std::ostringstream msg;
        msg << "interval has lo > hi: " << lo << " > " << hi;
        throw InvalidInterval(msg.str());
    }
}

bool Interval::contains(double x) const {
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

namespace {

// Builds an interval without validation; callers guarantee lo <= hi.
Interval make_raw(double lo, double hi, bool lc, bool hc) {
    Interval iv;
    iv.lo = lo;
    iv.hi = hi;
    iv.lo_closed = lc;
    iv.hi_closed = hc;
    return iv;
}

bool starts_before(const Interval& a, const Interval& b) {
    if (a.lo != b.lo) {
        return a.lo < b.lo;
    }
    return a.lo_closed && !b.lo_closed;
}

// Intersection of two single intervals; nullopt-like result signalled by empty().
Interval intersect_parts(const Interval& a, const Interval& b) {
    double lo;
    bool lc;
    if (a.lo > b.lo) {
        lo = a.lo;
        lc = a.lo_closed;
    } else if (b.lo > a.lo) {
        lo = b.lo;
        lc = b.lo_closed;
    } else {
        lo = a.lo;
        lc = a.lo_closed && b.lo_closed;
    }
    double hi;
    bool hc;
    if (a.hi < b.hi) {
        hi = a.hi;
        hc = a.hi_closed;
    } else if (b.hi < a.hi) {
        hi = b.hi;
        hc = b.hi_closed;
    } else {
        hi = a.hi;
        hc = a.hi_closed && b.hi_closed;
    }
    if (lo > hi) {
        return make_raw(0.0, 0.0, false, false);
    }
    return make_raw(lo, hi, lc, hc);
}

} // namespace

IntervalSet::IntervalSet(const Interval& part) {
    if (!part.empty()) {
        parts_.push_back(part);
    }
}

IntervalSet IntervalSet::normalize(std::vector<Interval> parts, double tol) {
    std::erase_if(parts, [](const Interval& iv) { return iv.empty(); });
    std::sort(parts.begin(), parts.end(), starts_before);

    IntervalSet out;
    if (parts.empty()) {
        return out;
    }
    Interval cur = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const Interval& nx = parts[i];
        if (std::abs(nx.lo - cur.lo) <= tol && nx.lo_closed) {
            cur.lo_closed = true;
        }
        const bool overlaps = nx.lo < cur.hi - tol;
        const bool touches = std::abs(nx.lo - cur.hi) <= tol && (cur.hi_closed || nx.lo_closed);
        if (overlaps || touches) {
            if (nx.hi > cur.hi + tol) {
                cur.hi = nx.hi;
                cur.hi_closed = nx.hi_closed;
            } else if (std::abs(nx.hi - cur.hi) <= tol) {
                cur.hi = std::max(cur.hi, nx.hi);
                cur.hi_closed = cur.hi_closed || nx.hi_closed;
            }
            continue;
        }
        out.parts_.push_back(cur);
        cur = nx;
    }
    out.parts_.push_back(cur);
    return out;
}

double IntervalSet::measure() const {
    double m = 0.0;
    for (const auto& p : parts_) {
        m += p.length();
    }
    return m;
}

bool IntervalSet::contains(double x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](double v, const Interval& iv) { return v < iv.lo; });
    if (it == parts_.begin()) {
        return false;
    }
    return std::prev(it)->contains(x);
}

Interval IntervalSet::hull() const {
    if (parts_.empty()) {
        throw InvalidWindow("hull of an empty interval set");
    }
    return Interval::closed(parts_.front().lo, parts_.back().hi);
}

double IntervalSet::max_abs() const {
    if (parts_.empty()) {
        return 0.0;
    }
    return std::max(std::abs(parts_.front().lo), std::abs(parts_.back().hi));
}

IntervalSet IntervalSet::closure() const {
    std::vector<Interval> out;
    out.reserve(parts_.size());
    for (const auto& p : parts_) {
        out.push_back(make_raw(p.lo, p.hi, true, true));
    }
    return normalize(std::move(out));
}

IntervalSet IntervalSet::interior() const {
    std::vector<Interval> out;
    for (const auto& p : parts_) {
        if (p.lo < p.hi) {
            out.push_back(make_raw(p.lo, p.hi, false, false));
        }
    }
    return normalize(std::move(out));
}

IntervalSet IntervalSet::negated() const {
    std::vector<Interval> out;
    out.reserve(parts_.size());
    for (const auto& p : parts_) {
        out.push_back(make_raw(-p.hi, -p.lo, p.hi_closed, p.lo_closed));
    }
    return normalize(std::move(out));
}

IntervalSet IntervalSet::translated(double t) const {
    std::vector<Interval> out;
    out.reserve(parts_.size());
    for (const auto& p : parts_) {
        out.push_back(make_raw(p.lo + t, p.hi + t, p.lo_closed, p.hi_closed));
    }
    return normalize(std::move(out));
}

IntervalSet IntervalSet::complement_within(const Interval& within) const {
    std::vector<Interval> gaps;
    double lo = within.lo;
    bool lc = within.lo_closed;
    for (const auto& p : parts_) {
        if ((p.lo > lo || (p.lo == lo && lc && !p.lo_closed)) && lo <= within.hi) {
            gaps.push_back(make_raw(lo, std::min(p.lo, within.hi), lc, !p.lo_closed));
        }
        lo = p.hi;
        lc = !p.hi_closed;
    }
    if (within.hi > lo || (within.hi == lo && lc && within.hi_closed)) {
        gaps.push_back(make_raw(lo, within.hi, lc, within.hi_closed));
    }
    // Clip to `within`; parts may stick out of it.
    return intersection(normalize(std::move(gaps), 0.0), IntervalSet(within));
}

bool IntervalSet::is_subset_of(const IntervalSet& other) const {
    for (const auto& a : parts_) {
        const bool covered = std::any_of(other.parts_.begin(), other.parts_.end(), [&](const Interval& b) {
            const bool lo_ok = b.lo < a.lo || (b.lo == a.lo && (b.lo_closed || !a.lo_closed));
            const bool hi_ok = b.hi > a.hi || (b.hi == a.hi && (b.hi_closed || !a.hi_closed));
            return lo_ok && hi_ok;
        });
        if (!covered) {
            return false;
        }
    }
    return true;
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> parts = a.parts();
    parts.insert(parts.end(), b.parts().begin(), b.parts().end());
    return IntervalSet::normalize(std::move(parts));
}

IntervalSet intersection(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> out;
    std::size_t i = 0;
    std::size_t j = 0;
    const auto& pa = a.parts();
    const auto& pb = b.parts();
    while (i < pa.size() && j < pb.size()) {
        Interval c = intersect_parts(pa[i], pb[j]);
        if (!c.empty()) {
            out.push_back(c);
        }
        // Advance whichever part ends first.
        if (pa[i].hi < pb[j].hi || (pa[i].hi == pb[j].hi && !pa[i].hi_closed)) {
            ++i;
        } else {
            ++j;
        }
    }
    return IntervalSet::normalize(std::move(out), 0.0);
}

IntervalSet minkowski_sum(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.parts()) {
        for (const auto& y : b.parts()) {
            out.push_back(make_raw(x.lo + y.lo, x.hi + y.hi, x.lo_closed && y.lo_closed,
                                   x.hi_closed && y.hi_closed));
        }
    }
    return IntervalSet::normalize(std::move(out));
}

IntervalSet difference_set(const IntervalSet& k) { return minkowski_sum(k, k.negated()); }

IntervalSet van_hove_boundary(const IntervalSet& a, const IntervalSet& k) {
    if (k.empty() || a.empty()) {
        return {};
    }
    const Interval ha = a.hull();
    const double margin = k.max_abs() + ha.length() + 1.0;
    const Interval work = Interval::closed(ha.lo - margin, ha.hi + margin);

    const IntervalSet cl_a = a.closure();
    const IntervalSet cl_ac = a.complement_within(work).closure();
    return set_union(intersection(minkowski_sum(k, cl_a), cl_ac),
                     intersection(minkowski_sum(k, cl_ac), cl_a));
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

std::complex<double> indicator_fourier(const IntervalSet& k, double t) {
    using std::numbers::pi;
    std::complex<double> acc{0.0, 0.0};
    for (const auto& p : k.parts()) {
        const double len = p.length();
        const double phase = -2.0 * pi * p.center() * t;
        acc += len * sinc(pi * len * t) * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return acc;
}

std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << (iv.lo_closed ? '[' : '(') << iv.lo << ", " << iv.hi << (iv.hi_closed ? ']' : ')');
}

std::ostream& operator<<(std::ostream& os, const IntervalSet& s) {
    if (s.empty()) {
        return os << "{}";
    }
    for (std::size_t i = 0; i < s.parts().size(); ++i) {
        if (i) {
            os << " u ";
        }
        os << s.parts()[i];
    }
    return os;
}

} // namespace mslab
