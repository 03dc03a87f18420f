#include "mslab/scheme.hpp"

#include "mslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mslab {

LatticeScheme::LatticeScheme(const Eigen::Matrix2d& basis, double det_floor) : basis_(basis) {
    if (!basis.allFinite()) {
        throw SingularLattice("lattice basis has non-finite entries");
    }
    det_abs_ = std::abs(basis.determinant());
    if (!(det_abs_ > det_floor)) {
        std::ostringstream msg;
        msg << "lattice basis is singular: |det M| = " << det_abs_ << " <= " << det_floor;
        throw SingularLattice(msg.str());
    }
}

LatticeScheme LatticeScheme::swapped() const {
    Eigen::Matrix2d p;
    p << 0.0, 1.0, 1.0, 0.0;
    return LatticeScheme(p * basis_, 0.0);
}

LatticeScheme make_scheme(const Eigen::Matrix2d& basis, double det_floor) {
    return LatticeScheme(basis, det_floor);
}

DualScheme annihilator(const LatticeScheme& s) {
    return LatticeScheme(s.basis().transpose().inverse(), 0.0);
}

LatticeScheme fibonacci_scheme() {
    const double tau = std::numbers::phi;
    Eigen::Matrix2d m;
    m << 1.0, tau, 1.0, -1.0 / tau;
    return LatticeScheme(m);
}

double shortest_vector_length(const LatticeScheme& s) {
    Eigen::Vector2d b1 = s.basis().col(0);
    Eigen::Vector2d b2 = s.basis().col(1);
    for (int iter = 0; iter < 200; ++iter) {
        if (b1.squaredNorm() > b2.squaredNorm()) {
            std::swap(b1, b2);
        }
        const double mu = std::round(b1.dot(b2) / b1.squaredNorm());
        if (mu == 0.0) {
            break;
        }
        b2 -= mu * b1;
    }
    return std::min(b1.norm(), b2.norm());
}

std::vector<double> ProjectionSet::positions() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        out.push_back(coord(p, projected));
    }
    return out;
}

namespace {

struct Bounds {
    double lo;
    double hi;
};

// Solutions m of lo <= a*n + c*m <= hi for fixed n, or nullopt-like empty range.
bool clip_row(double a, double c, double n, Bounds b, double& m_lo, double& m_hi) {
    const double base = a * n;
    if (std::abs(c) < 1e-300) {
        const double slack = 1e-9 * (1.0 + std::abs(b.lo) + std::abs(b.hi));
        return base >= b.lo - slack && base <= b.hi + slack;
    }
    double t0 = (b.lo - base) / c;
    double t1 = (b.hi - base) / c;
    if (t0 > t1) {
        std::swap(t0, t1);
    }
    m_lo = std::max(m_lo, t0);
    m_hi = std::min(m_hi, t1);
    return true;
}

} // namespace

ProjectionSet project(const LatticeScheme& s, Axis filter, const IntervalSet& window, const Interval& range) {
    ProjectionSet out;
    out.window = window;
    out.range = range;
    out.projected = other(filter);
    if (window.empty() || range.empty()) {
        return out;
    }
    const Interval wh = window.hull();
    // Rows of M: index 0 gives x, index 1 gives y.
    const int fi = filter == Axis::First ? 0 : 1;
    const int pi = 1 - fi;
    const Eigen::Matrix2d& m = s.basis();
    Bounds bf{wh.lo, wh.hi};
    Bounds bp{range.lo, range.hi};

    // Integer bounding box of the preimage of the rectangle.
    const Eigen::Matrix2d inv = m.inverse();
    double n_min = std::numeric_limits<double>::infinity();
    double n_max = -n_min;
    double m_min = n_min;
    double m_max = -n_min;
    for (double f : {bf.lo, bf.hi}) {
        for (double p : {bp.lo, bp.hi}) {
            Eigen::Vector2d v;
            v(fi) = f;
            v(pi) = p;
            const Eigen::Vector2d c = inv * v;
            n_min = std::min(n_min, c(0));
            n_max = std::max(n_max, c(0));
            m_min = std::min(m_min, c(1));
            m_max = std::max(m_max, c(1));
        }
    }
    const auto n0 = static_cast<std::int64_t>(std::floor(n_min)) - 1;
    const auto n1 = static_cast<std::int64_t>(std::ceil(n_max)) + 1;
    const auto mb0 = static_cast<std::int64_t>(std::floor(m_min)) - 1;
    const auto mb1 = static_cast<std::int64_t>(std::ceil(m_max)) + 1;

    for (std::int64_t n = n0; n <= n1; ++n) {
        const double dn = static_cast<double>(n);
        double lo = static_cast<double>(mb0);
        double hi = static_cast<double>(mb1);
        if (!clip_row(m(fi, 0), m(fi, 1), dn, bf, lo, hi)) {
            continue;
        }
        if (!clip_row(m(pi, 0), m(pi, 1), dn, bp, lo, hi)) {
            continue;
        }
        if (lo > hi + 2.0) {
            continue;
        }
        const auto m0 = std::max(mb0, static_cast<std::int64_t>(std::floor(lo)) - 1);
        const auto m1 = std::min(mb1, static_cast<std::int64_t>(std::ceil(hi)) + 1);
        for (std::int64_t k = m0; k <= m1; ++k) {
            const Eigen::Vector2d v = s.point(n, k);
            if (window.contains(v(fi)) && range.contains(v(pi))) {
                out.points.push_back({v(0), v(1), n, k});
            }
        }
    }
    const Axis pa = out.projected;
    std::sort(out.points.begin(), out.points.end(), [pa](const ProjectedPoint& a, const ProjectedPoint& b) {
        const double ca = coord(a, pa);
        const double cb = coord(b, pa);
        if (ca != cb) {
            return ca < cb;
        }
        return a.n != b.n ? a.n < b.n : a.m < b.m;
    });
    return out;
}

ProjectionSet enumerate_strip(const LatticeScheme& s, const IntervalSet& window, const Interval& g_range) {
    return project(s, Axis::Second, window, g_range);
}

ProjectionSet dual_projection(const LatticeScheme& s, const IntervalSet& k, const Interval& h_range) {
    return project(annihilator(s), Axis::First, k, h_range);
}

MinGapReport check_injectivity(const ProjectionSet& p, double tol) {
    MinGapReport r;
    r.count = p.size();
    r.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < p.size(); ++i) {
        const double gap = p.position(i) - p.position(i - 1);
        if (gap < r.min_gap) {
            r.min_gap = gap;
            r.index = i - 1;
        }
    }
    r.violation = r.min_gap < tol;
    return r;
}

namespace {

double stack_tolerance(const LatticeScheme& s) { return 1e-12 * std::max(1.0, s.basis().cwiseAbs().maxCoeff()); }

// Smallest positive gap between distinct positions in a probe window.
double probe_gap(const LatticeScheme& s, Axis filter, const IntervalSet& window) {
    const double expected = s.density() * std::max(window.measure(), 1e-12);
    const double tol = stack_tolerance(s);
    double span = std::max(4.0 / expected, 1.0);
    for (int attempt = 0; attempt < 40 && span <= 1e7; ++attempt, span *= 2.0) {
        const ProjectionSet ps = project(s, filter, window, Interval::closed(0.0, span));
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < ps.size(); ++i) {
            const double gap = ps.position(i) - ps.position(i - 1);
            if (gap > tol) {
                best = std::min(best, gap);
            }
        }
        if (std::isfinite(best)) {
            return best;
        }
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace

Separation separation_profile(const LatticeScheme& s, Axis filter, const IntervalSet& window) {
    Separation out;
    out.gap = std::numeric_limits<double>::infinity();
    if (window.empty()) {
        return out;
    }
    const double probe = probe_gap(s, filter, window);
    const double tol = stack_tolerance(s);
    const IntervalSet diff = difference_set(window);
    const double reach = std::isfinite(probe) ? probe : tol;
    const ProjectionSet cand = project(s, filter, diff, Interval::closed(-reach, reach));
    std::size_t stacked = 0;
    double best = probe;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        const auto& q = cand.points[i];
        if (q.n == 0 && q.m == 0) {
            continue;
        }
        const double d = std::abs(cand.position(i));
        if (d <= tol) {
            // Count each pair {v, -v} once.
            if (cand.star(i) > 0.0) {
                ++stacked;
            }
            continue;
        }
        best = std::min(best, d);
    }
    out.gap = best;
    out.multiplicity = 1 + stacked;
    return out;
}

double separation_lower_bound(const LatticeScheme& s, Axis filter, const IntervalSet& window) {
    const Separation sep = separation_profile(s, filter, window);
    return sep.multiplicity > 1 ? 0.0 : sep.gap;
}

} // namespace mslab
