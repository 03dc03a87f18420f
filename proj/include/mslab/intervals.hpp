#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

namespace mslab {

/// Endpoint tolerance used when merging abutting or overlapping parts.
inline constexpr double kMergeTolerance = 1e-12;

/**
 * @brief A bounded real interval with explicit endpoint closedness.
 *
 * Windows default to the half-open form [lo, hi) so that membership of
 * lattice points sitting exactly on a window edge is deterministic.
 * A degenerate interval lo == hi is a point only when both ends are
 * closed; otherwise it is empty.
 */
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = false;

    Interval() = default;
    /// Throws InvalidInterval for non-finite endpoints or lo > hi.
    Interval(double lo, double hi, bool lo_closed = true, bool hi_closed = false);

    static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval half_open(double lo, double hi) { return {lo, hi, true, false}; }
    static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
    static Interval point(double x) { return {x, x, true, true}; }

    bool empty() const { return lo == hi && !(lo_closed && hi_closed); }
    double length() const { return hi - lo; }
    double center() const { return 0.5 * (lo + hi); }
    bool contains(double x) const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/**
 * @brief Finite disjoint union of intervals in unique normal form.
 *
 * Parts are sorted by lower endpoint, pairwise disjoint, and never touch
 * in a way that would allow merging. All set operations return values in
 * normal form; instances are immutable after construction.
 */
class IntervalSet {
public:
    IntervalSet() = default;
    IntervalSet(const Interval& part); // NOLINT(implicit)

    /// Sorts, drops empty parts and merges overlapping/abutting ones.
    static IntervalSet normalize(std::vector<Interval> parts, double tol = kMergeTolerance);

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    double measure() const;
    bool contains(double x) const;
    /// Smallest closed interval containing the set. Throws InvalidWindow on empty sets.
    Interval hull() const;
    /// max |x| over the closure; 0 for the empty set.
    double max_abs() const;

    IntervalSet closure() const;
    IntervalSet interior() const;
    IntervalSet negated() const;
    IntervalSet translated(double t) const;
    /// Complement intersected with the closed interval `within`.
    IntervalSet complement_within(const Interval& within) const;

    bool is_subset_of(const IntervalSet& other) const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Interval> parts_;
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersection(const IntervalSet& a, const IntervalSet& b);
IntervalSet minkowski_sum(const IntervalSet& a, const IntervalSet& b);
/// K - K = K + (-K).
IntervalSet difference_set(const IntervalSet& k);

/**
 * @brief K-boundary of A: [(K + cl A) ∩ cl(A^c)] ∪ [(K + cl(A^c)) ∩ cl A].
 *
 * The complement is taken inside a bounded working hull that extends past
 * A by more than the reach of K, which leaves both intersections unchanged.
 * An empty K yields the empty set.
 */
IntervalSet van_hove_boundary(const IntervalSet& a, const IntervalSet& k);

/// ∫_K exp(-2πi ξ t) dξ, evaluated stably through t = 0.
std::complex<double> indicator_fourier(const IntervalSet& k, double t);

/// sin(x)/x with the removable singularity filled in.
double sinc(double x);

std::ostream& operator<<(std::ostream& os, const Interval& iv);
std::ostream& operator<<(std::ostream& os, const IntervalSet& s);

} // namespace mslab
