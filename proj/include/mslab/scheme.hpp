#pragma once

#include "mslab/intervals.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace mslab {

inline constexpr double kDetFloor = 1e-10;
inline constexpr double kLatticeEps = 1e-9;

/**
 * @brief Cut-and-project scheme (R, R, L) with L = M Z^2.
 *
 * Column j of the basis M is the j-th generator. A lattice point is
 * (x, y) = M (n, m); x lives in the physical space G and y in the
 * internal space H. The same type describes the dual scheme, whose basis
 * is (M^T)^{-1} under the pairing exp(2πi (x ξ + y η)).
 */
class LatticeScheme {
public:
    /// Throws SingularLattice when |det M| <= det_floor or entries are not finite.
    explicit LatticeScheme(const Eigen::Matrix2d& basis, double det_floor = kDetFloor);

    const Eigen::Matrix2d& basis() const { return basis_; }
    double det_abs() const { return det_abs_; }
    /// Points per unit area, 1 / |det M|.
    double density() const { return 1.0 / det_abs_; }

    Eigen::Vector2d point(std::int64_t n, std::int64_t m) const {
        return basis_ * Eigen::Vector2d(static_cast<double>(n), static_cast<double>(m));
    }

    /// Same lattice with the two coordinates exchanged, i.e. the scheme (H, G, L).
    LatticeScheme swapped() const;

private:
    Eigen::Matrix2d basis_;
    double det_abs_;
};

using DualScheme = LatticeScheme;

LatticeScheme make_scheme(const Eigen::Matrix2d& basis, double det_floor = kDetFloor);

/// The annihilator lattice L0 with basis (M^T)^{-1}.
DualScheme annihilator(const LatticeScheme& s);

/// Fibonacci scheme with basis [[1, τ], [1, -1/τ]], τ the golden ratio.
LatticeScheme fibonacci_scheme();

/// Length of the shortest nonzero lattice vector (Lagrange-Gauss reduction).
double shortest_vector_length(const LatticeScheme& s);

/// A lattice point together with its integer coordinates.
struct ProjectedPoint {
    double g_coord = 0.0;
    double h_coord = 0.0;
    std::int64_t n = 0;
    std::int64_t m = 0;
};

/// Coordinate of a lattice point: First is G (or Ĝ), Second is H (or Ĥ).
enum class Axis { First, Second };

inline double coord(const ProjectedPoint& p, Axis a) { return a == Axis::First ? p.g_coord : p.h_coord; }
inline Axis other(Axis a) { return a == Axis::First ? Axis::Second : Axis::First; }

/**
 * @brief Lattice points whose filtered coordinate lies in `window` and
 * whose projected coordinate lies in `range`, sorted by the projected one.
 */
struct ProjectionSet {
    std::vector<ProjectedPoint> points;
    IntervalSet window;
    Interval range;
    Axis projected = Axis::First;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    double position(std::size_t i) const { return coord(points[i], projected); }
    double star(std::size_t i) const { return coord(points[i], other(projected)); }
    std::vector<double> positions() const;
};

/**
 * @brief Enumerate L ∩ {coord(filter) ∈ window, coord(other) ∈ range}.
 *
 * Maps the rectangle range x hull(window) through M^{-1}, walks the
 * integer bounding box row by row (each row clipped to the exact range of
 * m allowed by the linear constraints, padded by one) and filters every
 * candidate by exact membership.
 */
ProjectionSet project(const LatticeScheme& s, Axis filter, const IntervalSet& window, const Interval& range);

/// Λ_W ∩ g_range: points with internal coordinate in W.
ProjectionSet enumerate_strip(const LatticeScheme& s, const IntervalSet& window, const Interval& g_range);

/// _KΛ ∩ h_range: dual-lattice points with Ĝ-coordinate in K, projected to Ĥ.
ProjectionSet dual_projection(const LatticeScheme& s, const IntervalSet& k, const Interval& h_range);

struct MinGapReport {
    double min_gap = 0.0;
    bool violation = false;
    /// Index of the left point of the smallest gap.
    std::size_t index = 0;
    std::size_t count = 0;
};

/// Smallest gap between consecutive projected coordinates; violation when below tol.
MinGapReport check_injectivity(const ProjectionSet& p, double tol = kLatticeEps);

/**
 * @brief Lower bound on the gap of the full (untruncated) projection set
 * with the given window.
 *
 * Any gap of Λ_W is the projected coordinate of a lattice vector whose
 * other coordinate lies in W - W. One gap found by a short probe bounds
 * the search, after which every such vector up to that length is
 * enumerated. Returns 0 when the projection is not injective.
 */
double separation_lower_bound(const LatticeScheme& s, Axis filter, const IntervalSet& window);

/// Gap between distinct positions of a projection set and the largest number of points sharing one position.
struct Separation {
    double gap = 0.0;
    std::size_t multiplicity = 1;
};

/**
 * @brief Like separation_lower_bound, but tolerates stacked points.
 *
 * Lattice vectors with vanishing projected coordinate and other coordinate
 * in W - W bound the stack size; the gap is taken over the remaining ones.
 * Used for tail bounds over rational schemes such as M = I.
 */
Separation separation_profile(const LatticeScheme& s, Axis filter, const IntervalSet& window);

} // namespace mslab
