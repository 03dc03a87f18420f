#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mslab/bounds.hpp"
#include "mslab/errors.hpp"
#include "mslab/frames.hpp"

#include <cmath>
#include <numbers>

using namespace mslab;

namespace {

const LatticeScheme kZ2{Eigen::Matrix2d::Identity()};

std::vector<double> integers(int n) {
    std::vector<double> out;
    for (int i = -n; i <= n; ++i) {
        out.push_back(i);
    }
    return out;
}

} // namespace

TEST_CASE("closed-form envelopes") {
    const double dens = 0.7;
    const double w = 1.3;
    const double b = 0.4;
    const auto up = minimize_sampling_upper_envelope(dens, w, b);
    CHECK(up.u == doctest::Approx(1 / (4 * b)).epsilon(1e-6));
    CHECK(up.value == doctest::Approx(dens * (2 * w + 1 / b)).epsilon(1e-10));
    const auto lo = maximize_sampling_lower_envelope(dens, w, b);
    CHECK(lo.value == doctest::Approx(dens * (2 * w - 1 / b)).epsilon(1e-9));
    CHECK((lo.value > 0) == (2 * w * b > 1));
}

TEST_CASE("sampling upper on the integers with a small spectrum") {
    // K - K = [-0.8, 0.8] meets the dual projection only at χ = 0, where η runs over Z.
    const IntervalSet w = Interval::half_open(-0.5, 0.5);
    const IntervalSet k = Interval::closed(-0.4, 0.4);
    const double u = 0.3;
    const auto c = sampling_upper(kZ2, w, k, u, 400);
    const auto h = WeightFunction::outer_trapezoid(Interval::closed(-0.5, 0.5), u);
    double brute = 0;
    for (int m = -1600; m <= 1600; ++m) {
        brute += std::abs(h.fourier(m));
    }
    CHECK(c.value >= brute - 1e-12);
    CHECK(c.value - brute <= c.ingredients.at("tail") + 1e-12);
    CHECK(c.ingredients.at("main") == doctest::Approx(2 * (0.5 + u)));
}

TEST_CASE("sampling upper grows with u") {
    const auto s = fibonacci_scheme();
    const IntervalSet w = Interval::half_open(-1, 1);
    const IntervalSet k = Interval::closed(-0.1, 0.1);
    double prev = 0;
    for (double u : {1.0, 2.0, 4.0}) {
        const double v = sampling_upper(s, w, k, u, 200).value;
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("sampling lower respects the envelope") {
    const auto s = fibonacci_scheme();
    const IntervalSet k = Interval::closed(-0.05, 0.05);
    for (double w : {1.0, 2.0, 5.0}) {
        const auto c = sampling_lower(s, k, Interval::closed(-w, w), 0.25, 300);
        const double b = c.ingredients.at("b");
        CHECK(c.ingredients.at("correction") <= s.density() / (8 * 0.25 * b * b));
        CHECK(c.value >= c.ingredients.at("envelope") - c.ingredients.at("tail"));
    }
    CHECK_THROWS_AS(sampling_lower(s, k, Interval::closed(-1, 1), 1.0, 100), InvalidSmoothing);
}

TEST_CASE("sampling lower for a wide window") {
    // Large w relative to 1/b: the certificate is close to 2 dens (w - u).
    Eigen::Matrix2d m;
    m << 1, 0.5, 0, 1;
    const LatticeScheme s(m);
    const IntervalSet k = Interval::closed(-0.1, 0.1);
    const auto c = sampling_lower(s, k, Interval::closed(-100, 100), 1.0, 300);
    CHECK(c.positive);
    CHECK(c.value == doctest::Approx(2 * s.density() * 99).epsilon(0.01));
}

TEST_CASE("interpolation lower mirrors sampling lower") {
    Eigen::Matrix2d m;
    m << 1, std::numbers::sqrt2, 0.3, -1;
    const LatticeScheme s(m);
    const IntervalSet w = Interval::half_open(-0.05, 0.05);
    const IntervalSet k = Interval::closed(-0.6, 0.6);
    const auto il = interp_lower(s, w, k, 0.2, 200);
    const auto sl = sampling_lower(annihilator(s.swapped()), w, k, 0.2, 200);
    CHECK(std::abs(il.value * annihilator(s).density() - sl.value) <= 1e-10);
}

TEST_CASE("interpolation lower without corrections") {
    // A single lattice line: Λ_{W-W} is 0 plus points beyond reach of ĝ_K's plateau.
    const auto s = fibonacci_scheme();
    const IntervalSet k = Interval::closed(-2.0, 2.0);
    const auto c = interp_lower(s, Interval::half_open(0, 0.01), k, 0.5, 300);
    CHECK(c.ingredients.at("main") == doctest::Approx(2 * (2.0 - 0.5)));
    CHECK(c.value <= c.ingredients.at("main"));
    // Shrinking K shrinks the main term.
    double prev = INFINITY;
    for (double kk : {2.0, 1.0, 0.5}) {
        const double main = interp_lower(s, Interval::half_open(0, 0.01), Interval::closed(-kk, kk), 0.1, 100)
                                .ingredients.at("main");
        CHECK(main < prev);
        prev = main;
    }
}

TEST_CASE("interpolation upper against the Gram truth") {
    const auto pts = integers(40);
    const IntervalSet k = Interval::closed(-0.25, 0.25);
    const auto c = interp_upper(pts, k, 0.8);
    CHECK(c.ingredients.at("half_width") == doctest::Approx(0.4));
    const double truth = eig_extremes(interpolation_gram(pts, k)).lambda_max;
    CHECK(truth <= 1.0 + 1e-12);
    CHECK(c.value >= truth);
    // Doubling gaps allows a wider triangle and a smaller constant.
    std::vector<double> wide;
    for (double p : pts) {
        wide.push_back(2 * p);
    }
    CHECK(interp_upper(wide, k).value <= c.value);
    // Larger K, larger constant.
    double prev = 0;
    for (double kk : {0.1, 0.2, 0.4}) {
        const double v = interp_upper(pts, Interval::closed(-kk, kk)).value;
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(interp_upper(std::vector<double>{0.0, 1.0, 1.0}, k), NotUniformlyDiscrete);
}

TEST_CASE("search helper") {
    const auto s = fibonacci_scheme();
    const IntervalSet k = Interval::closed(-0.05, 0.05);
    const auto r = grow_until_positive(
        [&](double w) { return sampling_lower(s, k, Interval::closed(-w, w), 0.5 * w, 200); }, 0.05);
    CHECK(r.found);
    CHECK(r.certificate.positive);
    const auto none = grow_until_positive(
        [](double) {
            BoundCertificate c;
            c.positive = false;
            return c;
        },
        1.0, 2.0, 8.0);
    CHECK_FALSE(none.found);
    CHECK(none.steps == 4);
}
