#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mslab/density.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

using namespace mslab;

namespace {

const LatticeScheme kZ2{Eigen::Matrix2d::Identity()};

} // namespace

TEST_CASE("integer density is exact") {
    VanHoveSeq seq = VanHoveSeq::geometric(25, 6);
    const auto rep = model_set_density(kZ2, Interval::half_open(-0.5, 0.5), seq);
    CHECK(rep.predicted == 1.0);
    for (const auto& lv : rep.levels) {
        CHECK(lv.lower_est == 1.0);
        CHECK(lv.upper_est == 1.0);
    }
}

TEST_CASE("shifted integer counts differ by at most one") {
    const auto pts = model_set_provider(kZ2, Interval::half_open(-0.5, 0.5));
    for (double t : {10.3, 57.0, 100.0}) {
        const auto a = pts(Interval::half_open(-t, t));
        const auto b = pts(Interval::half_open(-t + 0.5, t + 0.5));
        CHECK(std::abs(static_cast<long>(a.size()) - static_cast<long>(b.size())) <= 1);
    }
}

TEST_CASE("Fibonacci density") {
    VanHoveSeq seq;
    seq.half_widths = {1250, 2500, 5000, 10000};
    const auto rep = model_set_density(fibonacci_scheme(), Interval::half_open(0, 1), seq);
    CHECK(rep.predicted == doctest::Approx(1 / std::sqrt(5.0)));
    CHECK(rep.relative_error < 0.01);
    CHECK(rep.shift_spread < 0.01);
    CHECK(rep.lower <= rep.upper);
}

TEST_CASE("density sandwich for an irregular window") {
    // Interior and closure have the same measure here; the estimates close in on it.
    const IntervalSet w = IntervalSet::normalize({Interval::closed(0, 0.3), Interval::open(0.5, 1.1)});
    const auto s = fibonacci_scheme();
    VanHoveSeq seq = VanHoveSeq::geometric(50, 7);
    const auto rep = model_set_density(s, w, seq);
    double prev = INFINITY;
    for (const auto& lv : rep.levels) {
        const double eps = std::max(std::abs(lv.lower_est - rep.predicted), std::abs(lv.upper_est - rep.predicted));
        CHECK(eps <= prev * 1.5 + 1e-3);
        prev = eps;
        CHECK(lv.lower_est <= lv.upper_est);
    }
    CHECK(s.density() * w.interior().measure() - 0.01 <= rep.lower);
    CHECK(rep.upper <= s.density() * w.closure().measure() + 0.01);
}

TEST_CASE("van Hove boundary ratio") {
    const IntervalSet k = Interval::closed(-2, 3);
    for (double t : {25.0, 100.0, 400.0}) {
        const double r = boundary_ratio(Interval::half_open(-t, t), k);
        CHECK(r <= 2.0 * (k.measure() + 5.0) / (2.0 * t));
    }
}

TEST_CASE("smooth density on the integers") {
    const auto h = WeightFunction::indicator(Interval::half_open(-0.5, 0.5));
    const auto p = smooth_density(kZ2, h, 64, 0.0);
    CHECK(std::abs(p.value.real() - 1.0) <= 0.05);
    // Poisson summation gives exactly 1 once the dual support excludes the nonzero integers.
    CHECK(std::abs(smooth_density(kZ2, h, 8, 0.3).value.real() - 1.0) <= 1e-9 + smooth_density(kZ2, h, 8, 0.3).tail_bound);
    CHECK(smooth_density(kZ2, h.scaled(2.0), 16, 0.1).value.real() ==
          doctest::Approx(2.0 * smooth_density(kZ2, h, 16, 0.1).value.real()));
}

TEST_CASE("smooth density on the Fibonacci chain is uniform in the shift") {
    const auto s = fibonacci_scheme();
    const auto h = WeightFunction::indicator(Interval::half_open(0, 1));
    double lo = INFINITY;
    double hi = -INFINITY;
    for (double s0 : {0.0, 0.37, 5.1}) {
        const double v = smooth_density(s, h, 64, s0).value.real();
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        CHECK(std::abs(v - s.density()) <= 0.05);
    }
    CHECK(hi - lo <= 0.05);
}

TEST_CASE("smooth density is invariant under unimodular relabeling") {
    const auto s = fibonacci_scheme();
    Eigen::Matrix2d u;
    u << 2, 1, 1, 1;
    const LatticeScheme t(s.basis() * u);
    const auto h = WeightFunction::outer_trapezoid(0.5, 0.1);
    CHECK(smooth_density(s, h, 16, 0.4).value.real() ==
          doctest::Approx(smooth_density(t, h, 16, 0.4).value.real()).epsilon(1e-12));
}

TEST_CASE("Fourier-Bohr coefficients on the integers") {
    const auto h = WeightFunction::outer_trapezoid(1.0, 0.5);
    const double ih = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double y) { return h.evaluate(y); }, -2.0, 2.0, 10, 1e-14);
    CHECK(ih == doctest::Approx(3.0));
    CHECK(fourier_bohr_coefficient(kZ2, h, 0.0, 64).value.real() == doctest::Approx(ih).epsilon(1e-6));
    CHECK(std::abs(fourier_bohr_coefficient(kZ2, h, 0.5, 64).value) <= 0.05);
    const auto lim = fourier_bohr_limit(kZ2, h, 1.0);
    CHECK(std::abs(fourier_bohr_coefficient(kZ2, h, 1.0, 64).value - lim) <= 0.05);
}

TEST_CASE("Fourier-Bohr coefficient at a Fibonacci dual point") {
    const auto s = fibonacci_scheme();
    const auto h = WeightFunction::outer_trapezoid(Interval::closed(0, 1), 0.2);
    const auto d = annihilator(s).point(1, 0);
    const auto lim = fourier_bohr_limit(s, h, d(0));
    CHECK(std::abs(lim - s.density() * h.inverse_fourier(d(1))) < 1e-12);
    CHECK(std::abs(fourier_bohr_coefficient(s, h, d(0), 64).value - lim) <= 0.05);
}
