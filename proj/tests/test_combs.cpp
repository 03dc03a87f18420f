#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mslab/combs.hpp"
#include "mslab/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace mslab;

TEST_CASE("integer lattice comb is a finite sum") {
    const LatticeScheme z(Eigen::Matrix2d::Identity());
    const auto h = WeightFunction::indicator(Interval::half_open(-0.5, 0.5));
    const auto g = WeightFunction::outer_trapezoid(2.0, 1.0);
    const auto p = pair_comb(z, h, g, 100);
    double oracle = 0;
    for (int n = -10; n <= 10; ++n) {
        oracle += g.evaluate(n);
    }
    CHECK(p.value.real() == doctest::Approx(oracle));
    CHECK(p.value.real() == doctest::Approx(1 + 2 * 1 + 2 * 1 + 2 * 0.5));
    CHECK(p.tail_bound == 0.0);
}

TEST_CASE("zero factor") {
    const auto s = fibonacci_scheme();
    const auto h = WeightFunction::indicator(Interval::half_open(0, 1));
    const auto g = WeightFunction::fejer_averager(3).scaled(0.0);
    const auto p = pair_comb(s, h, g, 50);
    CHECK(p.value == std::complex<double>(0, 0));
    CHECK(p.tail_bound == 0.0);
}

TEST_CASE("no decay certificate") {
    const auto s = fibonacci_scheme();
    const auto ind = WeightFunction::indicator(Interval::half_open(0, 1));
    const Factor none{[](double) { return std::complex<double>(1, 0); }, Envelope{}};
    CHECK_THROWS_AS(pair_factors(s, spatial_factor(ind), none, 10), NoTailBound);
    CHECK_THROWS_AS(psf_residual(s, ind, WeightFunction::outer_trapezoid(1, 0.5), 10), NoTailBound);
}

TEST_CASE("Fibonacci comb against the density prediction") {
    const auto s = fibonacci_scheme();
    const auto h = WeightFunction::indicator(Interval::half_open(0, 1));
    const auto g = WeightFunction::outer_trapezoid(10.0, 1.0);
    const auto p = pair_comb(s, h, g, 100);
    const double predicted = s.density() * 1.0 * g.integral();
    CHECK(std::abs(p.value.real() - predicted) <= p.tail_bound + 0.05 * predicted);
}

TEST_CASE("power-law tail bound covers the omitted terms") {
    const auto s = fibonacci_scheme();
    const auto h = WeightFunction::outer_trapezoid(1.0, 0.5);
    const auto g = WeightFunction::fejer_averager(4);
    const auto small = pair_comb(s, h, g, 20);
    const auto big = pair_comb(s, h, g, 2000);
    CHECK(small.tail_bound > 0.0);
    CHECK(std::abs(small.value - big.value) <= small.tail_bound + big.tail_bound);
}

TEST_CASE("Poisson summation on the integer lattice") {
    const LatticeScheme z(Eigen::Matrix2d::Identity());
    const auto h = WeightFunction::outer_trapezoid(1.0, 0.5);
    const auto r = psf_residual(z, h, h, 200);
    CHECK(r.within_contract);
    CHECK(r.residual <= 1e-6);
    // Brute-force lhs: Σ_n g(n) Σ_m h(m).
    double lhs = 0;
    for (int n = -3; n <= 3; ++n) {
        for (int m = -3; m <= 3; ++m) {
            lhs += h.evaluate(m) * h.evaluate(n);
        }
    }
    CHECK(r.lhs.value.real() == doctest::Approx(lhs));
    // ĥ vanishes on nonzero integers here, so the dual side is ∫g ∫h.
    CHECK(r.rhs.value.real() == doctest::Approx(h.integral() * h.integral()));
}

TEST_CASE("Poisson summation on random schemes") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> e(-1.5, 1.5);
    std::uniform_real_distribution<double> wd(0.3, 1.5);
    int cases = 0;
    while (cases < 20) {
        Eigen::Matrix2d m;
        m << e(rng), e(rng), e(rng), e(rng);
        const double d = std::abs(m.determinant());
        if (d < 0.5 || d > 2.0) {
            continue;
        }
        const LatticeScheme s(m);
        const double w = wd(rng);
        const auto h = WeightFunction::outer_trapezoid(w, 0.4 * w);
        const auto g = WeightFunction::outer_trapezoid(Interval::closed(-0.5, w), 0.3);
        const auto r = psf_residual(s, h, g, 60);
        CHECK(r.within_contract);
        ++cases;
    }
}

TEST_CASE("Fibonacci Poisson summation against a larger radius") {
    const auto s = fibonacci_scheme();
    const auto h = WeightFunction::outer_trapezoid(1.0, 0.5);
    const auto r = psf_residual(s, h, h, 500);
    const auto ref = psf_residual(s, h, h, 1000);
    CHECK(r.within_contract);
    CHECK(std::abs(r.rhs.value - ref.rhs.value) <= r.rhs.tail_bound + ref.rhs.tail_bound);
}

TEST_CASE("scaling covariance") {
    const auto s = fibonacci_scheme();
    const double sigma = 2.5;
    Eigen::Matrix2d d = Eigen::Matrix2d::Identity();
    d(0, 0) = sigma;
    const LatticeScheme t(d * s.basis());
    const auto h = WeightFunction::outer_trapezoid(1.0, 0.5);
    const auto g = WeightFunction::outer_trapezoid(4.0, 1.0);
    const auto gs = WeightFunction::outer_trapezoid(4.0 * sigma, sigma);
    CHECK(pair_comb(s, h, g, 0).value.real() == doctest::Approx(pair_comb(t, h, gs, 0).value.real()).epsilon(1e-12));
}

TEST_CASE("linearity") {
    const auto s = fibonacci_scheme();
    const auto h = WeightFunction::outer_trapezoid(1.0, 0.5);
    const auto g = WeightFunction::outer_trapezoid(6.0, 1.0);
    const auto a = pair_comb(s, h, g, 0).value;
    CHECK(std::abs(pair_comb(s, h.scaled(3.0), g, 0).value - 3.0 * a) < 1e-12);
    CHECK(std::abs(pair_comb(s, h, g.scaled(-2.0), 0).value + 2.0 * a) < 1e-12);
}
