#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mslab/errors.hpp"
#include "mslab/frames.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace mslab;

namespace {

std::vector<double> integers(int n) {
    std::vector<double> out;
    for (int i = -n; i <= n; ++i) {
        out.push_back(i);
    }
    return out;
}

// Number of eigenvalues below sigma from the inertia of an LDL^T factorization.
long count_below(const Eigen::MatrixXcd& h, double sigma) {
    const Eigen::LDLT<Eigen::MatrixXcd> ldlt(h - sigma * Eigen::MatrixXcd::Identity(h.rows(), h.cols()));
    return (ldlt.vectorD().real().array() < 0.0).count();
}

// Extremes by inertia bisection, polished with shifted inverse iteration.
std::pair<double, double> power_oracle(const Eigen::MatrixXcd& h) {
    const auto n = h.rows();
    const double r = h.cwiseAbs().rowwise().sum().maxCoeff();
    auto bisect = [&](long target) {
        double lo = -r;
        double hi = r;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (count_below(h, mid) > target ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    auto polish = [&](double sigma) {
        const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(h - (sigma - 1e-9) * Eigen::MatrixXcd::Identity(n, n));
        Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n).normalized();
        for (int it = 0; it < 5; ++it) {
            v = lu.solve(v).normalized();
        }
        return v.dot(h * v).real();
    };
    return {polish(bisect(0)), polish(bisect(n - 1))};
}

} // namespace

TEST_CASE("Shannon system is orthonormal") {
    const auto g = interpolation_gram(integers(20), Interval::closed(-0.5, 0.5));
    CHECK((g.entries - Eigen::MatrixXcd::Identity(41, 41)).cwiseAbs().maxCoeff() < 1e-15);
    const auto f = eig_extremes(g);
    CHECK(std::abs(f.lambda_min - 1) < 1e-10);
    CHECK(std::abs(f.lambda_max - 1) < 1e-10);
}

TEST_CASE("oversampled spectrum loses interpolation") {
    const IntervalSet k = Interval::closed(-0.25, 0.25);
    double prev = INFINITY;
    for (int n : {8, 16, 32}) {
        const auto f = eig_extremes(interpolation_gram(integers(n), k));
        CHECK(f.lambda_max <= 1.0 + 1e-12);
        CHECK(f.lambda_min < prev);
        prev = f.lambda_min;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("two-point Gram in closed form") {
    for (double d : {0.3, 1.7, 4.2}) {
        for (double k : {0.1, 0.5, 1.3}) {
            const auto f = eig_extremes(interpolation_gram({0.0, d}, Interval::closed(-k, k)));
            const double off = 2 * k * sinc(2 * std::numbers::pi * k * d);
            CHECK(f.lambda_min == doctest::Approx(2 * k - std::abs(off)).epsilon(1e-12));
            CHECK(f.lambda_max == doctest::Approx(2 * k + std::abs(off)).epsilon(1e-12));
        }
    }
}

TEST_CASE("Gram matrices are Hermitian and positive semidefinite") {
    const auto s = fibonacci_scheme();
    const auto pts = enumerate_strip(s, Interval::half_open(0, 1), Interval::closed(-80, 80)).positions();
    const IntervalSet k = IntervalSet::normalize({Interval::closed(-0.4, 0.1), Interval::half_open(0.3, 0.5)});
    const auto g = interpolation_gram(pts, k);
    CHECK((g.entries - g.entries.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    const auto f = eig_extremes(g);
    CHECK(f.lambda_min >= -1e-9 * k.measure() * f.dim);
    CHECK_THROWS_AS(interpolation_gram({0.0, 1.0, 0.0}, k), DuplicateNode);
}

TEST_CASE("eigenvalue extremes") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(5, 5);
    for (int i = 0; i < 5; ++i) {
        d(i, i) = i + 1;
    }
    // Embed by a unitary change of basis.
    std::mt19937_64 rng(2);
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd r(5, 5);
    for (int i = 0; i < 25; ++i) {
        r(i / 5, i % 5) = {nd(rng), nd(rng)};
    }
    const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(r).householderQ();
    const auto f = eig_extremes(Eigen::MatrixXcd(q * d * q.adjoint()));
    CHECK(f.lambda_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.lambda_max == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(eig_extremes(Eigen::MatrixXcd::Identity(7, 7)).lambda_min == doctest::Approx(1.0));
    CHECK_THROWS_AS(eig_extremes(Eigen::MatrixXcd::Identity(7, 7), 6), TooLarge);
}

TEST_CASE("random Hermitian extremes against power iteration") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd a(50, 50);
    for (int i = 0; i < 50; ++i) {
        for (int j = 0; j < 50; ++j) {
            a(i, j) = {nd(rng), nd(rng)};
        }
    }
    // Positive definite with a clear gap at both ends.
    Eigen::MatrixXcd h = a * a.adjoint() / 50.0;
    h(0, 0) += 30.0;
    const auto f = eig_extremes(h);
    const auto [lo, hi] = power_oracle(h);
    CHECK(std::abs(f.lambda_max - hi) < 1e-9 * f.lambda_max);
    CHECK(std::abs(f.lambda_min - lo) < 1e-9 * f.lambda_max);
}

TEST_CASE("interlacing along truncations") {
    const auto s = fibonacci_scheme();
    const auto pts = enumerate_strip(s, Interval::half_open(0, 1), Interval::closed(-200, 200)).positions();
    const auto f = gram_trace(pts, Interval::closed(-0.2, 0.2), {25, 50, 100, 200});
    REQUIRE(f.monotone_trace.size() == 4);
    for (std::size_t i = 1; i < f.monotone_trace.size(); ++i) {
        CHECK(f.monotone_trace[i].lambda_min <= f.monotone_trace[i - 1].lambda_min + 1e-12);
        CHECK(f.monotone_trace[i].lambda_max >= f.monotone_trace[i - 1].lambda_max - 1e-12);
    }
}

TEST_CASE("sampling quotient for the Shannon pair") {
    const auto e = sampling_quotient(integers(32), Interval::closed(-0.5, 0.5), 257);
    CHECK(std::abs(e.lambda_min - 1) <= 0.1);
    CHECK(std::abs(e.lambda_max - 1) <= 0.1);
    CHECK(e.lambda_max <= 1 + 1e-9);
}

TEST_CASE("undersampled spectrum loses sampling") {
    double prev = INFINITY;
    for (int n : {16, 32, 64}) {
        const auto e = sampling_quotient(integers(n), Interval::closed(-0.6, 0.6), 64);
        CHECK(e.lambda_min <= prev + 1e-12);
        prev = e.lambda_min;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("Fibonacci sampling is stable for a small spectrum") {
    const auto s = fibonacci_scheme();
    for (double t : {50.0, 100.0, 200.0, 400.0}) {
        const auto pts = enumerate_strip(s, Interval::half_open(0, 1), Interval::closed(-t, t)).positions();
        const auto e = sampling_quotient(pts, Interval::closed(-0.1, 0.1), 64);
        CHECK(e.lambda_min > 0.05 * 0.2);
    }
}

TEST_CASE("duality experiment verdicts") {
    const auto s = fibonacci_scheme();
    const std::vector<double> ts{50, 100, 200};
    const auto a = duality_experiment(s, Interval::half_open(0, 1), Interval::closed(-0.1, 0.1), ts);
    CHECK(a.verdict == "sampling-stable");
    CHECK(a.dual_interpolation.stable);
    CHECK_FALSE(a.interpolation.stable);
    const auto b = duality_experiment(s, Interval::half_open(0, 1), Interval::closed(-0.35, 0.35), ts);
    CHECK(b.verdict == "interpolation-stable");
    CHECK(b.dual_sampling.stable);
    CHECK_FALSE(b.sampling.stable);
    const LatticeScheme z(Eigen::Matrix2d::Identity());
    const auto c = duality_experiment(z, Interval::half_open(-0.5, 0.5), Interval::closed(-0.5, 0.5), ts);
    CHECK(c.verdict == "inconclusive/critical");
}
