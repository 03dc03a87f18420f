#pragma once

#include "mslab/intervals.hpp"
#include "mslab/scheme.hpp"
#include "mslab/weights.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace mslab {

struct WeightSpec {
    /// indicator | outer_trapezoid | inner_trapezoid | fejer
    std::string kind = "outer_trapezoid";
    /// Centered half-width; ignored when lo < hi is given.
    double w = 1.0;
    double lo = 0.0;
    double hi = 0.0;
    double u = 0.5;
    int n = 8;

    WeightFunction build() const;
    friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

struct RunConfig {
    /// fibonacci | identity | custom
    std::string scheme = "fibonacci";
    Eigen::Matrix2d basis = Eigen::Matrix2d::Identity();
    IntervalSet window = Interval::half_open(0.0, 1.0);
    IntervalSet spectrum = Interval::closed(-0.1, 0.1);
    WeightSpec h;
    WeightSpec g;
    double radius = 200.0;

    double density_t0 = 25.0;
    int density_levels = 10;
    double shift_span = 1000.0;
    int shift_count = 64;
    std::vector<int> fejer_scales{8, 16, 32, 64};

    double bounds_u = 0.25;
    double bounds_v = 0.02;
    double support_fraction = 0.8;

    std::vector<double> truncations{50.0, 100.0, 200.0, 400.0};
    std::size_t n_nodes = 64;
    double concentration = 0.5;
    double node_tolerance = 0.01;
    std::size_t dim_cap = 4000;
    double stability_fraction = 0.05;
    double critical_band = 0.05;

    int sweep_cases = 20;
    double det_min = 0.5;
    double det_max = 2.0;

    std::uint64_t seed = 1;

    LatticeScheme lattice() const;
    /// Checks every numeric field against the module preconditions; throws ConfigError.
    void validate() const;

    friend bool operator==(const RunConfig& a, const RunConfig& b);
};

/// Parses YAML (JSON is accepted as well). Unknown keys raise ConfigError naming the key path.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Canonical YAML with every field spelled out.
std::string serialize_config(const RunConfig& c);

} // namespace mslab
