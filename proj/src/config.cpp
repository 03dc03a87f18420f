#include "mslab/config.hpp"

#include "mslab/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace mslab {

WeightFunction WeightSpec::build() const {
    const bool explicit_interval = lo < hi;
    const Interval iv = explicit_interval ? Interval::closed(lo, hi) : Interval::closed(-w, w);
    if (kind == "indicator") {
        return WeightFunction::indicator(explicit_interval ? Interval::half_open(lo, hi) : Interval::half_open(-w, w));
    }
    if (kind == "outer_trapezoid") {
        return WeightFunction::outer_trapezoid(iv, u);
    }
    if (kind == "inner_trapezoid") {
        return WeightFunction::inner_trapezoid(iv, u);
    }
    if (kind == "fejer") {
        return WeightFunction::fejer_averager(n);
    }
    throw ConfigError("unknown weight kind '" + kind + "'");
}

LatticeScheme RunConfig::lattice() const {
    if (scheme == "fibonacci") {
        return fibonacci_scheme();
    }
    if (scheme == "identity") {
        return LatticeScheme(Eigen::Matrix2d::Identity());
    }
    if (scheme == "custom") {
        return LatticeScheme(basis);
    }
    throw ConfigError("scheme must be fibonacci, identity or custom, got '" + scheme + "'");
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.scheme == b.scheme && a.basis == b.basis && a.window == b.window && a.spectrum == b.spectrum &&
           a.h == b.h && a.g == b.g && a.radius == b.radius && a.density_t0 == b.density_t0 &&
           a.density_levels == b.density_levels && a.shift_span == b.shift_span && a.shift_count == b.shift_count &&
           a.fejer_scales == b.fejer_scales && a.bounds_u == b.bounds_u && a.bounds_v == b.bounds_v &&
           a.support_fraction == b.support_fraction && a.truncations == b.truncations && a.n_nodes == b.n_nodes &&
           a.concentration == b.concentration && a.node_tolerance == b.node_tolerance && a.dim_cap == b.dim_cap &&
           a.stability_fraction == b.stability_fraction && a.critical_band == b.critical_band &&
           a.sweep_cases == b.sweep_cases && a.det_min == b.det_min && a.det_max == b.det_max && a.seed == b.seed;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void check_keys(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed) {
    if (!node.IsMap()) {
        fail(path.empty() ? "<root>" : path, "expected a mapping");
    }
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            fail(path.empty() ? key : path + "." + key, "unknown key");
        }
    }
}

template <class T>
T scalar(const YAML::Node& node, const std::string& path) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        fail(path, "has the wrong type");
    }
}

template <class T>
void read(const YAML::Node& parent, const std::string& key, const std::string& path, T& out) {
    if (const YAML::Node n = parent[key]) {
        out = scalar<T>(n, path.empty() ? key : path + "." + key);
    }
}

template <class T>
void read_list(const YAML::Node& parent, const std::string& key, const std::string& path, std::vector<T>& out) {
    if (const YAML::Node n = parent[key]) {
        const std::string p = path.empty() ? key : path + "." + key;
        if (!n.IsSequence()) {
            fail(p, "expected a list");
        }
        out.clear();
        for (std::size_t i = 0; i < n.size(); ++i) {
            out.push_back(scalar<T>(n[i], p + "[" + std::to_string(i) + "]"));
        }
    }
}

// An interval is either [lo, hi] (half-open) or {lo, hi, lo_closed, hi_closed}.
Interval read_interval(const YAML::Node& n, const std::string& path) {
    if (n.IsSequence()) {
        if (n.size() != 2) {
            fail(path, "expected [lo, hi]");
        }
        try {
            return Interval::half_open(scalar<double>(n[0], path + "[0]"), scalar<double>(n[1], path + "[1]"));
        } catch (const InvalidInterval& e) {
            fail(path, e.what());
        }
    }
    check_keys(n, path, {"lo", "hi", "lo_closed", "hi_closed"});
    if (!n["lo"] || !n["hi"]) {
        fail(path, "needs lo and hi");
    }
    bool lc = true;
    bool hc = false;
    read(n, "lo_closed", path, lc);
    read(n, "hi_closed", path, hc);
    try {
        return Interval(scalar<double>(n["lo"], path + ".lo"), scalar<double>(n["hi"], path + ".hi"), lc, hc);
    } catch (const InvalidInterval& e) {
        fail(path, e.what());
    }
}

// A set is a single interval or a list of intervals in either form.
IntervalSet read_set(const YAML::Node& n, const std::string& path) {
    if (n.IsSequence() && n.size() > 0 && !n[0].IsScalar()) {
        std::vector<Interval> parts;
        for (std::size_t i = 0; i < n.size(); ++i) {
            parts.push_back(read_interval(n[i], path + "[" + std::to_string(i) + "]"));
        }
        return IntervalSet::normalize(parts);
    }
    return IntervalSet(read_interval(n, path));
}

WeightSpec read_weight(const YAML::Node& n, const std::string& path) {
    check_keys(n, path, {"kind", "w", "lo", "hi", "u", "n"});
    WeightSpec w;
    read(n, "kind", path, w.kind);
    read(n, "w", path, w.w);
    read(n, "lo", path, w.lo);
    read(n, "hi", path, w.hi);
    read(n, "u", path, w.u);
    read(n, "n", path, w.n);
    return w;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    // Keep doubles recognizable as floats.
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

void emit_set(YAML::Emitter& out, const IntervalSet& s) {
    out << YAML::BeginSeq;
    for (const auto& p : s.parts()) {
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "lo" << YAML::Value << num(p.lo) << YAML::Key << "hi"
            << YAML::Value << num(p.hi) << YAML::Key << "lo_closed" << YAML::Value << p.lo_closed << YAML::Key
            << "hi_closed" << YAML::Value << p.hi_closed << YAML::EndMap;
    }
    out << YAML::EndSeq;
}

void emit_weight(YAML::Emitter& out, const WeightSpec& w) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << w.kind << YAML::Key << "w"
        << YAML::Value << num(w.w) << YAML::Key << "lo" << YAML::Value << num(w.lo) << YAML::Key << "hi"
        << YAML::Value << num(w.hi) << YAML::Key << "u" << YAML::Value << num(w.u) << YAML::Key << "n"
        << YAML::Value << w.n << YAML::EndMap;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config does not parse: ") + e.what());
    }
    RunConfig c;
    if (root.IsNull()) {
        return c;
    }
    check_keys(root, "", {"scheme", "window", "spectrum", "weights", "radius", "density", "bounds", "frames",
                          "sweep", "seed"});
    if (const YAML::Node s = root["scheme"]) {
        if (s.IsScalar()) {
            c.scheme = scalar<std::string>(s, "scheme");
        } else {
            check_keys(s, "scheme", {"preset", "basis"});
            read(s, "preset", "scheme", c.scheme);
            if (const YAML::Node b = s["basis"]) {
                if (!b.IsSequence() || b.size() != 2 || !b[0].IsSequence() || !b[1].IsSequence() || b[0].size() != 2 ||
                    b[1].size() != 2) {
                    fail("scheme.basis", "expected [[a, b], [c, d]]");
                }
                for (int i = 0; i < 2; ++i) {
                    for (int j = 0; j < 2; ++j) {
                        c.basis(i, j) = scalar<double>(b[i][j], "scheme.basis[" + std::to_string(i) + "][" +
                                                                    std::to_string(j) + "]");
                    }
                }
                if (!s["preset"]) {
                    c.scheme = "custom";
                } else if (c.scheme != "custom") {
                    fail("scheme.basis", "only allowed with preset custom");
                }
            }
        }
    }
    if (const YAML::Node n = root["window"]) {
        c.window = read_set(n, "window");
    }
    if (const YAML::Node n = root["spectrum"]) {
        c.spectrum = read_set(n, "spectrum");
    }
    if (const YAML::Node n = root["weights"]) {
        check_keys(n, "weights", {"h", "g"});
        if (n["h"]) {
            c.h = read_weight(n["h"], "weights.h");
        }
        if (n["g"]) {
            c.g = read_weight(n["g"], "weights.g");
        }
    }
    read(root, "radius", "", c.radius);
    if (const YAML::Node n = root["density"]) {
        check_keys(n, "density", {"t0", "levels", "shift_span", "shift_count", "fejer_scales"});
        read(n, "t0", "density", c.density_t0);
        read(n, "levels", "density", c.density_levels);
        read(n, "shift_span", "density", c.shift_span);
        read(n, "shift_count", "density", c.shift_count);
        read_list(n, "fejer_scales", "density", c.fejer_scales);
    }
    if (const YAML::Node n = root["bounds"]) {
        check_keys(n, "bounds", {"u", "v", "support_fraction"});
        read(n, "u", "bounds", c.bounds_u);
        read(n, "v", "bounds", c.bounds_v);
        read(n, "support_fraction", "bounds", c.support_fraction);
    }
    if (const YAML::Node n = root["frames"]) {
        check_keys(n, "frames", {"truncations", "n_nodes", "concentration", "tolerance", "dim_cap",
                                 "stability_fraction", "critical_band"});
        read_list(n, "truncations", "frames", c.truncations);
        read(n, "n_nodes", "frames", c.n_nodes);
        read(n, "concentration", "frames", c.concentration);
        read(n, "tolerance", "frames", c.node_tolerance);
        read(n, "dim_cap", "frames", c.dim_cap);
        read(n, "stability_fraction", "frames", c.stability_fraction);
        read(n, "critical_band", "frames", c.critical_band);
    }
    if (const YAML::Node n = root["sweep"]) {
        check_keys(n, "sweep", {"cases", "det_min", "det_max"});
        read(n, "cases", "sweep", c.sweep_cases);
        read(n, "det_min", "sweep", c.det_min);
        read(n, "det_max", "sweep", c.det_max);
    }
    read(root, "seed", "", c.seed);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "scheme" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "preset" << YAML::Value << c.scheme;
    if (c.scheme == "custom") {
        out << YAML::Key << "basis" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (int i = 0; i < 2; ++i) {
            out << YAML::Flow << YAML::BeginSeq << num(c.basis(i, 0)) << num(c.basis(i, 1)) << YAML::EndSeq;
        }
        out << YAML::EndSeq;
    }
    out << YAML::EndMap;
    out << YAML::Key << "window" << YAML::Value;
    emit_set(out, c.window);
    out << YAML::Key << "spectrum" << YAML::Value;
    emit_set(out, c.spectrum);
    out << YAML::Key << "weights" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "h" << YAML::Value;
    emit_weight(out, c.h);
    out << YAML::Key << "g" << YAML::Value;
    emit_weight(out, c.g);
    out << YAML::EndMap;
    out << YAML::Key << "radius" << YAML::Value << num(c.radius);
    out << YAML::Key << "density" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "t0" << YAML::Value << num(c.density_t0);
    out << YAML::Key << "levels" << YAML::Value << c.density_levels;
    out << YAML::Key << "shift_span" << YAML::Value << num(c.shift_span);
    out << YAML::Key << "shift_count" << YAML::Value << c.shift_count;
    out << YAML::Key << "fejer_scales" << YAML::Value << YAML::Flow << c.fejer_scales;
    out << YAML::EndMap;
    out << YAML::Key << "bounds" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "u" << YAML::Value << num(c.bounds_u);
    out << YAML::Key << "v" << YAML::Value << num(c.bounds_v);
    out << YAML::Key << "support_fraction" << YAML::Value << num(c.support_fraction);
    out << YAML::EndMap;
    out << YAML::Key << "frames" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "truncations" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double t : c.truncations) {
        out << num(t);
    }
    out << YAML::EndSeq;
    out << YAML::Key << "n_nodes" << YAML::Value << c.n_nodes;
    out << YAML::Key << "concentration" << YAML::Value << num(c.concentration);
    out << YAML::Key << "tolerance" << YAML::Value << num(c.node_tolerance);
    out << YAML::Key << "dim_cap" << YAML::Value << c.dim_cap;
    out << YAML::Key << "stability_fraction" << YAML::Value << num(c.stability_fraction);
    out << YAML::Key << "critical_band" << YAML::Value << num(c.critical_band);
    out << YAML::EndMap;
    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "cases" << YAML::Value << c.sweep_cases;
    out << YAML::Key << "det_min" << YAML::Value << num(c.det_min);
    out << YAML::Key << "det_max" << YAML::Value << num(c.det_max);
    out << YAML::EndMap;
    out << YAML::Key << "seed" << YAML::Value << c.seed;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

void RunConfig::validate() const {
    auto positive = [](double x, const char* path) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            fail(path, "must be positive and finite");
        }
    };
    try {
        (void)lattice();
    } catch (const SingularLattice& e) {
        fail("scheme.basis", e.what());
    }
    if (window.empty()) {
        fail("window", "must be nonempty");
    }
    if (spectrum.empty()) {
        fail("spectrum", "must be nonempty");
    }
    for (const auto* w : {&h, &g}) {
        const char* path = w == &h ? "weights.h" : "weights.g";
        try {
            (void)w->build();
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }
    positive(radius, "radius");
    positive(density_t0, "density.t0");
    if (density_levels < 0 || density_levels > 30) {
        fail("density.levels", "must lie in [0, 30]");
    }
    positive(shift_span, "density.shift_span");
    if (shift_count < 1) {
        fail("density.shift_count", "must be >= 1");
    }
    for (int n : fejer_scales) {
        if (n < 1) {
            fail("density.fejer_scales", "entries must be >= 1");
        }
    }
    positive(bounds_u, "bounds.u");
    positive(bounds_v, "bounds.v");
    if (!(support_fraction > 0.0 && support_fraction <= 1.0)) {
        fail("bounds.support_fraction", "must lie in (0, 1]");
    }
    if (truncations.size() < 3) {
        fail("frames.truncations", "needs at least three levels");
    }
    for (double t : truncations) {
        positive(t, "frames.truncations");
    }
    if (n_nodes < 8) {
        fail("frames.n_nodes", "must be >= 8");
    }
    positive(concentration, "frames.concentration");
    positive(node_tolerance, "frames.tolerance");
    if (dim_cap < 1) {
        fail("frames.dim_cap", "must be >= 1");
    }
    positive(stability_fraction, "frames.stability_fraction");
    if (!(critical_band >= 0.0)) {
        fail("frames.critical_band", "must be >= 0");
    }
    if (sweep_cases < 1) {
        fail("sweep.cases", "must be >= 1");
    }
    positive(det_min, "sweep.det_min");
    if (!(det_max >= det_min)) {
        fail("sweep.det_max", "must be >= det_min");
    }
}

} // namespace mslab
