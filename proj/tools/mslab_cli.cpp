// Batch front end: one subcommand per experiment, outputs under --out.

#include "mslab/bounds.hpp"
#include "mslab/combs.hpp"
#include "mslab/config.hpp"
#include "mslab/density.hpp"
#include "mslab/errors.hpp"
#include "mslab/frames.hpp"
#include "mslab/scheme.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace mslab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitContract = 2;

struct Options {
    std::string config_path;
    std::string out_dir = "out";
    double radius = 0.0;
    bool radius_set = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string format = "csv";
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_atomic(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
    std::cout << path.string() << "\n";
}

void write_json(const fs::path& path, const json& j) { write_atomic(path, j.dump(2) + "\n"); }

class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void row(std::vector<json> values) { rows_.push_back(std::move(values)); }

    std::string csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            os << (i ? "," : "") << columns_[i];
        }
        os << "\n";
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                os << (i ? "," : "");
                const json& v = r[i];
                if (v.is_number_float()) {
                    os << num(v.get<double>());
                } else if (v.is_string()) {
                    os << v.get<std::string>();
                } else {
                    os << v.dump();
                }
            }
            os << "\n";
        }
        return os.str();
    }

    json to_json() const {
        json arr = json::array();
        for (const auto& r : rows_) {
            json obj = json::object();
            for (std::size_t i = 0; i < r.size(); ++i) {
                obj[columns_[i]] = r[i];
            }
            arr.push_back(obj);
        }
        return arr;
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<json>> rows_;
};

void write_table(const Options& o, const std::string& stem, const Table& t) {
    if (o.format == "json") {
        write_json(fs::path(o.out_dir) / (stem + ".json"), t.to_json());
    } else {
        write_atomic(fs::path(o.out_dir) / (stem + ".csv"), t.csv());
    }
}

json interval_set_json(const IntervalSet& s) {
    json arr = json::array();
    for (const auto& p : s.parts()) {
        arr.push_back({{"lo", p.lo}, {"hi", p.hi}, {"lo_closed", p.lo_closed}, {"hi_closed", p.hi_closed}});
    }
    return arr;
}

json scheme_json(const LatticeScheme& s) {
    const auto& b = s.basis();
    return {{"basis", {{b(0, 0), b(0, 1)}, {b(1, 0), b(1, 1)}}}, {"density", s.density()}};
}

std::vector<double> positions_in(const LatticeScheme& s, const IntervalSet& w, double t) {
    return enumerate_strip(s, w, Interval::closed(-t, t)).positions();
}

// ---- subcommands -------------------------------------------------------

int run_gen(const RunConfig& c, const Options& o) {
    const LatticeScheme s = c.lattice();
    ProjectionSet ps = enumerate_strip(s, c.window, Interval::closed(-c.radius, c.radius));
    std::sort(ps.points.begin(), ps.points.end(), [](const ProjectedPoint& a, const ProjectedPoint& b) {
        return a.g_coord != b.g_coord ? a.g_coord < b.g_coord : a.h_coord < b.h_coord;
    });
    Table t({"n", "m", "g_coord", "h_coord"});
    for (const auto& p : ps.points) {
        t.row({p.n, p.m, p.g_coord, p.h_coord});
    }
    write_table(o, "points", t);
    return kExitOk;
}

int run_density(const RunConfig& c, const Options& o) {
    const LatticeScheme s = c.lattice();
    VanHoveSeq seq = VanHoveSeq::geometric(c.density_t0, c.density_levels);
    seq.shift_span = c.shift_span;
    seq.shift_count = c.shift_count;
    const DensityReport r = model_set_density(s, c.window, seq);

    Table t({"n", "T_n", "inf_count", "sup_count", "lower_est", "upper_est"});
    for (const auto& l : r.levels) {
        t.row({l.n, l.half_width, l.inf_count, l.sup_count, l.lower_est, l.upper_est});
    }
    write_table(o, "density", t);

    // Fejér-smoothed density of Λ_W over the same shift grid.
    const WeightFunction h = WeightFunction::indicator(c.window);
    json smooth = json::array();
    for (int n : c.fejer_scales) {
        double lo = 0.0;
        double hi = 0.0;
        double worst = 0.0;
        bool first = true;
        for (double shift : seq.shifts()) {
            const double v = smooth_density(s, h, n, shift).value.real();
            lo = first ? v : std::min(lo, v);
            hi = first ? v : std::max(hi, v);
            worst = std::max(worst, std::abs(v - r.predicted));
            first = false;
        }
        smooth.push_back({{"n", n}, {"min", lo}, {"max", hi}, {"max_abs_error", worst}});
    }

    json summary = {{"scheme", scheme_json(s)},
                    {"window", interval_set_json(c.window)},
                    {"predicted", r.predicted},
                    {"lower", r.lower},
                    {"upper", r.upper},
                    {"relative_error", r.relative_error},
                    {"shift_spread", r.shift_spread},
                    {"shift_count", seq.shift_count},
                    {"shift_span", seq.shift_span},
                    {"smooth", smooth}};
    write_json(fs::path(o.out_dir) / "density_summary.json", summary);
    return kExitOk;
}

int run_psf(const RunConfig& c, const Options& o) {
    const LatticeScheme s = c.lattice();
    const PsfResidual r = psf_residual(s, c.h.build(), c.g.build(), c.radius);
    const double tails = r.lhs.tail_bound + r.rhs.tail_bound;
    json j = {{"lhs", r.lhs.value.real()},
              {"lhs_imag", r.lhs.value.imag()},
              {"rhs", r.rhs.value.real()},
              {"rhs_imag", r.rhs.value.imag()},
              {"residual", r.residual},
              {"tails", tails},
              {"rounding", r.lhs.rounding_bound + r.rhs.rounding_bound},
              {"allowance", r.allowance},
              {"within_contract", r.within_contract},
              {"radius", c.radius},
              {"terms", r.lhs.n_terms + r.rhs.n_terms},
              {"scheme", scheme_json(s)}};
    write_json(fs::path(o.out_dir) / "psf.json", j);
    if (!r.within_contract) {
        std::cerr << "contract violation: PSF residual " << num(r.residual) << " exceeds allowance "
                  << num(r.allowance) << "\n";
        return kExitContract;
    }
    return kExitOk;
}

json certificate_json(const BoundCertificate& b) {
    return {{"kind", to_string(b.kind)},
            {"value", b.value},
            {"positive", b.positive},
            {"ingredients", b.ingredients},
            {"warnings", b.warnings}};
}

int run_bounds(const RunConfig& c, const Options& o) {
    const LatticeScheme s = c.lattice();
    json certs = json::array();
    certs.push_back(certificate_json(sampling_upper(s, c.window, c.spectrum, c.bounds_u, c.radius)));
    certs.push_back(certificate_json(sampling_lower(s, c.spectrum, c.window, c.bounds_u, c.radius)));
    try {
        certs.push_back(certificate_json(interp_upper(s, c.window, c.spectrum, c.support_fraction)));
    } catch (const NotUniformlyDiscrete& e) {
        certs.push_back({{"kind", to_string(BoundCertificate::Kind::InterpUpper)}, {"error", e.what()}});
    }
    certs.push_back(certificate_json(interp_lower(s, c.window, c.spectrum, c.bounds_v, c.radius)));
    json j = {{"scheme", scheme_json(s)},
              {"window", interval_set_json(c.window)},
              {"spectrum", interval_set_json(c.spectrum)},
              {"certificates", certs}};
    write_json(fs::path(o.out_dir) / "bounds.json", j);
    return kExitOk;
}

int run_frame(const RunConfig& c, const Options& o) {
    const LatticeScheme s = c.lattice();
    const double tmax = *std::max_element(c.truncations.begin(), c.truncations.end());
    const std::vector<double> pts = positions_in(s, c.window, tmax);
    const FrameEstimate gram = gram_trace(pts, c.spectrum, c.truncations, c.dim_cap);

    SamplingOptions so;
    so.concentration = c.concentration;
    so.tolerance = c.node_tolerance;
    so.dim_cap = c.dim_cap;

    Table t({"T", "dim", "gram_min", "gram_max", "quotient_min", "quotient_max", "subspace_dim", "n_nodes"});
    json levels = json::array();
    for (std::size_t i = 0; i < c.truncations.size(); ++i) {
        const double tr = c.truncations[i];
        std::vector<double> inside;
        for (double p : pts) {
            if (std::abs(p) <= tr) {
                inside.push_back(p);
            }
        }
        const SamplingQuotientEstimate q = sampling_quotient(inside, c.spectrum, c.n_nodes, so);
        const TracePoint& g = gram.monotone_trace[i];
        t.row({tr, g.dim, g.lambda_min, g.lambda_max, q.lambda_min, q.lambda_max, q.subspace_dim, q.n_nodes});
        levels.push_back({{"T", tr},
                          {"dim", g.dim},
                          {"gram_min", g.lambda_min},
                          {"gram_max", g.lambda_max},
                          {"quotient_min", q.lambda_min},
                          {"quotient_max", q.lambda_max},
                          {"subspace_dim", q.subspace_dim},
                          {"n_nodes", q.n_nodes},
                          {"refinements", q.refinements}});
    }
    write_table(o, "frame_trace", t);
    json j = {{"scheme", scheme_json(s)},
              {"window", interval_set_json(c.window)},
              {"spectrum", interval_set_json(c.spectrum)},
              {"levels", levels}};
    write_json(fs::path(o.out_dir) / "frame.json", j);
    return kExitOk;
}

json trace_json(const StabilityTrace& st) {
    json lv = json::array();
    for (const auto& p : st.levels) {
        lv.push_back({{"T", p.truncation}, {"dim", p.dim}, {"lambda_min", p.lambda_min}, {"lambda_max", p.lambda_max}});
    }
    return {{"threshold", st.threshold}, {"stable", st.stable}, {"levels", lv}};
}

int run_duality(const RunConfig& c, const Options& o) {
    const LatticeScheme s = c.lattice();
    DualityOptions opt;
    opt.stability_fraction = c.stability_fraction;
    opt.critical_band = c.critical_band;
    opt.n_nodes = c.n_nodes;
    opt.sampling.concentration = c.concentration;
    opt.sampling.tolerance = c.node_tolerance;
    opt.sampling.dim_cap = c.dim_cap;
    const DualityReport r = duality_experiment(s, c.window.hull(), c.spectrum, c.truncations, opt);

    json verdicts = {{"model_set_sampling", r.sampling.stable},
                     {"model_set_interpolation", r.interpolation.stable},
                     {"dual_sampling", r.dual_sampling.stable},
                     {"dual_interpolation", r.dual_interpolation.stable}};
    json j = {{"scheme", scheme_json(s)},
              {"window", interval_set_json(IntervalSet(c.window.hull()))},
              {"spectrum", interval_set_json(c.spectrum)},
              {"model_density", r.model_density},
              {"spectrum_measure", r.spectrum_measure},
              {"dual_density", r.dual_density},
              {"window_measure", r.window_measure},
              {"regime", r.regime},
              {"verdict", r.verdict},
              {"consistent", r.consistent},
              {"stability_table", verdicts},
              {"traces",
               {{"model_set_sampling", trace_json(r.sampling)},
                {"model_set_interpolation", trace_json(r.interpolation)},
                {"dual_sampling", trace_json(r.dual_sampling)},
                {"dual_interpolation", trace_json(r.dual_interpolation)}}}};
    write_json(fs::path(o.out_dir) / "duality.json", j);

    Table t({"side", "T", "dim", "lambda_min", "lambda_max"});
    const std::pair<const char*, const StabilityTrace*> sides[] = {{"model_set_sampling", &r.sampling},
                                                                   {"model_set_interpolation", &r.interpolation},
                                                                   {"dual_sampling", &r.dual_sampling},
                                                                   {"dual_interpolation", &r.dual_interpolation}};
    for (const auto& [name, st] : sides) {
        for (const auto& p : st->levels) {
            t.row({name, p.truncation, p.dim, p.lambda_min, p.lambda_max});
        }
    }
    write_table(o, "duality_trace", t);
    return kExitOk;
}

int run_sweep(const RunConfig& c, const Options& o) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> entry(-2.0, 2.0);
    const WeightFunction h = c.h.build();
    const WeightFunction g = c.g.build();

    Table t({"case", "a", "b", "c", "d", "det", "density_product", "lhs", "rhs", "residual", "allowance", "within"});
    int violations = 0;
    for (int i = 0; i < c.sweep_cases; ++i) {
        Eigen::Matrix2d m;
        double det = 0.0;
        do {
            m << entry(rng), entry(rng), entry(rng), entry(rng);
            det = std::abs(m.determinant());
        } while (det < c.det_min || det > c.det_max);
        const LatticeScheme s(m);
        const double product = s.density() * annihilator(s).density();
        const PsfResidual r = psf_residual(s, h, g, c.radius);
        const bool ok = r.within_contract && std::abs(product - 1.0) <= 1e-12;
        violations += ok ? 0 : 1;
        t.row({i, m(0, 0), m(0, 1), m(1, 0), m(1, 1), det, product, r.lhs.value.real(), r.rhs.value.real(), r.residual,
               r.allowance, ok ? 1 : 0});
    }
    write_table(o, "sweep", t);
    write_json(fs::path(o.out_dir) / "sweep_summary.json",
               {{"cases", c.sweep_cases}, {"violations", violations}, {"seed", c.seed}, {"radius", c.radius}});
    if (violations > 0) {
        std::cerr << "contract violation: " << violations << " sweep case(s) failed\n";
        return kExitContract;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model-set sampling and interpolation experiments"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    Options o;
    bool print_config = false;
    app.add_option("--config", o.config_path, "YAML or JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    auto* radius = app.add_option("--radius", o.radius, "Truncation radius R (overrides config)");
    auto* seed = app.add_option("--seed", o.seed, "Seed for the randomized sweep (overrides config)");
    app.add_option("--format", o.format, "Format of tabular outputs; summaries are always JSON")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_flag("--print-config", print_config, "Print the resolved configuration as canonical YAML and exit");

    const std::pair<const char*, const char*> subs[] = {
        {"gen", "Points of the model set inside [-R, R] (points.csv: n,m,g_coord,h_coord)"},
        {"density", "Counting densities over a van Hove sequence and Fejér-smoothed densities"},
        {"psf-check", "Both sides of the Poisson summation formula for the configured weights (psf.json)"},
        {"bounds", "Sampling and interpolation certificates with all ingredients (bounds.json)"},
        {"frame", "Gram and sampling-quotient extremes per truncation level (frame.json, frame_trace)"},
        {"duality", "Sampling/interpolation duality experiment (duality.json, duality_trace)"},
        {"sweep", "Randomized Poisson summation sweep over random lattices (sweep, sweep_summary.json)"},
    };
    for (const auto& [name, desc] : subs) {
        app.add_subcommand(name, desc);
    }

    const RunConfig defaults;
    app.footer("Configuration keys and defaults (print with --print-config):\n\n" + serialize_config(defaults) +
               "\nExit codes: 0 success, 1 invalid input or configuration, 2 numerical contract violated.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }
    o.radius_set = radius->count() > 0;
    o.seed_set = seed->count() > 0;

    try {
        RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
        if (o.radius_set) {
            c.radius = o.radius;
        }
        if (o.seed_set) {
            c.seed = o.seed;
        }
        c.validate();
        if (print_config) {
            std::cout << serialize_config(c);
            return kExitOk;
        }
        const auto chosen = app.get_subcommands();
        if (chosen.empty()) {
            std::cerr << "a subcommand is required; see --help\n";
            return kExitInvalid;
        }
        const std::string cmd = chosen.front()->get_name();
        write_atomic(fs::path(o.out_dir) / "config.yaml", serialize_config(c));
        if (cmd == "gen") {
            return run_gen(c, o);
        }
        if (cmd == "density") {
            return run_density(c, o);
        }
        if (cmd == "psf-check") {
            return run_psf(c, o);
        }
        if (cmd == "bounds") {
            return run_bounds(c, o);
        }
        if (cmd == "frame") {
            return run_frame(c, o);
        }
        if (cmd == "duality") {
            return run_duality(c, o);
        }
        return run_sweep(c, o);
    } catch (const mslab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
