#include "mslab/frames.hpp"

#include "mslab/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace mslab {

using std::numbers::pi;

GramMatrix interpolation_gram(const std::vector<double>& points, const IntervalSet& k) {
    std::vector<double> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DuplicateNode("Gram matrix needs distinct points");
    }
    const auto n = static_cast<Eigen::Index>(points.size());
    GramMatrix g;
    g.points = points;
    g.spectrum = k;
    g.entries.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        g.entries(j, j) = k.measure();
        for (Eigen::Index l = 0; l < j; ++l) {
            const std::complex<double> v = indicator_fourier(k, points[j] - points[l]);
            g.entries(j, l) = v;
            g.entries(l, j) = std::conj(v);
        }
    }
    return g;
}

FrameEstimate eig_extremes(const Eigen::MatrixXcd& h, std::size_t dim_cap) {
    const auto n = static_cast<std::size_t>(h.rows());
    if (n == 0 || h.cols() != h.rows()) {
        throw InvalidWindow("eigenvalue extremes need a nonempty square matrix");
    }
    if (n > dim_cap) {
        std::ostringstream msg;
        msg << "matrix dimension " << n << " exceeds the cap " << dim_cap;
        throw TooLarge(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    FrameEstimate f;
    f.lambda_min = es.eigenvalues()(0);
    f.lambda_max = es.eigenvalues()(static_cast<Eigen::Index>(n) - 1);
    f.dim = n;
    return f;
}

FrameEstimate eig_extremes(const GramMatrix& g, std::size_t dim_cap) { return eig_extremes(g.entries, dim_cap); }

namespace {

std::vector<double> within(const std::vector<double>& points, double t) {
    std::vector<double> out;
    for (double p : points) {
        if (-t <= p && p <= t) {
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

FrameEstimate gram_trace(const std::vector<double>& points, const IntervalSet& k, const std::vector<double>& truncations,
                         std::size_t dim_cap) {
    FrameEstimate out;
    std::vector<double> ts = truncations;
    std::sort(ts.begin(), ts.end());
    for (double t : ts) {
        const std::vector<double> sub = within(points, t);
        if (sub.empty()) {
            continue;
        }
        FrameEstimate f = eig_extremes(interpolation_gram(sub, k), dim_cap);
        out.lambda_min = f.lambda_min;
        out.lambda_max = f.lambda_max;
        out.dim = f.dim;
        out.truncation = t;
        out.monotone_trace.push_back({f.dim, t, f.lambda_min, f.lambda_max});
    }
    return out;
}

namespace {

struct Discretization {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    // Basis values: nodes x modes.
    Eigen::MatrixXd basis;
};

using Gauss32 = boost::math::quadrature::gauss<double, 32>;

// Gauss-Legendre panels on every part of K with the sine modes sampled at the nodes.
Discretization discretize(const IntervalSet& k, const std::vector<int>& modes, const std::vector<int>& panels) {
    const auto& absc = Gauss32::abscissa();
    const auto& wts = Gauss32::weights();
    std::vector<double> xs;
    std::vector<double> ws;
    std::vector<std::size_t> owner;
    for (std::size_t p = 0; p < k.size(); ++p) {
        const Interval& part = k.parts()[p];
        const double h = part.length() / panels[p];
        for (int q = 0; q < panels[p]; ++q) {
            const double c = part.lo + (q + 0.5) * h;
            const double r = 0.5 * h;
            // Boost stores the nonnegative half of the symmetric rule.
            for (std::size_t i = 0; i < absc.size(); ++i) {
                xs.push_back(c + r * absc[i]);
                ws.push_back(r * wts[i]);
                owner.push_back(p);
                if (absc[i] != 0.0) {
                    xs.push_back(c - r * absc[i]);
                    ws.push_back(r * wts[i]);
                    owner.push_back(p);
                }
            }
        }
    }
    int total = 0;
    std::vector<int> offset;
    for (int m : modes) {
        offset.push_back(total);
        total += m;
    }
    Discretization d;
    const auto nq = static_cast<Eigen::Index>(xs.size());
    d.nodes = Eigen::Map<Eigen::VectorXd>(xs.data(), nq);
    d.weights = Eigen::Map<Eigen::VectorXd>(ws.data(), nq);
    d.basis = Eigen::MatrixXd::Zero(nq, total);
    for (Eigen::Index q = 0; q < nq; ++q) {
        const std::size_t p = owner[q];
        const Interval& part = k.parts()[p];
        for (int j = 1; j <= modes[p]; ++j) {
            d.basis(q, offset[p] + j - 1) = std::sin(j * pi * (xs[q] - part.lo) / part.length());
        }
    }
    return d;
}

struct RitzPair {
    double lo;
    double hi;
};

RitzPair ritz_extremes(const std::vector<double>& pts, const Discretization& d) {
    const Eigen::MatrixXd wb = d.weights.asDiagonal() * d.basis;
    const Eigen::MatrixXd mass = d.basis.transpose() * wb;
    const auto n = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXcd e(n, d.nodes.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index q = 0; q < d.nodes.size(); ++q) {
            e(i, q) = std::polar(1.0, 2.0 * pi * pts[i] * d.nodes(q));
        }
    }
    const Eigen::MatrixXcd f = e * wb.cast<std::complex<double>>();
    const Eigen::MatrixXcd a = f.adjoint() * f;

    // The exact mass matrix is diagonal and well conditioned; anything else means bad quadrature.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ms(mass, Eigen::EigenvaluesOnly);
    const double mmin = ms.eigenvalues().minCoeff();
    const double mmax = ms.eigenvalues().maxCoeff();
    if (!(mmin > 0.0) || mmax / mmin > 1e8) {
        std::ostringstream msg;
        msg << "mass matrix is ill-conditioned (eigenvalues " << mmin << ", " << mmax << ")";
        throw QuadratureError(msg.str());
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(a, mass.cast<std::complex<double>>(),
                                                                   Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    if (ges.info() != Eigen::Success) {
        throw QuadratureError("generalized eigensolver failed");
    }
    const auto& ev = ges.eigenvalues();
    return {ev(0), ev(ev.size() - 1)};
}

} // namespace

SamplingQuotientEstimate sampling_quotient(const std::vector<double>& points, const IntervalSet& k,
                                           std::size_t n_nodes, const SamplingOptions& opt) {
    if (k.empty() || !(k.measure() > 0.0)) {
        throw InvalidWindow("sampling quotient needs a spectrum of positive measure");
    }
    if (points.empty()) {
        throw InvalidWindow("sampling quotient needs at least one point");
    }
    double t = 0.0;
    for (double p : points) {
        t = std::max(t, std::abs(p));
    }
    t = std::max(t, 1.0);

    std::vector<int> modes;
    std::vector<int> panels;
    std::size_t dim = 0;
    for (const auto& part : k.parts()) {
        const int m = std::max(1, static_cast<int>(std::lround(2.0 * opt.concentration * t * part.length())));
        modes.push_back(m);
        dim += static_cast<std::size_t>(m);
        // About eight oscillations per 32-point panel, and at least the requested share of nodes.
        const double cycles = (t + 0.5 * m / part.length()) * part.length();
        const double share = static_cast<double>(n_nodes) * part.length() / k.measure() / 64.0;
        panels.push_back(std::max({1, static_cast<int>(std::ceil(cycles / 8.0)), static_cast<int>(std::ceil(share))}));
    }
    if (dim > opt.dim_cap) {
        std::ostringstream msg;
        msg << "subspace dimension " << dim << " exceeds the cap " << opt.dim_cap;
        throw TooLarge(msg.str());
    }

    SamplingQuotientEstimate est;
    est.subspace_dim = dim;
    est.n_points = points.size();
    est.truncation = t;
    RitzPair prev{0.0, 0.0};
    for (int r = 0; r <= opt.max_refinements; ++r) {
        const Discretization d = discretize(k, modes, panels);
        const RitzPair cur = ritz_extremes(points, d);
        est.lambda_min = cur.lo;
        est.lambda_max = cur.hi;
        est.n_nodes = static_cast<std::size_t>(d.nodes.size());
        est.refinements = r;
        if (r > 0) {
            const double scale = std::max(std::abs(cur.hi), 1e-300);
            const bool lo_ok = std::abs(cur.lo - prev.lo) <= opt.tolerance * std::max(std::abs(cur.lo), 1e-3 * scale);
            const bool hi_ok = std::abs(cur.hi - prev.hi) <= opt.tolerance * scale;
            if (lo_ok && hi_ok) {
                break;
            }
        }
        prev = cur;
        for (int& p : panels) {
            p *= 2;
        }
    }
    return est;
}

namespace {

StabilityTrace finish(std::vector<TracePoint> levels, double threshold) {
    StabilityTrace s;
    s.levels = std::move(levels);
    s.threshold = threshold;
    s.stable = s.levels.size() >= 3 && std::all_of(s.levels.begin(), s.levels.end(), [&](const TracePoint& p) {
                   return p.lambda_min >= threshold;
               });
    return s;
}

StabilityTrace sampling_trace(const std::vector<double>& points, const IntervalSet& spectrum,
                              const std::vector<double>& truncations, const DualityOptions& opt) {
    std::vector<TracePoint> levels;
    for (double t : truncations) {
        const std::vector<double> sub = within(points, t);
        if (sub.empty()) {
            continue;
        }
        const SamplingQuotientEstimate e = sampling_quotient(sub, spectrum, opt.n_nodes, opt.sampling);
        levels.push_back({sub.size(), t, e.lambda_min, e.lambda_max});
    }
    return finish(std::move(levels), opt.stability_fraction * spectrum.measure());
}

StabilityTrace gram_stability(const std::vector<double>& points, const IntervalSet& spectrum,
                              const std::vector<double>& truncations, const DualityOptions& opt) {
    const FrameEstimate f = gram_trace(points, spectrum, truncations, opt.sampling.dim_cap);
    return finish(f.monotone_trace, opt.stability_fraction * spectrum.measure());
}

} // namespace

DualityReport duality_experiment(const LatticeScheme& s, const Interval& w, const IntervalSet& k,
                                 const std::vector<double>& truncations, const DualityOptions& opt) {
    if (w.empty() || k.empty()) {
        throw InvalidWindow("duality experiment needs a nonempty window and spectrum");
    }
    std::vector<double> ts = truncations;
    std::sort(ts.begin(), ts.end());
    if (ts.size() < 3) {
        throw InvalidWindow("duality experiment needs at least three truncation levels");
    }
    const double t_max = ts.back();
    const IntervalSet wset(w);
    DualityReport rep;
    rep.window_measure = w.length();
    rep.model_density = s.density() * w.length();
    rep.spectrum_measure = k.measure();
    rep.dual_density = annihilator(s).density() * k.measure();

    const std::vector<double> lw = enumerate_strip(s, wset, Interval::closed(-t_max, t_max)).positions();
    const std::vector<double> kl = dual_projection(s, k, Interval::closed(-t_max, t_max)).positions();

    rep.sampling = sampling_trace(lw, k, ts, opt);
    rep.interpolation = gram_stability(lw, k, ts, opt);
    rep.dual_sampling = sampling_trace(kl, wset, ts, opt);
    rep.dual_interpolation = gram_stability(kl, wset, ts, opt);

    const double rho = rep.model_density;
    const double theta = rep.spectrum_measure;
    if (std::abs(rho - theta) <= opt.critical_band * theta) {
        rep.regime = "critical";
        rep.verdict = "inconclusive/critical";
        rep.consistent = true;
    } else if (rho > theta) {
        rep.regime = "oversampled";
        rep.verdict = rep.sampling.stable ? "sampling-stable" : "inconclusive";
        rep.consistent = rep.sampling.stable == rep.dual_interpolation.stable;
    } else {
        rep.regime = "undersampled";
        rep.verdict = rep.interpolation.stable ? "interpolation-stable" : "inconclusive";
        rep.consistent = rep.interpolation.stable == rep.dual_sampling.stable;
    }
    return rep;
}

} // namespace mslab
