#include "mslab/weights.hpp"

#include "mslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace mslab {

using std::numbers::pi;

double Envelope::bound_at(double t) const {
    switch (kind) {
    case Kind::Compact:
        return support.contains(t) || t == support.lo || t == support.hi ? sup : 0.0;
    case Kind::PowerLaw: {
        const double d = std::abs(t - center);
        if (d == 0.0) {
            return sup;
        }
        return std::min(sup, coefficient / std::pow(d, power));
    }
    case Kind::None:
        break;
    }
    return std::numeric_limits<double>::infinity();
}

double Envelope::bound_on(double a, double b) const {
    switch (kind) {
    case Kind::Compact:
        return (b < support.lo || a > support.hi) ? 0.0 : sup;
    case Kind::PowerLaw: {
        if (a <= center && center <= b) {
            return sup;
        }
        const double d = std::min(std::abs(a - center), std::abs(b - center));
        return std::min(sup, coefficient / std::pow(d, power));
    }
    case Kind::None:
        break;
    }
    return std::numeric_limits<double>::infinity();
}

double bspline4(double t) {
    const double a = std::abs(t);
    if (a >= 2.0) {
        return 0.0;
    }
    if (a >= 1.0) {
        const double r = 2.0 - a;
        return r * r * r / 6.0;
    }
    return 2.0 / 3.0 - a * a + 0.5 * a * a * a;
}

namespace {

void require_bounded(const Interval& w) {
    if (w.empty() || !(w.hi > w.lo)) {
        throw InvalidWindow("trapezoid window must have positive length");
    }
}

} // namespace

WeightFunction WeightFunction::indicator(const IntervalSet& w) {
    WeightFunction f;
    f.kind_ = Kind::Indicator;
    f.window_ = w;
    return f;
}

WeightFunction WeightFunction::outer_trapezoid(const Interval& w, double u) {
    require_bounded(w);
    if (!(u > 0.0) || !std::isfinite(u)) {
        throw InvalidSmoothing("outer trapezoid needs smoothing u > 0");
    }
    WeightFunction f;
    f.kind_ = Kind::OuterTrapezoid;
    f.window_ = IntervalSet(w);
    f.center_ = w.center();
    f.half_width_ = 0.5 * w.length();
    f.smoothing_ = u;
    f.box_half_ = f.half_width_ + u;
    return f;
}

WeightFunction WeightFunction::outer_trapezoid(double half_width, double u) {
    return outer_trapezoid(Interval::closed(-half_width, half_width), u);
}

WeightFunction WeightFunction::inner_trapezoid(const Interval& w, double u) {
    require_bounded(w);
    const double hw = 0.5 * w.length();
    if (!(u > 0.0) || !(u < hw)) {
        std::ostringstream msg;
        msg << "inner trapezoid needs 0 < u < w, got u = " << u << ", w = " << hw;
        throw InvalidSmoothing(msg.str());
    }
    WeightFunction f;
    f.kind_ = Kind::InnerTrapezoid;
    f.window_ = IntervalSet(w);
    f.center_ = w.center();
    f.half_width_ = hw;
    f.smoothing_ = u;
    f.box_half_ = hw - u;
    return f;
}

WeightFunction WeightFunction::inner_trapezoid(double half_width, double u) {
    if (!(half_width > 0.0)) {
        throw InvalidWindow("inner trapezoid half-width must be positive");
    }
    return inner_trapezoid(Interval::closed(-half_width, half_width), u);
}

WeightFunction WeightFunction::fejer_averager(int n) {
    if (n < 1) {
        throw InvalidSmoothing("Fejér scale must be >= 1");
    }
    WeightFunction f;
    f.kind_ = Kind::FejerAverager;
    f.scale_index_ = n;
    return f;
}

WeightFunction WeightFunction::triangle(double half_width) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw InvalidSmoothing("triangle half-width must be positive");
    }
    WeightFunction f;
    f.kind_ = Kind::Triangle;
    f.half_width_ = half_width;
    return f;
}

WeightFunction WeightFunction::scaled(double factor) const {
    WeightFunction f = *this;
    f.amplitude_ *= factor;
    return f;
}

WeightFunction WeightFunction::shifted(double t) const {
    WeightFunction f = *this;
    f.shift_ += t;
    return f;
}

double WeightFunction::evaluate(double y) const {
    const double x = y - shift_;
    double v = 0.0;
    switch (kind_) {
    case Kind::Indicator:
        v = window_.contains(x) ? 1.0 : 0.0;
        break;
    case Kind::OuterTrapezoid:
    case Kind::InnerTrapezoid: {
        const double u = smoothing_;
        const double overlap = std::min(x + u, center_ + box_half_) - std::max(x - u, center_ - box_half_);
        v = overlap > 0.0 ? overlap / (2.0 * u) : 0.0;
        break;
    }
    case Kind::FejerAverager: {
        const double n = scale_index_;
        const double s = sinc(pi * x / n);
        v = 1.5 / n * (s * s) * (s * s);
        break;
    }
    case Kind::Triangle: {
        const double a = half_width_;
        v = std::max(0.0, 1.0 - std::abs(x) / a) / a;
        break;
    }
    }
    return amplitude_ * v;
}

std::complex<double> WeightFunction::fourier(double k) const {
    std::complex<double> v{0.0, 0.0};
    switch (kind_) {
    case Kind::Indicator:
        v = indicator_fourier(window_, k);
        break;
    case Kind::OuterTrapezoid:
    case Kind::InnerTrapezoid: {
        const double mag = 2.0 * box_half_ * sinc(2.0 * pi * box_half_ * k) * sinc(2.0 * pi * smoothing_ * k);
        v = mag * std::polar(1.0, -2.0 * pi * k * center_);
        break;
    }
    case Kind::FejerAverager:
        v = 1.5 * bspline4(scale_index_ * k);
        break;
    case Kind::Triangle: {
        const double s = sinc(pi * half_width_ * k);
        v = s * s;
        break;
    }
    }
    if (shift_ != 0.0) {
        v *= std::polar(1.0, -2.0 * pi * k * shift_);
    }
    return amplitude_ * v;
}

Envelope WeightFunction::spatial_envelope() const {
    Envelope e;
    const double amp = std::abs(amplitude_);
    switch (kind_) {
    case Kind::Indicator:
        if (window_.empty()) {
            e.kind = Envelope::Kind::Compact;
            e.support = Interval::point(shift_);
            e.sup = 0.0;
            break;
        }
        e.kind = Envelope::Kind::Compact;
        e.support = Interval::closed(window_.hull().lo + shift_, window_.hull().hi + shift_);
        e.sup = amp;
        break;
    case Kind::OuterTrapezoid:
    case Kind::InnerTrapezoid:
        e.kind = Envelope::Kind::Compact;
        e.support = Interval::closed(center_ - box_half_ - smoothing_ + shift_,
                                     center_ + box_half_ + smoothing_ + shift_);
        e.sup = amp * std::min(1.0, box_half_ / smoothing_);
        break;
    case Kind::FejerAverager: {
        const double n = scale_index_;
        e.kind = Envelope::Kind::PowerLaw;
        e.center = shift_;
        e.power = 4;
        e.coefficient = amp * 1.5 / n * std::pow(n / pi, 4);
        e.sup = amp * 1.5 / n;
        break;
    }
    case Kind::Triangle:
        e.kind = Envelope::Kind::Compact;
        e.support = Interval::closed(shift_ - half_width_, shift_ + half_width_);
        e.sup = amp / half_width_;
        break;
    }
    return e;
}

Envelope WeightFunction::fourier_envelope() const {
    Envelope e;
    const double amp = std::abs(amplitude_);
    switch (kind_) {
    case Kind::Indicator:
        // 1/|k| decay only: sums over uniformly discrete sets do not converge absolutely.
        e.kind = Envelope::Kind::None;
        e.sup = amp * window_.measure();
        break;
    case Kind::OuterTrapezoid:
    case Kind::InnerTrapezoid:
        e.kind = Envelope::Kind::PowerLaw;
        e.center = 0.0;
        e.power = 2;
        e.coefficient = amp / (2.0 * pi * pi * smoothing_);
        e.sup = amp * 2.0 * box_half_;
        break;
    case Kind::FejerAverager: {
        const double r = 2.0 / scale_index_;
        e.kind = Envelope::Kind::Compact;
        e.support = Interval::closed(-r, r);
        e.sup = amp;
        break;
    }
    case Kind::Triangle:
        e.kind = Envelope::Kind::PowerLaw;
        e.center = 0.0;
        e.power = 2;
        e.coefficient = amp / (pi * pi * half_width_ * half_width_);
        e.sup = amp;
        break;
    }
    return e;
}

FejerPair fejer_pair(int n) {
    if (n < 1) {
        throw InvalidSmoothing("Fejér scale must be >= 1");
    }
    return {WeightFunction::triangle(1.0 / n), WeightFunction::fejer_averager(n)};
}

} // namespace mslab
