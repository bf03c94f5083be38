#include "fieldline/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fieldline {

curve::curve(std::vector<curve_sample> samples, double total_length)
    : samples_(std::move(samples)), length_(total_length) {
    if (samples_.size() < 2) throw std::invalid_argument("curve: need at least two samples");
    if (!(length_ > 0.0)) throw std::invalid_argument("curve: length must be positive");
    if (samples_.front().t != 0.0) throw std::invalid_argument("curve: parameter must start at 0");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const curve_sample& s = samples_[i];
        if (i > 0 && !(s.t > samples_[i - 1].t))
            throw std::invalid_argument("curve: parameters must increase");
        if (std::abs(std::hypot(s.d.x, s.d.y) - 1.0) > 1e-9)
            throw std::invalid_argument("curve: derivative must have unit length (arc-length parametrization)");
        if (std::hypot(s.p.x, s.p.y) <= 1e-12)
            throw std::invalid_argument("curve: trace must avoid the origin");
    }
    if (std::abs(samples_.back().t - length_) > 1e-9)
        throw std::invalid_argument("curve: last sample must sit at the total length");
}

bool curve::closed() const {
    const point& a = samples_.front().p;
    const point& b = samples_.back().p;
    return std::hypot(a.x - b.x, a.y - b.y) <= 1e-9;
}

point curve::at(double t) const {
    if (t <= samples_.front().t) return samples_.front().p;
    if (t >= samples_.back().t) return samples_.back().p;
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double v, const curve_sample& s) { return v < s.t; });
    const curve_sample& hi = *it;
    const curve_sample& lo = *(it - 1);
    const double r = (t - lo.t) / (hi.t - lo.t);
    return {lo.p.x + r * (hi.p.x - lo.p.x), lo.p.y + r * (hi.p.y - lo.p.y)};
}

point curve::tangent(double t) const {
    if (t <= samples_.front().t) return samples_.front().d;
    if (t >= samples_.back().t) return samples_.back().d;
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double v, const curve_sample& s) { return v < s.t; });
    return (it - 1)->d;
}

curve curve::blowup(double eta) const {
    if (!(eta > 0.0)) throw std::invalid_argument("curve: blowup factor must be positive");
    std::vector<curve_sample> s = samples_;
    for (curve_sample& cs : s) {
        cs.t *= eta;
        cs.p = eta * cs.p;
        // unit tangents are scale invariant
    }
    return curve(std::move(s), eta * length_);
}

curve make_segment(point a, point b, int samples) {
    if (samples < 2) throw std::invalid_argument("make_segment: need at least two samples");
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (!(len > 0.0)) throw std::invalid_argument("make_segment: endpoints coincide");
    const point d{(b.x - a.x) / len, (b.y - a.y) / len};
    std::vector<curve_sample> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double t = len * static_cast<double>(i) / (samples - 1);
        out.push_back({t, {a.x + t * d.x, a.y + t * d.y}, d});
    }
    out.back().t = len;
    return curve(std::move(out), len);
}

curve make_circle(point center, double radius, int samples) {
    if (!(radius > 0.0)) throw std::invalid_argument("make_circle: radius must be positive");
    if (samples < 8) throw std::invalid_argument("make_circle: too few samples");
    const double total = 2.0 * std::numbers::pi * radius;
    std::vector<curve_sample> out;
    out.reserve(static_cast<std::size_t>(samples) + 1);
    for (int i = 0; i <= samples; ++i) {
        const double t = total * static_cast<double>(i) / samples;
        const double ang = t / radius;
        out.push_back({t,
                       {center.x + radius * std::cos(ang), center.y + radius * std::sin(ang)},
                       {-std::sin(ang), std::cos(ang)}});
    }
    out.front().t = 0.0;
    out.back().t = total;
    out.back().p = out.front().p;  // close exactly
    return curve(std::move(out), total);
}

polygonize_result polygonize(const curve& c, int n_chords) {
    if (n_chords < 2) throw std::invalid_argument("polygonize: need at least two chords");
    const double total = c.length();
    const bool closed = c.closed();

    std::vector<point> verts;
    verts.reserve(static_cast<std::size_t>(n_chords) + 1);
    for (int j = 0; j <= n_chords; ++j)
        verts.push_back(c.at(total * static_cast<double>(j) / n_chords));

    double deviation = 0.0;
    for (int j = 0; j < n_chords; ++j) {
        const point& a = verts[static_cast<std::size_t>(j)];
        const point& b = verts[static_cast<std::size_t>(j) + 1];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        if (len <= 1e-12) throw std::invalid_argument("polygonize: degenerate chord");
        const point u{(b.x - a.x) / len, (b.y - a.y) / len};
        const double t_lo = total * static_cast<double>(j) / n_chords;
        const double t_hi = total * static_cast<double>(j + 1) / n_chords;
        for (const curve_sample& s : c.samples()) {
            if (s.t < t_lo || s.t >= t_hi) continue;
            deviation = std::max(deviation, std::hypot(s.d.x - u.x, s.d.y - u.y));
        }
        // chord endpoints always count, with the right-derivative of the
        // chord's own start
        const point d0 = c.tangent(t_lo);
        deviation = std::max(deviation, std::hypot(d0.x - u.x, d0.y - u.y));
    }

    if (closed) verts.pop_back();
    return {polygon(std::move(verts), closed), deviation};
}

}  // namespace fieldline
