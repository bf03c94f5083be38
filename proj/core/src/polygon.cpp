#include "fieldline/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace fieldline {

namespace {

double cross(const point& o, const point& a, const point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool segments_intersect(const point& p1, const point& p2, const point& q1, const point& q2) {
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    return false;  // touching endpoints of adjacent edges are handled by the caller
}

double shoelace(const std::vector<point>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const point& p = v[i];
        const point& q = v[(i + 1) % v.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

polygon_edge build_edge(const point& a, const point& b) {
    polygon_edge e;
    e.a = a;
    e.b = b;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    e.length = std::hypot(dx, dy);
    if (e.length <= 0.0) throw std::invalid_argument("polygon: degenerate edge");
    e.dir = direction_slope(dx / e.length, dy / e.length);
    e.edge_slope = recognize_slope(e.dir.lambda, e.dir.axis);
    if (e.dir.axis == axis::x) {
        e.intercept = a.y - e.dir.lambda * a.x;
        e.param_lo = std::min(a.x, b.x);
        e.param_hi = std::max(a.x, b.x);
    } else {
        e.intercept = a.x - e.dir.lambda * a.y;
        e.param_lo = std::min(a.y, b.y);
        e.param_hi = std::max(a.y, b.y);
    }
    e.intercept_frac = fract(e.intercept);
    return e;
}

}  // namespace

slope recognize_slope(double lambda, axis ax, std::int64_t max_den) {
    if (!(std::abs(lambda) <= 1.0)) throw std::invalid_argument("recognize_slope: |slope| > 1");
    // continued-fraction convergents of |lambda|
    const double target = std::abs(lambda);
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = target;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(x);
        if (fl > static_cast<double>(max_den)) break;
        const std::int64_t a = static_cast<std::int64_t>(fl);
        const std::int64_t p2 = a * p1 + p0;
        const std::int64_t q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (q1 > 0 && std::abs(static_cast<double>(p1) / static_cast<double>(q1) - target) < 1e-12) {
            const std::int64_t num = lambda < 0 ? -p1 : p1;
            if (p1 <= q1) return slope::rational(num, q1, ax);
            break;
        }
        const double rem = x - fl;
        if (rem < 1e-15) break;
        x = 1.0 / rem;
    }
    return slope::irrational(lambda, ax);
}

polygon::polygon(std::vector<point> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
    const std::size_t n = vertices_.size();
    if (n < 2 || (closed_ && n < 3))
        throw std::invalid_argument("polygon: too few vertices");

    const std::size_t edge_count = closed_ ? n : n - 1;
    edges_.reserve(edge_count);
    for (std::size_t i = 0; i < edge_count; ++i)
        edges_.push_back(build_edge(vertices_[i], vertices_[(i + 1) % n]));

    for (std::size_t i = 0; i < edge_count; ++i) {
        for (std::size_t j = i + 1; j < edge_count; ++j) {
            const bool adjacent = (j == i + 1) || (closed_ && i == 0 && j == edge_count - 1);
            if (adjacent) continue;
            if (segments_intersect(edges_[i].a, edges_[i].b, edges_[j].a, edges_[j].b))
                throw std::invalid_argument("polygon: self-intersecting boundary");
        }
    }

    if (closed_) {
        const double a = shoelace(vertices_);
        if (!(a > 0.0))
            throw std::invalid_argument(
                "polygon: closed boundary must be positively oriented with positive area");
    }
}

double polygon::perimeter() const {
    double s = 0.0;
    for (const polygon_edge& e : edges_) s += e.length;
    return s;
}

double polygon::area() const {
    if (!closed_) throw std::invalid_argument("polygon: area of an open polyline");
    return shoelace(vertices_);
}

polygon polygon::blowup(double eta) const {
    if (!(eta > 0.0)) throw std::invalid_argument("polygon: blowup factor must be positive");
    std::vector<point> v = vertices_;
    for (point& p : v) p = eta * p;
    return polygon(std::move(v), closed_);
}

point_location polygon::locate(const site& s) const {
    if (!closed_) throw std::invalid_argument("polygon: point location needs a closed boundary");
    const double px = static_cast<double>(s.x);
    const double py = static_cast<double>(s.y);

    for (const polygon_edge& e : edges_) {
        const double c = (e.b.x - e.a.x) * (py - e.a.y) - (e.b.y - e.a.y) * (px - e.a.x);
        if (c == 0.0 && px >= std::min(e.a.x, e.b.x) && px <= std::max(e.a.x, e.b.x) &&
            py >= std::min(e.a.y, e.b.y) && py <= std::max(e.a.y, e.b.y))
            return point_location::boundary;
    }

    // even-odd ray cast toward +x
    bool inside = false;
    for (const polygon_edge& e : edges_) {
        const double y1 = e.a.y, y2 = e.b.y;
        if ((y1 > py) == (y2 > py)) continue;
        const double x_cross = e.a.x + (py - y1) / (y2 - y1) * (e.b.x - e.a.x);
        if (x_cross > px) inside = !inside;
    }
    return inside ? point_location::inside : point_location::outside;
}

polygon make_square(double side, point center) {
    return make_rectangle(side, side, center);
}

polygon make_rectangle(double width, double height, point center) {
    if (!(width > 0.0) || !(height > 0.0))
        throw std::invalid_argument("make_rectangle: sides must be positive");
    const double hw = width / 2.0, hh = height / 2.0;
    return polygon({{center.x - hw, center.y - hh},
                    {center.x + hw, center.y - hh},
                    {center.x + hw, center.y + hh},
                    {center.x - hw, center.y + hh}});
}

polygon make_regular_polygon(int k, double area, point center) {
    if (k < 3) throw std::invalid_argument("make_regular_polygon: need at least 3 vertices");
    if (!(area > 0.0)) throw std::invalid_argument("make_regular_polygon: area must be positive");
    // area of a regular k-gon with circumradius r: (k/2) r^2 sin(2 pi / k)
    const double r =
        std::sqrt(2.0 * area / (static_cast<double>(k) * std::sin(2.0 * std::numbers::pi / k)));
    std::vector<point> v;
    v.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        // vertex offset of pi/k puts edge midpoints on the axes; k = 4 is the
        // axis-aligned square
        const double ang = 2.0 * std::numbers::pi * (i + 0.5) / k - std::numbers::pi / 2.0;
        v.push_back({center.x + r * std::cos(ang), center.y + r * std::sin(ang)});
    }
    return polygon(std::move(v));
}

namespace {

// In-place digitization of one edge of the blown-up polygon: the floor chain
// of the edge's own line over the integer parameters its span covers,
// walked in traversal direction.
template <typename Emit>
void digitize_edge(const point& a, const point& b, bool contour, Emit&& emit) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len = std::hypot(dx, dy);
    const direction dir = direction_slope(dx / len, dy / len);

    double pa, pb, c;  // parameter endpoints and intercept in the axis frame
    if (dir.axis == axis::x) {
        pa = a.x; pb = b.x;
        c = a.y - dir.lambda * a.x;
    } else {
        pa = a.y; pb = b.y;
        c = a.x - dir.lambda * a.y;
    }
    const std::int64_t z_lo = static_cast<std::int64_t>(std::ceil(std::min(pa, pb)));
    const std::int64_t z_hi = static_cast<std::int64_t>(std::floor(std::max(pa, pb)));
    if (z_lo > z_hi) return;

    const bool forward = pb >= pa;
    const std::int64_t begin = forward ? z_lo : z_hi;
    const std::int64_t end = forward ? z_hi : z_lo;
    const std::int64_t step = forward ? 1 : -1;

    auto level = [&](std::int64_t z) {
        return static_cast<std::int64_t>(std::floor(dir.lambda * static_cast<double>(z) + c));
    };
    auto out = [&](std::int64_t z, std::int64_t y) {
        if (dir.axis == axis::x) emit(site{z, y});
        else emit(site{y, z});
    };

    std::int64_t prev = level(begin);
    out(begin, prev);
    for (std::int64_t z = begin + step; forward ? z <= end : z >= end; z += step) {
        const std::int64_t cur = level(z);
        if (contour && cur != prev) {
            // fill below the upper site of the step, same convention as the
            // line contour
            if (cur > prev) out(z, cur - 1);
            else out(z - step, prev - 1);
        }
        out(z, cur);
        prev = cur;
    }
}

site_set polygon_approx(const polygon& poly, std::int64_t n, bool contour) {
    if (n <= 0) throw std::invalid_argument("polygon digitization: blowup factor must be positive");
    const polygon big = poly.blowup(static_cast<double>(n));

    site_set out;
    out.kind = contour ? approx_kind::contour : approx_kind::lattice;
    std::unordered_set<site, site_hash> seen;
    auto emit = [&](const site& s) {
        if (seen.insert(s).second) out.sites.push_back(s);
    };
    for (const polygon_edge& e : big.edges()) digitize_edge(e.a, e.b, contour, emit);
    return out;
}

}  // namespace

site_set polygon_lattice_approx(const polygon& poly, std::int64_t n) {
    return polygon_approx(poly, n, false);
}

site_set polygon_contour_approx(const polygon& poly, std::int64_t n) {
    return polygon_approx(poly, n, true);
}

}  // namespace fieldline
