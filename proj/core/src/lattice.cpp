#include "fieldline/geometry.hpp"

#include <cassert>
#include <cmath>

namespace fieldline {

double line_eval(const linear_map& map, double x) {
    return map.slope.value() * x + map.intercept;
}

rat line_eval_exact(const linear_map& map, const rat& x) {
    if (!map.exact()) throw std::invalid_argument("line_eval_exact: line is not exact");
    return rat(map.slope.p(), map.slope.q()) * x + *map.intercept_exact;
}

std::int64_t line_floor(const linear_map& map, std::int64_t z) {
    if (map.exact()) {
        // floor((p*z*ad + an*q) / (q*ad)) without leaving integer arithmetic
        const rat& a = *map.intercept_exact;
        const __int128 num = static_cast<__int128>(map.slope.p()) * z * a.den +
                             static_cast<__int128>(a.num) * map.slope.q();
        const __int128 den = static_cast<__int128>(map.slope.q()) * a.den;
        __int128 q = num / den;
        if (num % den != 0 && (num < 0) != (den < 0)) --q;
        return static_cast<std::int64_t>(q);
    }
    return static_cast<std::int64_t>(std::floor(line_eval(map, static_cast<double>(z))));
}

namespace {

// Core digitization for nonnegative slope on the x-axis frame.
std::vector<site> floor_chain(const linear_map& map, std::int64_t z_lo, std::int64_t z_hi) {
    std::vector<site> out;
    out.reserve(static_cast<std::size_t>(z_hi - z_lo + 1));
    for (std::int64_t z = z_lo; z <= z_hi; ++z) out.push_back({z, line_floor(map, z)});
    return out;
}

void transpose_in_place(std::vector<site>& sites) {
    for (site& s : sites) std::swap(s.x, s.y);
}

}  // namespace

site_set lattice_approx(const linear_map& map, std::int64_t z_lo, std::int64_t z_hi) {
    if (z_lo > z_hi) throw std::invalid_argument("lattice_approx: empty parameter interval");
    site_set out;
    out.kind = approx_kind::lattice;
    if (map.slope.value() < 0.0) {
        linear_map pos = map;
        pos.slope = map.slope.negated();
        out.sites = floor_chain(pos, z_lo, z_hi);
        for (site& s : out.sites) s = -s;
    } else {
        out.sites = floor_chain(map, z_lo, z_hi);
    }
    if (map.slope.orientation() == axis::y) transpose_in_place(out.sites);
    return out;
}

torus_point torus_translate(const slope& s, const torus_point& t, std::int64_t n) {
    if (s.is_rational()) {
        const std::int64_t r = mod_floor(
            static_cast<std::int64_t>((static_cast<__int128>(n) * s.p()) % s.q()), s.q());
        if (t.exact()) return torus_point(t.ratio() + rat(r, s.q()));
        return torus_point(fract(t.t() + static_cast<double>(r) / static_cast<double>(s.q())));
    }
    return torus_point(fract(t.t() + static_cast<double>(n) * s.value()));
}

torus_point torus_zero(const slope& s, std::int64_t nu) {
    // All sign cases collapse to {-{nu * slope}}: for matching signs this is
    // 1 - {nu*slope}, for opposite signs {|nu*slope|}, and 0 when either
    // factor vanishes.
    if (nu == 0 || s.value() == 0.0) return torus_point(0.0);
    if (s.is_rational()) {
        const std::int64_t r = mod_floor(
            static_cast<std::int64_t>((static_cast<__int128>(nu) * s.p()) % s.q()), s.q());
        return torus_point(rat(mod_floor(-r, s.q()), s.q()));
    }
    return torus_point(fract(-fract(static_cast<double>(nu) * s.value())));
}

site skew_offset(const linear_map& map, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("skew_offset: n must be nonnegative");
    if (map.slope.value() < 0.0)
        throw std::invalid_argument("skew_offset: slope must be normalized to [0, 1]");
    site s{n, line_floor(map, n)};
    if (map.slope.orientation() == axis::y) std::swap(s.x, s.y);
    return s;
}

site_set contour_approx(const linear_map& map, std::int64_t z_lo, std::int64_t z_hi) {
    if (z_lo > z_hi) throw std::invalid_argument("contour_approx: empty parameter interval");
    if (map.slope.value() < 0.0)
        throw std::invalid_argument("contour_approx: slope must lie in [0, 1]");

    site_set out;
    out.kind = approx_kind::contour;
    std::int64_t prev = line_floor(map, z_lo);
    out.sites.push_back({z_lo, prev});
    for (std::int64_t z = z_lo + 1; z <= z_hi; ++z) {
        const std::int64_t cur = line_floor(map, z);
        // A unit rise opens a diagonal gap; the fill site sits one row below
        // the new level so the chain stays nearest-neighbour connected.
        if (cur > prev) out.sites.push_back({z, cur - 1});
        out.sites.push_back({z, cur});
        prev = cur;
    }
    if (map.slope.orientation() == axis::y)
        for (site& s : out.sites) std::swap(s.x, s.y);
    return out;
}

double equidistribution_check(const slope& s, const torus_point& t0, double u_lo, double u_hi,
                              std::int64_t n) {
    if (n < 0) throw std::invalid_argument("equidistribution_check: n must be nonnegative");
    if (!(0.0 <= u_lo && u_lo <= u_hi && u_hi <= 1.0))
        throw std::invalid_argument("equidistribution_check: window must satisfy 0 <= lo <= hi <= 1");
    const double lambda = s.value();
    const double start = t0.t();
    std::int64_t count = 0;
    for (std::int64_t i = 0; i <= n; ++i) {
        // Direct evaluation instead of iterated addition: no drift for large n.
        const double t = fract(start + static_cast<double>(i) * lambda);
        if (t >= u_lo && t < u_hi) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(n + 1);
}

double ratio_lattice_to_length(double lambda, std::int64_t k, double i_lo, double i_hi) {
    if (!(std::abs(lambda) <= 1.0)) throw std::invalid_argument("ratio_lattice_to_length: |slope| > 1");
    if (k <= 0) throw std::invalid_argument("ratio_lattice_to_length: blowup factor must be positive");
    if (!(i_hi > i_lo)) throw std::invalid_argument("ratio_lattice_to_length: empty interval");
    const double lo = static_cast<double>(k) * i_lo;
    const double hi = static_cast<double>(k) * i_hi;
    const double count = std::floor(hi) - std::ceil(lo) + 1.0;
    const double length = static_cast<double>(k) * (i_hi - i_lo) * std::sqrt(1.0 + lambda * lambda);
    return count / length;
}

direction direction_slope(double vx, double vy) {
    const double norm = std::hypot(vx, vy);
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("direction_slope: vector must have unit length");
    direction d;
    if (std::abs(vy) <= std::abs(vx)) {
        d.axis = axis::x;
        d.lambda = vy / vx;
    } else {
        d.axis = axis::y;
        d.lambda = vx / vy;
    }
    if (d.lambda == 0.0) d.lambda = 0.0;  // normalize -0.0
    return d;
}

}  // namespace fieldline
