#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fieldline/rational.hpp"

namespace fieldline {

// ==========================================================================
// Slopes, lines and torus points
// ==========================================================================

// Which coordinate axis a direction has been normalized against. Directions
// closer to the x-axis (|angle| <= pi/4 or >= 3pi/4) use axis::x and the
// slope is tan(angle); the rest use axis::y and cot(angle). Either way the
// stored slope magnitude never exceeds 1.
enum class axis : std::uint8_t { x, y };

// A slope in [-1, 1], either an exact fraction p/q or a caller-supplied real.
// The library never guesses whether a floating value "is" irrational; the
// caller picks the representation and exact integer arithmetic is used only
// on the fraction path.
class slope {
public:
    slope() = default;

    static slope rational(std::int64_t p, std::int64_t q, axis ax = axis::x) {
        if (q == 0) throw std::invalid_argument("slope: zero denominator");
        if (q < 0) { p = -p; q = -q; }
        const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
        if (g > 1) { p /= g; q /= g; }
        if (p > q || p < -q) throw std::invalid_argument("slope: |p/q| must not exceed 1");
        slope s;
        s.p_ = p;
        s.q_ = q;
        s.value_ = static_cast<double>(p) / static_cast<double>(q);
        s.axis_ = ax;
        return s;
    }

    static slope irrational(double value, axis ax = axis::x) {
        if (!std::isfinite(value) || value < -1.0 || value > 1.0)
            throw std::invalid_argument("slope: value must lie in [-1, 1]");
        slope s;
        s.q_ = 0;
        s.value_ = value;
        s.axis_ = ax;
        return s;
    }

    bool is_rational() const { return q_ != 0; }
    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    double value() const { return value_; }
    axis orientation() const { return axis_; }

    slope negated() const {
        slope s = *this;
        s.p_ = -s.p_;
        s.value_ = -s.value_;
        return s;
    }

    friend bool operator==(const slope& a, const slope& b) {
        return a.p_ == b.p_ && a.q_ == b.q_ && a.value_ == b.value_ && a.axis_ == b.axis_;
    }

private:
    std::int64_t p_ = 0;
    std::int64_t q_ = 1;  // 0 flags the irrational representation
    double value_ = 0.0;
    axis axis_ = axis::x;
};

// Fractional part in [0, 1), also for negative arguments: fract(-0.3) = 0.7.
inline double fract(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // guards the rounding edge just below an integer
    return f;
}

// A point of the unit circle R/Z, stored as a double in [0, 1) together with
// an exact fraction when one is known. Orbit computations with rational
// slope and exact starting point stay exact.
class torus_point {
public:
    torus_point() = default;
    torus_point(double t) : t_(fract(t)) {}
    explicit torus_point(const rat& r) : exact_(rat_frac(r)) { t_ = exact_->to_double(); }

    double t() const { return t_; }
    bool exact() const { return exact_.has_value(); }
    const rat& ratio() const {
        if (!exact_) throw std::logic_error("torus_point: no exact representation");
        return *exact_;
    }

private:
    double t_ = 0.0;
    std::optional<rat> exact_;
};

// y = slope * x + intercept (x = slope * y + intercept for axis::y slopes).
// Supplying the intercept as a fraction keeps the whole line exact.
struct linear_map {
    fieldline::slope slope;
    double intercept = 0.0;
    std::optional<rat> intercept_exact;

    linear_map() = default;
    linear_map(const fieldline::slope& s, double a) : slope(s), intercept(a) {}
    linear_map(const fieldline::slope& s, const rat& a)
        : slope(s), intercept(a.to_double()), intercept_exact(a) {}
    linear_map(const fieldline::slope& s, const torus_point& t) : slope(s), intercept(t.t()) {
        if (t.exact()) intercept_exact = t.ratio();
    }

    bool exact() const { return slope.is_rational() && intercept_exact.has_value(); }
};

// ==========================================================================
// Sites
// ==========================================================================

struct site {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend auto operator<=>(const site&, const site&) = default;
};

inline site operator+(const site& a, const site& b) { return {a.x + b.x, a.y + b.y}; }
inline site operator-(const site& a, const site& b) { return {a.x - b.x, a.y - b.y}; }
inline site operator-(const site& a) { return {-a.x, -a.y}; }

struct site_hash {
    std::size_t operator()(const site& s) const {
        std::uint64_t h = static_cast<std::uint64_t>(s.x) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(s.y) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

enum class approx_kind : std::uint8_t { lattice, contour };

// Ordered site list produced by one of the digitization routines.
struct site_set {
    approx_kind kind = approx_kind::lattice;
    std::vector<site> sites;

    std::size_t size() const { return sites.size(); }
};

// ==========================================================================
// Line digitization and torus dynamics
// ==========================================================================

// slope * x + intercept as a real number.
double line_eval(const linear_map& map, double x);

// Exact evaluation; requires a rational slope and exact intercept.
rat line_eval_exact(const linear_map& map, const rat& x);

// floor(slope * z + intercept), exact on the rational path.
std::int64_t line_floor(const linear_map& map, std::int64_t z);

// Digitized line over integer parameters z in [z_lo, z_hi]. For negative
// slopes the convention is pointwise negation of the positive-slope set over
// the same interval; for axis::y slopes the two coordinates swap roles.
site_set lattice_approx(const linear_map& map, std::int64_t z_lo, std::int64_t z_hi);

// Rotation of the unit circle by n steps of the slope.
torus_point torus_translate(const slope& s, const torus_point& t, std::int64_t n);

// The starting point whose orbit hits 0 after nu steps: {a + nu * slope} = 0.
torus_point torus_zero(const slope& s, std::int64_t nu);

// The site (n, floor(slope * n + a)) reached after n forward steps along the
// line; the second coordinate follows the cocycle of the floor sequence.
site skew_offset(const linear_map& map, std::int64_t n);

// Digitized line with an extra fill site inserted below every unit rise, so
// consecutive sites are always nearest neighbours. Requires slope in [0, 1].
site_set contour_approx(const linear_map& map, std::int64_t z_lo, std::int64_t z_hi);

// Empirical frequency (1/(n+1)) * #{0 <= i <= n : orbit_i(t0) in [u_lo, u_hi)}.
double equidistribution_check(const slope& s, const torus_point& t0, double u_lo, double u_hi,
                              std::int64_t n);

// Number of digitized sites of the k-fold blowup of the segment over
// [i_lo, i_hi], divided by the blown-up arc length. Tends to 1/sqrt(1+lambda^2).
double ratio_lattice_to_length(double lambda, std::int64_t k, double i_lo, double i_hi);

// Axis normalization of a unit direction vector.
struct direction {
    fieldline::axis axis = fieldline::axis::x;
    double lambda = 0.0;  // in [-1, 1]
};

direction direction_slope(double vx, double vy);

}  // namespace fieldline
