#pragma once

#include <cstdint>
#include <vector>

#include "fieldline/geometry.hpp"

namespace fieldline {

struct point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const point&, const point&) = default;
};

inline point operator+(const point& a, const point& b) { return {a.x + b.x, a.y + b.y}; }
inline point operator-(const point& a, const point& b) { return {a.x - b.x, a.y - b.y}; }
inline point operator*(double c, const point& p) { return {c * p.x, c * p.y}; }

// One traversed edge with its axis-normalized line data.
struct polygon_edge {
    point a, b;
    double length = 0.0;
    fieldline::direction dir;       // axis tag and real slope in [-1, 1]
    fieldline::slope edge_slope;    // fraction when the ratio is recognized as one
    double intercept = 0.0;         // intercept of the edge's line in its axis frame
    double intercept_frac = 0.0;    // intercept reduced mod 1
    double param_lo = 0.0;          // parameter interval in the axis frame
    double param_hi = 0.0;
};

enum class point_location : std::uint8_t { inside, boundary, outside };

// Simple polygon (or open polyline when closed == false). Closed polygons
// must be positively oriented with positive area; self-intersecting chains
// are rejected.
class polygon {
public:
    polygon(std::vector<point> vertices, bool closed = true);

    const std::vector<point>& vertices() const { return vertices_; }
    bool closed() const { return closed_; }
    const std::vector<polygon_edge>& edges() const { return edges_; }

    double perimeter() const;
    double area() const;  // closed polygons only

    polygon blowup(double eta) const;

    point_location locate(const site& s) const;  // even-odd rule
    bool contains(const site& s) const { return locate(s) == point_location::inside; }

private:
    std::vector<point> vertices_;
    bool closed_ = true;
    std::vector<polygon_edge> edges_;
};

// Convenience shapes.
polygon make_square(double side, point center = {0.0, 0.0});
polygon make_rectangle(double width, double height, point center = {0.0, 0.0});
// Regular K-gon in edge-centered orientation: K = 4 gives the axis-aligned
// square. Scaled so the enclosed area matches `area`.
polygon make_regular_polygon(int k, double area, point center = {0.0, 0.0});

// Union of per-edge digitizations of the n-fold blowup, traversal order,
// keep-first corner deduplication. Edges are digitized in place (the floor
// chain of each edge's own line), so the sites track the blown-up boundary.
site_set polygon_lattice_approx(const polygon& poly, std::int64_t n);

// Same with the gap-filling contour digitization of every edge.
site_set polygon_contour_approx(const polygon& poly, std::int64_t n);

// Attempts to recognize a floating ratio num/den as a small fraction
// (denominator up to max_den, absolute error below 1e-12); falls back to the
// irrational representation.
slope recognize_slope(double lambda, axis ax, std::int64_t max_den = 4096);

}  // namespace fieldline
