#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fieldline/polygon.hpp"

namespace fieldline {

// Per-unit-length cost of an interface piece with the given axis-normalized
// direction, e.g. a directional entropy constant.
using direction_cost = std::function<double(const direction&)>;

// Surface bound of a closed shape, per unit of box side:
//   gamma = sum over edge directions (total length / 4) * cost / sqrt(1 + slope^2)
// where the square-root factor converts arc length into digitized site
// density. Edges are grouped by direction before summing.
double bound_functional(const polygon& shape, const direction_cost& cost);

// The same functional evaluated on the axis square of the given area under
// a constant axis cost.
double box_bound(double area, double axis_cost);

// Caches an expensive oracle on an angular grid (default one degree within
// the axis frame); directions falling into the same bucket share one
// evaluation. Copies of the returned oracle share the cache.
direction_cost memoize_cost(direction_cost inner, double grid_degrees = 1.0);

enum class shape_family : std::uint8_t { regular_kgon, vertex_free };

struct optimize_options {
    shape_family family = shape_family::regular_kgon;
    double area = 1.0;
    int k_min = 3;            // regular_kgon: sweep range
    int k_max = 64;
    int vertices = 16;        // vertex_free: polygon size
    int max_rounds = 60;      // vertex_free: coordinate descent rounds
    double initial_step = 0.2;
    double min_step = 1e-4;
};

struct optimize_trace_row {
    int step = 0;         // K for the sweep, round index for the descent
    double value = 0.0;   // best value so far, never increasing
    bool accepted = false;  // did this step improve the incumbent
};

struct optimize_result {
    polygon shape;
    double value = 0.0;
    std::vector<optimize_trace_row> trace;
};

// Minimizes the surface bound over the chosen family at fixed area. The
// K-gon sweep is exhaustive over [k_min, k_max]; the vertex-free search runs
// deterministic coordinate descent with area renormalization after every
// trial move and a halving step schedule.
optimize_result optimize_shape(const direction_cost& cost, const optimize_options& opt);

}  // namespace fieldline
