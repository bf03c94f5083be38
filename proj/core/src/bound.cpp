#include "fieldline/bound.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

namespace fieldline {

double bound_functional(const polygon& shape, const direction_cost& cost) {
    if (!shape.closed()) throw std::invalid_argument("bound_functional: shape must be closed");
    if (!cost) throw std::invalid_argument("bound_functional: no cost oracle");

    // total edge length per direction, first-appearance order
    std::vector<std::pair<direction, double>> groups;
    for (const polygon_edge& e : shape.edges()) {
        bool found = false;
        for (auto& g : groups) {
            if (g.first.axis == e.dir.axis && g.first.lambda == e.dir.lambda) {
                g.second += e.length;
                found = true;
                break;
            }
        }
        if (!found) groups.emplace_back(e.dir, e.length);
    }

    double gamma = 0.0;
    for (const auto& [dir, len] : groups) {
        const double density = 1.0 / std::sqrt(1.0 + dir.lambda * dir.lambda);
        const double h = cost(dir);
        if (!(h >= 0.0) || !std::isfinite(h))
            throw std::invalid_argument("bound_functional: cost must be finite and nonnegative");
        gamma += (len / 4.0) * h * density;
    }
    return gamma;
}

double box_bound(double area, double axis_cost) {
    if (!(area > 0.0)) throw std::invalid_argument("box_bound: area must be positive");
    if (!(axis_cost >= 0.0)) throw std::invalid_argument("box_bound: cost must be nonnegative");
    return std::sqrt(area) * axis_cost;
}

direction_cost memoize_cost(direction_cost inner, double grid_degrees) {
    if (!inner) throw std::invalid_argument("memoize_cost: no oracle");
    if (!(grid_degrees > 0.0)) throw std::invalid_argument("memoize_cost: grid must be positive");
    auto cache = std::make_shared<std::map<std::pair<int, std::int64_t>, double>>();
    return [inner = std::move(inner), cache, grid_degrees](const direction& dir) {
        const double degrees = std::atan(dir.lambda) * 180.0 / std::acos(-1.0);
        const std::pair<int, std::int64_t> key{dir.axis == axis::x ? 0 : 1,
                                               std::llround(degrees / grid_degrees)};
        if (auto it = cache->find(key); it != cache->end()) return it->second;
        const double value = inner(dir);
        cache->emplace(key, value);
        return value;
    };
}

namespace {

// area-preserving rescale about the centroid-free origin
polygon renormalized(std::vector<point> vertices, double target_area) {
    polygon candidate(std::move(vertices));
    const double scale = std::sqrt(target_area / candidate.area());
    std::vector<point> scaled;
    scaled.reserve(candidate.vertices().size());
    for (const point& v : candidate.vertices()) scaled.push_back(scale * v);
    return polygon(std::move(scaled));
}

optimize_result sweep_kgons(const direction_cost& cost, const optimize_options& opt) {
    optimize_result best{make_regular_polygon(opt.k_min, opt.area), 0.0, {}};
    best.value = bound_functional(best.shape, cost);
    for (int k = opt.k_min; k <= opt.k_max; ++k) {
        polygon shape = make_regular_polygon(k, opt.area);
        const double value = bound_functional(shape, cost);
        const bool accepted = value < best.value || k == opt.k_min;
        if (value < best.value) {
            best.value = value;
            best.shape = shape;
        }
        best.trace.push_back({k, best.value, accepted});
    }
    return best;
}

optimize_result descend_vertices(const direction_cost& cost, const optimize_options& opt) {
    polygon shape = make_regular_polygon(opt.vertices, opt.area);
    double value = bound_functional(shape, cost);

    optimize_result out{shape, value, {}};
    out.trace.push_back({0, value, true});

    double step = opt.initial_step * std::sqrt(opt.area);
    for (int round = 1; round <= opt.max_rounds && step >= opt.min_step; ++round) {
        bool improved = false;
        for (std::size_t v = 0; v < out.shape.vertices().size(); ++v) {
            for (const point delta : {point{step, 0.0}, point{-step, 0.0}, point{0.0, step},
                                      point{0.0, -step}}) {
                std::vector<point> trial = out.shape.vertices();
                trial[v] = trial[v] + delta;
                try {
                    polygon candidate = renormalized(std::move(trial), opt.area);
                    const double trial_value = bound_functional(candidate, cost);
                    if (trial_value < out.value) {
                        out.value = trial_value;
                        out.shape = candidate;
                        improved = true;
                    }
                } catch (const std::invalid_argument&) {
                    // degenerate or self-intersecting trial, skip it
                }
            }
        }
        if (!improved) step *= 0.5;
        out.trace.push_back({round, out.value, improved});
    }
    return out;
}

}  // namespace

optimize_result optimize_shape(const direction_cost& cost, const optimize_options& opt) {
    if (!cost) throw std::invalid_argument("optimize_shape: no cost oracle");
    if (!(opt.area > 0.0)) throw std::invalid_argument("optimize_shape: area must be positive");
    if (opt.family == shape_family::regular_kgon) {
        if (opt.k_min < 3 || opt.k_max < opt.k_min)
            throw std::invalid_argument("optimize_shape: bad K range");
        return sweep_kgons(cost, opt);
    }
    if (opt.vertices < 4)
        throw std::invalid_argument("optimize_shape: vertex-free search needs at least 4 vertices");
    if (!(opt.initial_step > 0.0) || !(opt.min_step > 0.0))
        throw std::invalid_argument("optimize_shape: steps must be positive");
    return descend_vertices(cost, opt);
}

}  // namespace fieldline
