#include "fieldline/past_window.hpp"

#include <stdexcept>

namespace fieldline {

site_set past_sites(const past_window_spec& spec) {
    if (spec.depth < 1) throw std::invalid_argument("past_sites: depth must be at least 1");
    const bool contour = spec.variant != past_variant::lattice;
    if (contour && spec.slope.value() < 0.0)
        throw std::invalid_argument("past_sites: contour pasts need slope in [0, 1]");

    site_set out;
    out.kind = contour ? approx_kind::contour : approx_kind::lattice;

    if (spec.variant == past_variant::contour_with_above) out.sites.push_back({0, 1});

    if (!contour && spec.slope.value() < 0.0) {
        // negation convention of the digitized line, walked nearest first
        linear_map pos(spec.slope.negated(), spec.t);
        for (std::int64_t z = -1; z >= -spec.depth; --z)
            out.sites.push_back({-z, -line_floor(pos, z)});
    } else {
        linear_map map(spec.slope, spec.t);
        std::int64_t next_level = line_floor(map, 0);
        for (std::int64_t z = -1; z >= -spec.depth; --z) {
            const std::int64_t cur = line_floor(map, z);
            // a unit rise between z and z+1 leaves a diagonal gap; the fill
            // sits below the upper site, which for the sharp variant may be
            // the column of the origin itself
            if (contour && next_level > cur) out.sites.push_back({z + 1, next_level - 1});
            out.sites.push_back({z, cur});
            next_level = cur;
        }
    }

    if (spec.slope.orientation() == axis::y)
        for (site& s : out.sites) std::swap(s.x, s.y);
    return out;
}

}  // namespace fieldline
