#pragma once

#include "fieldline/geometry.hpp"

namespace fieldline {

// Which site chain the conditioning past follows.
//   lattice:             the digitized line over parameters [-depth, -1]
//   contour_sharp:       same plus the step-fill sites, including the fill
//                        at parameter 0 when a step begins there
//   contour_with_above:  contour past plus the single site directly above
//                        the origin
enum class past_variant : std::uint8_t { lattice, contour_sharp, contour_with_above };

struct past_window_spec {
    fieldline::slope slope;
    torus_point t;
    int depth = 1;
    past_variant variant = past_variant::lattice;
};

// Conditioning sites relative to the origin, nearest first. The origin
// itself is never part of the set.
site_set past_sites(const past_window_spec& spec);

}  // namespace fieldline
