#pragma once

#include <cstdint>
#include <vector>

#include "fieldline/polygon.hpp"

namespace fieldline {

// Droplet partition of the centered box V_n = {sites with max-norm <= n}:
// a blowup of the droplet shape scaled to cover the fraction alpha of the
// box, plus a slightly larger blowup separating the droplet from the rest.
struct droplet_spec {
    polygon shape;        // unit droplet, closed, origin strictly inside
    double alpha = 0.5;   // target volume fraction, (0, 1]
    std::int64_t n = 1;   // box radius
};

struct droplet_sets {
    std::int64_t k = 0;   // droplet blowup factor, floor(sqrt(alpha |V_n| / area))
    std::int64_t l = 0;   // separating blowup factor, floor(k + sqrt(n))
    std::int64_t box_sites = 0;
    std::vector<site> core;  // box sites strictly inside the k-blowup
    std::vector<site> far;   // box sites strictly outside the l-blowup
    double density = 0.0;    // core share of the box
    double deviation = 0.0;  // |density - alpha|
};

droplet_sets droplet_partition(const droplet_spec& spec);

}  // namespace fieldline
