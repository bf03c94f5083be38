#pragma once

#include <cstdint>
#include <vector>

#include "fieldline/polygon.hpp"

namespace fieldline {

// Exact conditional-screening check for the digitized boundary of a shape:
// with all ring spins pinned, the conditional law of an interior probe spin
// must ignore the configuration outside the ring. Deviations are computed by
// brute-force enumeration of the interior, so the shapes have to stay small.
struct markov_spec {
    polygon shape;
    std::int64_t blowup = 1;
    double beta = 0.3;
    double field = 0.0;
    site probe{0, 0};         // interior site whose conditional is compared
    int n_probes = 16;        // exterior configurations tested
    std::uint64_t seed = 1;   // ring values and exterior probes
};

struct ring_check {
    std::vector<site> ring;           // sorted
    std::size_t interior_sites = 0;
    std::size_t touching_bonds = 0;   // interior-exterior bonds that bypass the ring
    double probe_up = 0.0;            // P(probe = +) under the first exterior probe
    double deviation = 0.0;           // max |P_i - P_0| across exterior probes
};

struct markov_report {
    ring_check line_ring;     // digitized boundary
    ring_check contour_ring;  // gap-filled digitized boundary
    bool contour_contains_line = false;
};

markov_report markov_boundary_check(const markov_spec& spec);

// The same single-ring check for a caller-supplied site set, e.g. a ring
// with sites knocked out to demonstrate the detector notices leaks.
ring_check custom_ring_check(const markov_spec& spec, std::vector<site> ring);

}  // namespace fieldline
