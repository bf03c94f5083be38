#include <algorithm>
#include <set>

#include "doctest.h"
#include "fieldline/markov.hpp"

using namespace fieldline;

TEST_CASE("pinned boundary rings screen the interior exactly") {
    markov_spec spec{make_square(6.0)};
    spec.beta = 0.3;
    spec.n_probes = 8;
    const markov_report rep = markov_boundary_check(spec);

    CHECK(rep.line_ring.ring.size() == 24);  // boundary of the 7x7 block
    CHECK(rep.line_ring.interior_sites == 25);
    CHECK(rep.line_ring.touching_bonds == 0);
    CHECK(rep.line_ring.deviation == 0.0);
    CHECK(rep.line_ring.probe_up > 0.0);
    CHECK(rep.line_ring.probe_up < 1.0);

    CHECK(rep.contour_ring.touching_bonds == 0);
    CHECK(rep.contour_ring.deviation == 0.0);
    CHECK(rep.contour_contains_line);

    // a flat-edged square digitizes to the same ring both ways
    const std::set<site> line(rep.line_ring.ring.begin(), rep.line_ring.ring.end());
    const std::set<site> contour(rep.contour_ring.ring.begin(), rep.contour_ring.ring.end());
    CHECK(line == contour);
    CHECK(std::is_sorted(rep.line_ring.ring.begin(), rep.line_ring.ring.end()));
}

TEST_CASE("the smallest square still screens its single interior site") {
    markov_spec spec{make_square(2.0)};
    spec.n_probes = 4;
    const markov_report rep = markov_boundary_check(spec);
    CHECK(rep.line_ring.ring.size() == 8);
    CHECK(rep.line_ring.interior_sites == 1);
    CHECK(rep.line_ring.deviation == 0.0);
}

TEST_CASE("free fields screen through any ring") {
    markov_spec spec{make_regular_polygon(8, 18.0)};
    spec.beta = 0.0;
    spec.n_probes = 6;
    const markov_report rep = markov_boundary_check(spec);
    CHECK(rep.line_ring.deviation == 0.0);
    CHECK(rep.contour_ring.deviation == 0.0);
}

TEST_CASE("a punctured ring leaks") {
    markov_spec spec{make_square(6.0)};
    spec.beta = 0.3;
    spec.n_probes = 8;
    const markov_report rep = markov_boundary_check(spec);
    std::vector<site> punctured = rep.line_ring.ring;
    punctured.erase(std::find(punctured.begin(), punctured.end(), site{3, 0}));
    const ring_check leak = custom_ring_check(spec, punctured);
    CHECK(leak.touching_bonds > 0);
    CHECK(leak.deviation > 1e-6);
}

TEST_CASE("oversized interiors are refused") {
    markov_spec spec{make_square(12.0)};
    CHECK_THROWS_AS(markov_boundary_check(spec), std::invalid_argument);

    markov_spec bad{make_square(6.0)};
    bad.n_probes = 1;
    CHECK_THROWS_AS(markov_boundary_check(bad), std::invalid_argument);

    markov_spec outside{make_square(6.0)};
    outside.n_probes = 4;
    outside.probe = site{100, 100};
    CHECK_THROWS_AS(markov_boundary_check(outside), std::invalid_argument);
}
