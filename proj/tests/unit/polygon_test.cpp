#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "fieldline/curve.hpp"
#include "fieldline/polygon.hpp"

using namespace fieldline;

namespace {

std::set<std::pair<std::int64_t, std::int64_t>> as_set(const site_set& s) {
    std::set<std::pair<std::int64_t, std::int64_t>> out;
    for (const site& p : s.sites) out.insert({p.x, p.y});
    return out;
}

}  // namespace

// ==== polygon construction ====

TEST_CASE("polygon validates orientation and simplicity") {
    const polygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(square.closed());
    CHECK(square.area() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(square.perimeter() == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(square.edges().size() == 4);

    CHECK_THROWS_AS(polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), std::invalid_argument);  // clockwise
    CHECK_THROWS_AS(polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), std::invalid_argument);  // bowtie
    CHECK_THROWS_AS(polygon({{0, 0}, {1, 0}}), std::invalid_argument);                  // degenerate

    const polygon open({{0, 0}, {2, 0}, {2, 2}}, false);
    CHECK_FALSE(open.closed());
    CHECK(open.perimeter() == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(open.edges().size() == 2);
}

TEST_CASE("convenience shapes have the promised geometry") {
    const polygon sq = make_square(2.0);
    CHECK(sq.area() == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(sq.perimeter() == doctest::Approx(8.0).epsilon(1e-13));

    const polygon rect = make_rectangle(3.0, 1.5, {1.0, -2.0});
    CHECK(rect.area() == doctest::Approx(4.5).epsilon(1e-13));

    // K = 4 is the axis-aligned square of matching area
    const polygon kg = make_regular_polygon(4, 4.0);
    REQUIRE(kg.vertices().size() == 4);
    for (const point& v : kg.vertices()) {
        CHECK(std::abs(std::abs(v.x) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(v.y) - 1.0) < 1e-12);
    }
    CHECK(make_regular_polygon(6, 2.5).area() == doctest::Approx(2.5).epsilon(1e-12));
    CHECK_THROWS_AS(make_regular_polygon(2, 1.0), std::invalid_argument);
}

TEST_CASE("blowup scales lengths and areas") {
    const polygon p = make_regular_polygon(5, 2.0, {0.25, -0.5});
    const polygon q = p.blowup(2.0);
    CHECK(q.area() == doctest::Approx(4.0 * p.area()).epsilon(1e-12));
    // doubling is exact arithmetic all the way through the edge lengths
    for (std::size_t i = 0; i < p.edges().size(); ++i)
        CHECK(q.edges()[i].length == 2.0 * p.edges()[i].length);
    CHECK(q.perimeter() == doctest::Approx(2.0 * p.perimeter()).epsilon(1e-12));
}

TEST_CASE("locate classifies sites by the even-odd rule") {
    const polygon sq = make_square(6.0);
    CHECK(sq.locate(site{0, 0}) == point_location::inside);
    CHECK(sq.locate(site{3, 0}) == point_location::boundary);
    CHECK(sq.locate(site{4, 0}) == point_location::outside);
    CHECK(sq.contains(site{2, -2}));
    CHECK_FALSE(sq.contains(site{3, 3}));
}

// ==== boundary digitization ====

TEST_CASE("unit square digitizes to the box boundary") {
    const polygon unit({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const site_set ring = polygon_lattice_approx(unit, 3);
    CHECK(ring.size() == 12);
    std::set<std::pair<std::int64_t, std::int64_t>> want;
    for (std::int64_t x = 0; x <= 3; ++x)
        for (std::int64_t y = 0; y <= 3; ++y)
            if (x == 0 || x == 3 || y == 0 || y == 3) want.insert({x, y});
    CHECK(as_set(ring) == want);
}

TEST_CASE("centered square ring and its interior") {
    const site_set ring = polygon_lattice_approx(make_square(6.0), 1);
    CHECK(ring.size() == 24);
    std::set<std::pair<std::int64_t, std::int64_t>> want;
    for (std::int64_t x = -3; x <= 3; ++x)
        for (std::int64_t y = -3; y <= 3; ++y)
            if (std::abs(x) == 3 || std::abs(y) == 3) want.insert({x, y});
    CHECK(as_set(ring) == want);

    // contour digitization of axis edges adds nothing
    CHECK(as_set(polygon_contour_approx(make_square(6.0), 1)) == want);
}

TEST_CASE("triangle edges digitize in place") {
    const polygon tri({{0, 0}, {4, 0}, {4, 2}});
    const site_set ring = polygon_lattice_approx(tri, 1);
    const std::set<std::pair<std::int64_t, std::int64_t>> want{
        {0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {4, 1}, {4, 2}, {2, 1}, {3, 1}};
    CHECK(as_set(ring) == want);
    // the hypotenuse follows its own floor chain, not a translated template
    CHECK(as_set(ring).count({2, 1}) == 1);
    CHECK(as_set(ring).count({3, 1}) == 1);
}

TEST_CASE("corner sites are not repeated") {
    for (int k = 3; k <= 9; ++k) {
        const site_set ring = polygon_lattice_approx(make_regular_polygon(k, 30.0), 2);
        std::set<std::pair<std::int64_t, std::int64_t>> seen;
        for (const site& s : ring.sites) {
            CHECK(seen.count({s.x, s.y}) == 0);
            seen.insert({s.x, s.y});
        }
    }
}

TEST_CASE("recognize_slope separates fractions from the rest") {
    const slope half = recognize_slope(0.5, axis::x);
    REQUIRE(half.is_rational());
    CHECK(half.p() == 1);
    CHECK(half.q() == 2);

    const slope third = recognize_slope(1.0 / 3.0, axis::x);
    REQUIRE(third.is_rational());
    CHECK(third.q() == 3);

    CHECK_FALSE(recognize_slope(std::sqrt(2.0) - 1.0, axis::x).is_rational());
    CHECK(recognize_slope(-0.25, axis::y).p() == -1);
}

// ==== curves ====

TEST_CASE("segments are parametrized by arc length") {
    const curve seg = make_segment({1, 1}, {5, 3});
    const double len = std::sqrt(20.0);
    CHECK(seg.length() == doctest::Approx(len).epsilon(1e-13));
    CHECK_FALSE(seg.closed());

    const point mid = seg.at(0.5 * len);
    CHECK(mid.x == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(mid.y == doctest::Approx(2.0).epsilon(1e-12));

    const point tan = seg.tangent(0.3 * len);
    CHECK(std::hypot(tan.x, tan.y) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tan.x == doctest::Approx(4.0 / len).epsilon(1e-12));

    // traces through the origin have no blowup-stable direction data
    CHECK_THROWS_AS(make_segment({0, 0}, {4, 2}), std::invalid_argument);
}

TEST_CASE("circles close up with unit speed") {
    const curve circ = make_circle({1.0, 2.0}, 3.0);
    CHECK(circ.closed());
    CHECK(std::abs(circ.length() - 2.0 * 3.141592653589793 * 3.0) < 1e-3);
    for (double f : {0.0, 0.17, 0.5, 0.83}) {
        const point t = circ.tangent(f * circ.length());
        CHECK(std::hypot(t.x, t.y) == doctest::Approx(1.0).epsilon(1e-9));
        const point p = circ.at(f * circ.length());
        CHECK(std::hypot(p.x - 1.0, p.y - 2.0) == doctest::Approx(3.0).epsilon(1e-4));
    }
}

TEST_CASE("polygonize tracks tangents") {
    const curve seg = make_segment({1, 2}, {4, 3});
    const polygonize_result chords = polygonize(seg, 4);
    CHECK(chords.tangent_deviation == 0.0);
    CHECK_FALSE(chords.poly.closed());
    CHECK(chords.poly.vertices().size() == 5);

    const curve circ = make_circle({0, 0}, 2.0);
    const polygonize_result coarse = polygonize(circ, 8);
    const polygonize_result fine = polygonize(circ, 64);
    CHECK(fine.tangent_deviation < coarse.tangent_deviation);
    CHECK(fine.poly.closed());
    CHECK(fine.poly.area() == doctest::Approx(4.0 * 3.141592653589793).epsilon(0.01));
}

TEST_CASE("curve blowup doubles exactly") {
    const curve circ = make_circle({0.5, -0.25}, 1.5, 128);
    const curve big = circ.blowup(2.0);
    CHECK(big.length() == 2.0 * circ.length());
    const point a = circ.at(0.4 * circ.length());
    const point b = big.at(0.8 * circ.length());
    CHECK(b.x == 2.0 * a.x);
    CHECK(b.y == 2.0 * a.y);
}
