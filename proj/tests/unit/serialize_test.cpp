#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fieldline/serialize.hpp"

using namespace fieldline;

TEST_CASE("site lists round trip in order") {
    site_set sites{approx_kind::contour, {{0, 0}, {1, 0}, {-2, 5}, {7, -3}}};
    std::ostringstream out;
    write_sites(out, sites);
    CHECK(out.str() == "0 0\n1 0\n-2 5\n7 -3\n");
    std::istringstream in(out.str());
    const site_set back = read_sites(in, approx_kind::contour);
    CHECK(back.sites == sites.sites);
    CHECK(back.kind == approx_kind::contour);

    std::istringstream bad("1 2\n3\n");
    CHECK_THROWS_AS(read_sites(bad), std::invalid_argument);
}

TEST_CASE("polygons round trip through json") {
    const polygon shape({{0.25, 0.5}, {4.0, 0.125}, {3.0, 3.0}, {-1.0, 2.5}}, true);
    std::ostringstream out;
    write_polygon_json(out, shape);
    std::istringstream in(out.str());
    const polygon back = read_polygon_json(in);
    REQUIRE(back.vertices().size() == shape.vertices().size());
    for (std::size_t i = 0; i < shape.vertices().size(); ++i) {
        CHECK(back.vertices()[i].x == shape.vertices()[i].x);
        CHECK(back.vertices()[i].y == shape.vertices()[i].y);
    }
    CHECK(back.closed());
    CHECK(back.area() == shape.area());

    std::istringstream junk("{\"vertices\": 3}");
    CHECK_THROWS_AS(read_polygon_json(junk), std::invalid_argument);
}

TEST_CASE("curves round trip through json") {
    const curve c = make_circle({0.5, -0.25}, 1.5, 64);
    std::ostringstream out;
    write_curve_json(out, c);
    std::istringstream in(out.str());
    const curve back = read_curve_json(in);
    CHECK(back.length() == c.length());
    CHECK(back.closed() == c.closed());
    for (double t : {0.0, 0.37 * c.length(), c.length()}) {
        CHECK(back.at(t).x == c.at(t).x);
        CHECK(back.at(t).y == c.at(t).y);
    }
}

TEST_CASE("snapshots carry their window and alphabet") {
    configuration config(region{-1, 2, 3, 2}, alphabet::binary());
    config.set(-1, 2, 1);
    config.set(0, 2, 0);
    config.set(1, 2, 1);
    config.set(-1, 3, 0);
    config.set(0, 3, 1);
    config.set(1, 3, 0);
    std::ostringstream out;
    write_snapshot(out, config);
    const std::string text = out.str();
    CHECK(text.substr(0, text.find('\n')) == "3 2 -1 2");
    CHECK(text.find("# {") != std::string::npos);
    CHECK(text.back() == '\n');

    std::istringstream in(text);
    const configuration back = read_snapshot(in);
    CHECK(back == config);

    std::istringstream bad("0 2 0 0\n");
    CHECK_THROWS_AS(read_snapshot(bad), std::invalid_argument);
    std::istringstream short_rows("2 2 0 0\n# {\"alphabet\":\"-+\"}\n+-\n");
    CHECK_THROWS_AS(read_snapshot(short_rows), std::invalid_argument);
}

TEST_CASE("doubles print in the shortest faithful form") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-3.0) == "-3");
    const double third = 1.0 / 3.0;
    CHECK(std::stod(format_double(third)) == third);
    const double messy = std::log(7.0);
    CHECK(std::stod(format_double(messy)) == messy);
    CHECK(format_int(-1234567890123LL) == "-1234567890123");
    CHECK(format_int(0) == "0");
}

TEST_CASE("csv tables enforce their shape") {
    std::ostringstream out;
    csv_writer csv(out, {"a", "b", "c"});
    csv.row({"1", "2", "3"});
    csv.row({"x", "0.5", "-7"});
    CHECK(out.str() == "a,b,c\n1,2,3\nx,0.5,-7\n");
    CHECK_THROWS_AS(csv.row({"1", "2"}), std::invalid_argument);
    CHECK_THROWS_AS(csv.row({"1", "2,3", "4"}), std::invalid_argument);
    CHECK(out.str().find('\r') == std::string::npos);
}

TEST_CASE("flat config text round trips and rejects junk") {
    std::map<std::string, std::string> entries{
        {"slope", "1/2"}, {"samples", "100000"}, {"out", "run.csv"}};
    std::ostringstream out;
    write_config(out, entries);
    std::istringstream in(out.str());
    CHECK(read_config(in) == entries);

    std::istringstream commented("# run settings\nslope=1/3\n\n# more\ndepth=4\n");
    const auto parsed = read_config(commented);
    CHECK(parsed.at("slope") == "1/3");
    CHECK(parsed.at("depth") == "4");
    CHECK(parsed.size() == 2);

    std::istringstream bad("slope 1/3\n");
    CHECK_THROWS_AS(read_config(bad), std::invalid_argument);
}
