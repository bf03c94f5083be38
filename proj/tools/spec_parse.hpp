#pragma once

// Parsing of the small spec strings accepted on the fieldline command line
// (models, slopes, shapes, ranges) plus the config/sidecar plumbing.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fieldline/curve.hpp"
#include "fieldline/field.hpp"
#include "fieldline/geometry.hpp"
#include "fieldline/polygon.hpp"

namespace fieldline::cli {

// "p/q" is an exact fraction, anything else a plain real slope.
slope parse_slope(const std::string& text, axis ax);

// "a/b" keeps the intercept exact on the torus, decimals stay floating.
torus_point parse_intercept(const std::string& text);

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text);  // "lo:hi"
std::vector<std::int64_t> parse_int_list(const std::string& text);           // "a,b,c"
point parse_point(const std::string& text);                                  // "x,y"

// model specs: "iid:p0,p1[,...]" or "ising:beta[,field[,boundary]]"
field_model parse_model(const std::string& spec, const std::string& labels);

// shape specs used by several subcommands
struct shape_options {
    std::string kind = "square";  // square | kgon | file
    double area = 1.0;
    int k = 8;
    std::string file;
};
polygon build_shape(const shape_options& opt);

struct curve_options {
    std::string kind = "circle";  // circle | segment | file
    double radius = 1.0;
    std::string from = "1,1";  // segment endpoints; the trace must avoid the origin
    std::string to = "5,3";
    std::string file;
};
curve build_curve(const curve_options& opt);

// config files: flat key=value text, or a metadata sidecar whose "config"
// object holds the same keys
std::map<std::string, std::string> load_config(const std::string& path);

// sidecar written next to every file output; reading it back as --config
// reproduces the run
void write_sidecar(const std::string& out_path, const std::string& command,
                   const std::map<std::string, std::string>& config);

std::string human(double v);  // %.6g, the display format for stdout lines

}  // namespace fieldline::cli
