#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fieldline/curve.hpp"
#include "fieldline/field.hpp"
#include "fieldline/geometry.hpp"
#include "fieldline/polygon.hpp"

namespace fieldline {

// Everything here is plain text with LF line endings, '.' decimal points and
// no timestamps, so identical inputs reproduce identical bytes.

// site lists: one "x y" pair per line
void write_sites(std::ostream& out, const site_set& sites);
site_set read_sites(std::istream& in, approx_kind kind = approx_kind::lattice);

void write_polygon_json(std::ostream& out, const polygon& poly);
polygon read_polygon_json(std::istream& in);

void write_curve_json(std::ostream& out, const curve& c);
curve read_curve_json(std::istream& in);

// window snapshot: a "W H x0 y0" header line, a '#'-prefixed JSON metadata
// line carrying the alphabet, then one row of labels per line, top row first
void write_snapshot(std::ostream& out, const configuration& config);
configuration read_snapshot(std::istream& in);

// shortest representations that parse back to the same value
std::string format_double(double v);
std::string format_int(std::int64_t v);

// comma-separated tables with a header row
class csv_writer {
public:
    csv_writer(std::ostream& out, const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

private:
    std::ostream& out_;
    std::size_t n_cols_;
};

// flat "key=value" configuration text; '#' starts a comment line
std::map<std::string, std::string> read_config(std::istream& in);
void write_config(std::ostream& out, const std::map<std::string, std::string>& entries);

}  // namespace fieldline
