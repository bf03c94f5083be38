#include "fieldline/serialize.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fieldline {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_int(std::int64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_sites(std::ostream& out, const site_set& sites) {
    for (const site& s : sites.sites)
        out << format_int(s.x) << ' ' << format_int(s.y) << '\n';
}

site_set read_sites(std::istream& in, approx_kind kind) {
    site_set out;
    out.kind = kind;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        site s;
        if (!(row >> s.x >> s.y))
            throw std::invalid_argument("read_sites: expected two integers per line");
        out.sites.push_back(s);
    }
    return out;
}

void write_polygon_json(std::ostream& out, const polygon& poly) {
    json j;
    j["closed"] = poly.closed();
    j["vertices"] = json::array();
    for (const point& v : poly.vertices()) j["vertices"].push_back({v.x, v.y});
    out << j.dump(2) << '\n';
}

polygon read_polygon_json(std::istream& in) {
    try {
        json j = json::parse(in);
        if (!j.contains("vertices")) throw std::invalid_argument("polygon json: no vertices");
        std::vector<point> vertices;
        for (const auto& v : j.at("vertices"))
            vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        return polygon(std::move(vertices), j.value("closed", true));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("polygon json: ") + e.what());
    }
}

void write_curve_json(std::ostream& out, const curve& c) {
    json j;
    j["length"] = c.length();
    j["samples"] = json::array();
    for (const curve_sample& s : c.samples())
        j["samples"].push_back({{"t", s.t}, {"p", {s.p.x, s.p.y}}, {"d", {s.d.x, s.d.y}}});
    out << j.dump(2) << '\n';
}

curve read_curve_json(std::istream& in) {
    try {
        json j = json::parse(in);
        std::vector<curve_sample> samples;
        for (const auto& s : j.at("samples")) {
            curve_sample cs;
            cs.t = s.at("t").get<double>();
            cs.p = {s.at("p").at(0).get<double>(), s.at("p").at(1).get<double>()};
            cs.d = {s.at("d").at(0).get<double>(), s.at("d").at(1).get<double>()};
            samples.push_back(cs);
        }
        return curve(std::move(samples), j.at("length").get<double>());
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("curve json: ") + e.what());
    }
}

void write_snapshot(std::ostream& out, const configuration& config) {
    const region& w = config.window();
    std::string labels;
    for (int i = 0; i < config.alpha().size(); ++i) labels.push_back(config.alpha().label(i));
    out << format_int(w.width) << ' ' << format_int(w.height) << ' ' << format_int(w.x0) << ' '
        << format_int(w.y0) << '\n';
    out << "# " << json{{"alphabet", labels}}.dump() << '\n';
    for (std::int64_t y = w.y0 + w.height - 1; y >= w.y0; --y) {
        for (std::int64_t x = w.x0; x < w.x0 + w.width; ++x)
            out << config.alpha().label(config.at(x, y));
        out << '\n';
    }
}

configuration read_snapshot(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("snapshot: missing header line");
    std::istringstream head(line);
    std::int64_t width = 0, height = 0, x0 = 0, y0 = 0;
    if (!(head >> width >> height >> x0 >> y0) || width <= 0 || height <= 0)
        throw std::invalid_argument("snapshot: bad header line");
    // metadata comment lines between header and rows carry the alphabet
    std::string labels = "-+";
    while (in.peek() == '#') {
        if (!std::getline(in, line)) break;
        auto brace = line.find('{');
        if (brace == std::string::npos) continue;
        json meta = json::parse(line.substr(brace));
        if (meta.contains("alphabet")) labels = meta.at("alphabet").get<std::string>();
    }
    const alphabet alpha(labels);
    const region w{x0, y0, width, height};
    configuration config(w, alpha);
    for (std::int64_t y = w.y0 + w.height - 1; y >= w.y0; --y) {
        if (!std::getline(in, line) || static_cast<std::int64_t>(line.size()) != w.width)
            throw std::invalid_argument("snapshot: bad row length");
        for (std::int64_t x = w.x0; x < w.x0 + w.width; ++x)
            config.set(x, y, alpha.index(line[static_cast<std::size_t>(x - w.x0)]));
    }
    return config;
}

csv_writer::csv_writer(std::ostream& out, const std::vector<std::string>& columns)
    : out_(out), n_cols_(columns.size()) {
    if (columns.empty()) throw std::invalid_argument("csv_writer: no columns");
    row(columns);
}

void csv_writer::row(const std::vector<std::string>& cells) {
    if (cells.size() != n_cols_) throw std::invalid_argument("csv_writer: wrong cell count");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].find_first_of(",\n\"") != std::string::npos)
            throw std::invalid_argument("csv_writer: cell needs quoting, not supported");
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

std::map<std::string, std::string> read_config(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == first) {
            std::ostringstream msg;
            msg << "config line " << line_no << ": expected key=value";
            throw std::invalid_argument(msg.str());
        }
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream msg;
            msg << "config line " << line_no << ": empty key";
            throw std::invalid_argument(msg.str());
        }
        out[key] = value;
    }
    return out;
}

void write_config(std::ostream& out, const std::map<std::string, std::string>& entries) {
    for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
}

}  // namespace fieldline
