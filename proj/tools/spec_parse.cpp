#include "spec_parse.hpp"

#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fieldline/serialize.hpp"
#include "json.hpp"

namespace fieldline::cli {

namespace {

std::int64_t parse_ll(const std::string& text) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size())
        throw std::invalid_argument("not an integer: '" + text + "'");
    return v;
}

double parse_d(const std::string& text) {
    double v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size())
        throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

slope parse_slope(const std::string& text, axis ax) {
    auto pos = text.find('/');
    if (pos != std::string::npos) {
        std::int64_t p = parse_ll(text.substr(0, pos));
        std::int64_t q = parse_ll(text.substr(pos + 1));
        return slope::rational(p, q, ax);
    }
    return slope::irrational(parse_d(text), ax);
}

torus_point parse_intercept(const std::string& text) {
    auto pos = text.find('/');
    if (pos != std::string::npos) {
        std::int64_t p = parse_ll(text.substr(0, pos));
        std::int64_t q = parse_ll(text.substr(pos + 1));
        return torus_point{rat(p, q)};
    }
    return torus_point{parse_d(text)};
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    auto pos = text.find(':');
    if (pos == std::string::npos)
        throw std::invalid_argument("range must look like lo:hi, got '" + text + "'");
    std::int64_t lo = parse_ll(text.substr(0, pos));
    std::int64_t hi = parse_ll(text.substr(pos + 1));
    if (hi < lo) throw std::invalid_argument("range upper end below lower end");
    return {lo, hi};
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_ll(part));
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

point parse_point(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 2)
        throw std::invalid_argument("point must look like x,y, got '" + text + "'");
    return point{parse_d(parts[0]), parse_d(parts[1])};
}

field_model parse_model(const std::string& spec, const std::string& labels) {
    auto pos = spec.find(':');
    std::string head = spec.substr(0, pos);
    std::string tail = pos == std::string::npos ? std::string{} : spec.substr(pos + 1);
    if (head == "iid") {
        auto parts = split(tail, ',');
        if (parts.size() < 2)
            throw std::invalid_argument("iid model needs at least two probabilities");
        std::vector<double> probs;
        for (const auto& p : parts) probs.push_back(parse_d(p));
        std::string letters = labels;
        if (letters.empty()) {
            if (probs.size() == 2)
                letters = "-+";
            else if (probs.size() <= 16)
                letters = std::string("0123456789ABCDEF").substr(0, probs.size());
            else
                throw std::invalid_argument("supply --alphabet for more than 16 symbols");
        }
        if (letters.size() != probs.size())
            throw std::invalid_argument("alphabet size does not match probability count");
        return iid_model{alphabet{letters}, probs};
    }
    if (head == "ising") {
        if (!labels.empty())
            throw std::invalid_argument("--alphabet only applies to iid models");
        auto parts = split(tail, ',');
        if (parts.empty() || parts[0].empty())
            throw std::invalid_argument("ising model needs a coupling, e.g. ising:0.3");
        double beta = parse_d(parts[0]);
        double field = parts.size() > 1 ? parse_d(parts[1]) : 0.0;
        boundary_kind bc = boundary_kind::free;
        if (parts.size() > 2) bc = boundary_from_name(parts[2]);
        if (parts.size() > 3) throw std::invalid_argument("too many ising parameters");
        return ising_model{beta, field, bc};
    }
    throw std::invalid_argument("unknown model kind '" + head + "' (want iid or ising)");
}

polygon build_shape(const shape_options& opt) {
    if (opt.kind == "square") {
        if (!(opt.area > 0)) throw std::invalid_argument("shape area must be positive");
        return make_square(std::sqrt(opt.area));
    }
    if (opt.kind == "kgon") return make_regular_polygon(opt.k, opt.area);
    if (opt.kind == "file") {
        if (opt.file.empty()) throw std::invalid_argument("--shape file needs --shape-file");
        std::ifstream in(opt.file);
        if (!in) throw std::invalid_argument("cannot open shape file '" + opt.file + "'");
        return read_polygon_json(in);
    }
    throw std::invalid_argument("unknown shape kind '" + opt.kind + "'");
}

curve build_curve(const curve_options& opt) {
    if (opt.kind == "circle") {
        if (!(opt.radius > 0)) throw std::invalid_argument("circle radius must be positive");
        return make_circle(point{0, 0}, opt.radius);
    }
    if (opt.kind == "segment")
        return make_segment(parse_point(opt.from), parse_point(opt.to));
    if (opt.kind == "file") {
        if (opt.file.empty()) throw std::invalid_argument("--curve file needs --curve-file");
        std::ifstream in(opt.file);
        if (!in) throw std::invalid_argument("cannot open curve file '" + opt.file + "'");
        return read_curve_json(in);
    }
    throw std::invalid_argument("unknown curve kind '" + opt.kind + "'");
}

// ==== config files ====

std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        // a metadata sidecar; its config object holds the flags
        auto doc = nlohmann::json::parse(text);
        if (!doc.contains("config") || !doc["config"].is_object())
            throw std::invalid_argument("sidecar '" + path + "' has no config object");
        std::map<std::string, std::string> out;
        for (auto& [key, val] : doc["config"].items())
            out[key] = val.get<std::string>();
        return out;
    }
    std::istringstream flat(text);
    return read_config(flat);
}

void write_sidecar(const std::string& out_path, const std::string& command,
                   const std::map<std::string, std::string>& config) {
    nlohmann::json doc;
    doc["tool"] = "fieldline";
    doc["version"] = "0.1.0";
    doc["command"] = command;
    doc["rng"] = "mt19937_64, splitmix64 per-stream seeding";
    doc["assumes"] = "single ergodic phase; boundary condition selects the extremal measure";
    doc["config"] = nlohmann::json::object();
    for (const auto& [key, val] : config) doc["config"][key] = val;
    std::ofstream out(out_path + ".meta.json");
    if (!out) throw std::runtime_error("cannot write sidecar for '" + out_path + "'");
    out << doc.dump(2) << '\n';
}

std::string human(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace fieldline::cli
