// fieldline: command line front end for the surface entropy library.
//
// Every subcommand resolves its inputs as flags > config file > defaults,
// prints a short key/value summary on stdout and, when --out is given,
// writes the full table plus a .meta.json sidecar that reproduces the run.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "fieldline/bound.hpp"
#include "fieldline/convergence.hpp"
#include "fieldline/curve.hpp"
#include "fieldline/entropy.hpp"
#include "fieldline/field.hpp"
#include "fieldline/geometry.hpp"
#include "fieldline/markov.hpp"
#include "fieldline/polygon.hpp"
#include "fieldline/rng.hpp"
#include "fieldline/sampler.hpp"
#include "fieldline/serialize.hpp"
#include "spec_parse.hpp"

namespace fl = fieldline;
using fl::cli::human;

namespace {

// ==========================================================================
// small helpers
// ==========================================================================

fl::axis parse_axis(const std::string& text) {
    if (text == "x") return fl::axis::x;
    if (text == "y") return fl::axis::y;
    throw std::invalid_argument("axis must be x or y, got '" + text + "'");
}

std::pair<double, double> parse_double_range(const std::string& text) {
    auto pos = text.find(':');
    if (pos == std::string::npos)
        throw std::invalid_argument("interval must look like lo:hi, got '" + text + "'");
    double lo = std::stod(text.substr(0, pos));
    double hi = std::stod(text.substr(pos + 1));
    return {lo, hi};
}

std::string flatten(std::string text) {
    std::replace(text.begin(), text.end(), '\n', ';');
    return text;
}

// canonical string map fed to the sidecar; reading it back as --config
// reproduces the run
struct cfg_map {
    std::map<std::string, std::string> entries;

    void put(const std::string& k, const std::string& v) { entries[k] = v; }
    void put(const std::string& k, const char* v) { entries[k] = v; }
    void put(const std::string& k, std::int64_t v) { entries[k] = fl::format_int(v); }
    void put(const std::string& k, int v) { entries[k] = fl::format_int(v); }
    void put(const std::string& k, std::uint64_t v) { entries[k] = std::to_string(v); }
    void put(const std::string& k, double v) { entries[k] = fl::format_double(v); }
    void put(const std::string& k, bool v) { entries[k] = v ? "1" : "0"; }
};

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << body;
}

// ==========================================================================
// shared flag blocks
// ==========================================================================

struct est_flags {
    int depth = 6;
    std::int64_t samples = 20000;
    int grid = 32;
    int window = 48;
    int margin = -1;
    double pseudocount = 0.5;
    std::uint64_t seed = 1;
    int replicas = 8;
    std::int64_t burn_in = 1000;
    std::int64_t thinning = 2;
    bool force_mc = false;
    bool no_bias = false;
};

void add_est(CLI::App* cmd, est_flags& f) {
    cmd->add_option("--depth", f.depth, "conditioning depth along the line");
    cmd->add_option("--samples", f.samples, "pattern observations per torus point");
    cmd->add_option("--grid", f.grid, "quadrature grid size for plain real slopes");
    cmd->add_option("--window", f.window, "field sampling window side");
    cmd->add_option("--margin", f.margin, "window exclusion margin, -1 picks depth + 8");
    cmd->add_option("--pseudocount", f.pseudocount, "additive smoothing of the tables");
    cmd->add_option("--seed", f.seed, "sampler seed");
    cmd->add_option("--replicas", f.replicas, "independent chains for the error bars");
    cmd->add_option("--burn-in", f.burn_in, "burn-in sweeps per chain");
    cmd->add_option("--thinning", f.thinning, "sweeps between snapshots");
    cmd->add_flag("--force-mc", f.force_mc, "sample product fields instead of closed forms");
    cmd->add_flag("--no-bias-correction", f.no_bias, "disable the jackknife bias correction");
}

fl::estimation_options make_options(const est_flags& f) {
    fl::estimation_options opt;
    opt.sampler.seed = f.seed;
    opt.sampler.burn_in_sweeps = f.burn_in;
    opt.sampler.thinning_sweeps = f.thinning;
    opt.sampler.replicas = f.replicas;
    opt.window = f.window;
    opt.margin = f.margin;
    opt.pseudocount = f.pseudocount;
    opt.quadrature_points = f.grid;
    opt.bias_correction = !f.no_bias;
    opt.force_monte_carlo = f.force_mc;
    return opt;
}

void dump_est(cfg_map& m, const est_flags& f) {
    m.put("depth", f.depth);
    m.put("samples", f.samples);
    m.put("grid", f.grid);
    m.put("window", f.window);
    m.put("margin", f.margin);
    m.put("pseudocount", f.pseudocount);
    m.put("seed", f.seed);
    m.put("replicas", f.replicas);
    m.put("burn-in", f.burn_in);
    m.put("thinning", f.thinning);
    m.put("force-mc", f.force_mc);
    m.put("no-bias-correction", f.no_bias);
}

struct shape_flags {
    fl::cli::shape_options opt;
    void add(CLI::App* cmd) {
        cmd->add_option("--shape", opt.kind, "square | kgon | file");
        cmd->add_option("--area", opt.area, "target shape area");
        cmd->add_option("--k", opt.k, "vertex count for --shape kgon");
        cmd->add_option("--shape-file", opt.file, "polygon JSON for --shape file");
    }
    void dump(cfg_map& m) const {
        m.put("shape", opt.kind);
        m.put("area", opt.area);
        m.put("k", opt.k);
        if (!opt.file.empty()) m.put("shape-file", opt.file);
    }
};

struct curve_flags {
    fl::cli::curve_options opt;
    int chords = 64;
    void add(CLI::App* cmd) {
        cmd->add_option("--curve", opt.kind, "circle | segment | file");
        cmd->add_option("--radius", opt.radius, "circle radius");
        cmd->add_option("--from", opt.from, "segment start x,y");
        cmd->add_option("--to", opt.to, "segment end x,y");
        cmd->add_option("--curve-file", opt.file, "curve JSON for --curve file");
        cmd->add_option("--chords", chords, "chord count of the polygon approximation");
    }
    void dump(cfg_map& m) const {
        m.put("curve", opt.kind);
        m.put("radius", opt.radius);
        m.put("from", opt.from);
        m.put("to", opt.to);
        if (!opt.file.empty()) m.put("curve-file", opt.file);
        m.put("chords", chords);
    }
};

// constant-plus-curvature closed form, or a memoized line entropy oracle
struct cost_flags {
    std::string model;
    std::string labels;
    double cost_const = 1.0;
    double cost_curv = 0.0;
    double cost_grid = 1.0;

    void add(CLI::App* cmd) {
        cmd->add_option("--model", model, "estimate the edge cost from this field");
        cmd->add_option("--alphabet", labels, "symbol labels for iid models");
        cmd->add_option("--entropy-const", cost_const, "closed form: axis entropy constant");
        cmd->add_option("--cost-curv", cost_curv, "closed form: quadratic slope penalty");
        cmd->add_option("--cost-grid", cost_grid, "oracle cache bucket width in degrees");
    }
    void dump(cfg_map& m) const {
        if (!model.empty()) m.put("model", model);
        if (!labels.empty()) m.put("alphabet", labels);
        m.put("entropy-const", cost_const);
        m.put("cost-curv", cost_curv);
        m.put("cost-grid", cost_grid);
    }
};

fl::direction_cost make_cost(const cost_flags& cf, const est_flags& ef) {
    if (cf.model.empty()) {
        const double c = cf.cost_const, w = cf.cost_curv;
        if (!std::isfinite(c) || c < 0 || !std::isfinite(w))
            throw std::invalid_argument("cost parameters must be finite, axis cost nonnegative");
        return [c, w](const fl::direction& d) { return c * (1.0 + w * d.lambda * d.lambda); };
    }
    fl::field_model model = fl::cli::parse_model(cf.model, cf.labels);
    const auto opt = make_options(ef);
    const int depth = ef.depth;
    const std::int64_t samples = ef.samples;
    fl::direction_cost base = [model, depth, samples, opt](const fl::direction& d) {
        return fl::line_entropy(model, fl::recognize_slope(d.lambda, d.axis), depth, samples, opt)
            .value;
    };
    return fl::memoize_cost(std::move(base), cf.cost_grid);
}

// ==========================================================================
// output shapes
// ==========================================================================

void print_estimate(const fl::entropy_estimate& est, bool bits) {
    const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
    std::cout << "value " << human(est.value * scale) << " std_error "
              << human(est.std_error * scale) << '\n';
    if (est.method == fl::estimate_method::quadrature)
        std::cout << "quadrature_points " << est.quadrature_points << " spread "
                  << human(est.quadrature_spread * scale) << '\n';
    if (est.low_accuracy) std::cout << "low_accuracy 1\n";
    if (est.smoothing_fallback) std::cout << "smoothing_fallback 1\n";
}

// the shared result schema of the entropy experiments; values stay in nats
std::string entropy_csv(const std::string& id, std::int64_t n_or_m,
                        const fl::entropy_estimate& est, std::uint64_t seed) {
    std::ostringstream out;
    fl::csv_writer csv(out, {"experiment_id", "n_or_M", "depth", "value_nats", "std_error",
                             "samples", "seed"});
    csv.row({id, fl::format_int(n_or_m), fl::format_int(est.depth), fl::format_double(est.value),
             fl::format_double(est.std_error), fl::format_int(est.samples),
             fl::format_int(static_cast<std::int64_t>(seed))});
    return out.str();
}

std::int64_t slope_points(const fl::slope& s, int grid) {
    return s.is_rational() ? s.q() : grid;
}

void finish(const std::string& out, const std::string& body, const std::string& command,
            const cfg_map& cfg) {
    if (out.empty()) return;
    write_file(out, body);
    fl::cli::write_sidecar(out, command, cfg.entries);
}

}  // namespace

// ==========================================================================
// main
// ==========================================================================

int main(int argc, char** argv) {
    CLI::App app{"digitized-line entropies, surface bounds and shape optimization\n"
                 "for planar random fields"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    // ---- geometry ----
    struct {
        std::string slope, ax = "x", intercept = "0", mode = "lattice", range = "0:16";
        std::string band = "0:0.5", start = "0";
        std::int64_t steps = 100000, blow = 10000;
        std::string out;
    } geo;
    auto* geo_cmd = app.add_subcommand("geometry", "digitize lines and inspect torus orbits");
    geo_cmd->add_option("--slope", geo.slope, "line slope, fraction p/q or plain real")->required();
    geo_cmd->add_option("--axis", geo.ax, "reference axis of the slope");
    geo_cmd->add_option("--intercept", geo.intercept, "line intercept, fraction or real");
    geo_cmd->add_option("--mode", geo.mode, "lattice | contour | ratio | freq");
    geo_cmd->add_option("--range", geo.range, "parameter range lo:hi");
    geo_cmd->add_option("--band", geo.band, "freq mode: torus interval lo:hi");
    geo_cmd->add_option("--start", geo.start, "freq mode: orbit start");
    geo_cmd->add_option("--steps", geo.steps, "freq mode: orbit length");
    geo_cmd->add_option("--blowup", geo.blow, "ratio mode: segment blowup factor");
    geo_cmd->add_option("--out", geo.out, "write the site list here instead of stdout");
    geo_cmd->callback([&] {
        const fl::axis ax = parse_axis(geo.ax);
        const fl::slope s = fl::cli::parse_slope(geo.slope, ax);
        const fl::linear_map map(s, fl::cli::parse_intercept(geo.intercept));
        std::ostringstream body;
        if (geo.mode == "lattice" || geo.mode == "contour") {
            auto [lo, hi] = fl::cli::parse_range(geo.range);
            const fl::site_set sites = geo.mode == "lattice" ? fl::lattice_approx(map, lo, hi)
                                                             : fl::contour_approx(map, lo, hi);
            fl::write_sites(body, sites);
        } else if (geo.mode == "ratio") {
            auto [lo, hi] = fl::cli::parse_range(geo.range);
            const double r = fl::ratio_lattice_to_length(s.value(), geo.blow,
                                                         static_cast<double>(lo),
                                                         static_cast<double>(hi));
            const double expected = 1.0 / std::sqrt(1.0 + s.value() * s.value());
            body << "ratio " << human(r) << " expected " << human(expected) << '\n';
        } else if (geo.mode == "freq") {
            auto [lo, hi] = parse_double_range(geo.band);
            const double f = fl::equidistribution_check(s, fl::cli::parse_intercept(geo.start),
                                                        lo, hi, geo.steps);
            body << "freq " << human(f) << " band " << human(hi - lo) << '\n';
        } else {
            throw std::invalid_argument("unknown geometry mode '" + geo.mode + "'");
        }
        cfg_map cfg;
        cfg.put("slope", geo.slope);
        cfg.put("axis", geo.ax);
        cfg.put("intercept", geo.intercept);
        cfg.put("mode", geo.mode);
        cfg.put("range", geo.range);
        cfg.put("band", geo.band);
        cfg.put("start", geo.start);
        cfg.put("steps", geo.steps);
        cfg.put("blowup", geo.blow);
        cfg.put("out", geo.out);
        if (geo.out.empty())
            std::cout << body.str();
        else
            finish(geo.out, body.str(), "geometry", cfg);
    });

    // ---- sample ----
    struct {
        std::string model, labels;
        std::int64_t width = 16, height = 16, x0 = 0, y0 = 0;
        int count = 1;
        std::int64_t replica = 0;
        std::uint64_t seed = 1;
        std::int64_t burn_in = 1000, thinning = 2;
        std::string out;
    } smp;
    auto* smp_cmd = app.add_subcommand("sample", "draw field snapshots on a window");
    smp_cmd->add_option("--model", smp.model, "iid:p0,p1,... or ising:beta[,field[,boundary]]")
        ->required();
    smp_cmd->add_option("--alphabet", smp.labels, "symbol labels for iid models");
    smp_cmd->add_option("--width", smp.width, "window width");
    smp_cmd->add_option("--height", smp.height, "window height");
    smp_cmd->add_option("--x0", smp.x0, "window lower left x");
    smp_cmd->add_option("--y0", smp.y0, "window lower left y");
    smp_cmd->add_option("--count", smp.count, "snapshots to emit");
    smp_cmd->add_option("--replica", smp.replica, "stream id of the chain");
    smp_cmd->add_option("--seed", smp.seed, "sampler seed");
    smp_cmd->add_option("--burn-in", smp.burn_in, "burn-in sweeps");
    smp_cmd->add_option("--thinning", smp.thinning, "sweeps between snapshots");
    smp_cmd->add_option("--out", smp.out, "write snapshots here instead of stdout");
    smp_cmd->callback([&] {
        const fl::field_model model = fl::cli::parse_model(smp.model, smp.labels);
        const fl::region window{smp.x0, smp.y0, smp.width, smp.height};
        if (smp.count < 1) throw std::invalid_argument("--count must be positive");
        std::ostringstream body;
        if (fl::is_iid(model)) {
            fl::rng_stream rng(smp.seed, static_cast<std::uint64_t>(smp.replica));
            for (int i = 0; i < smp.count; ++i)
                fl::write_snapshot(body, fl::sample_iid(std::get<fl::iid_model>(model), window, rng));
        } else {
            fl::sampler_config cfg;
            cfg.seed = smp.seed;
            cfg.burn_in_sweeps = smp.burn_in;
            cfg.thinning_sweeps = smp.thinning;
            cfg.validate();
            fl::gibbs_sampler chain(std::get<fl::ising_model>(model), window, cfg,
                                    static_cast<std::uint64_t>(smp.replica));
            chain.run_burn_in();
            for (int i = 0; i < smp.count; ++i) {
                chain.next();
                fl::write_snapshot(body, chain.snapshot());
            }
        }
        cfg_map cfg;
        cfg.put("model", smp.model);
        if (!smp.labels.empty()) cfg.put("alphabet", smp.labels);
        cfg.put("width", smp.width);
        cfg.put("height", smp.height);
        cfg.put("x0", smp.x0);
        cfg.put("y0", smp.y0);
        cfg.put("count", smp.count);
        cfg.put("replica", smp.replica);
        cfg.put("seed", smp.seed);
        cfg.put("burn-in", smp.burn_in);
        cfg.put("thinning", smp.thinning);
        cfg.put("out", smp.out);
        if (smp.out.empty())
            std::cout << body.str();
        else
            finish(smp.out, body.str(), "sample", cfg);
    });

    // ---- line-entropy ----
    struct {
        std::string model, labels, slope, ax = "x", out;
        est_flags est;
        bool bits = false;
    } lin;
    auto* lin_cmd = app.add_subcommand("line-entropy", "entropy per step along a digitized line");
    lin_cmd->add_option("--model", lin.model, "field model spec")->required();
    lin_cmd->add_option("--alphabet", lin.labels, "symbol labels for iid models");
    lin_cmd->add_option("--slope", lin.slope, "fraction p/q or plain real")->required();
    lin_cmd->add_option("--axis", lin.ax, "reference axis of the slope");
    add_est(lin_cmd, lin.est);
    lin_cmd->add_flag("--bits", lin.bits, "display in bits (files stay in nats)");
    lin_cmd->add_option("--out", lin.out, "result CSV path");
    lin_cmd->callback([&] {
        const fl::field_model model = fl::cli::parse_model(lin.model, lin.labels);
        const fl::slope s = fl::cli::parse_slope(lin.slope, parse_axis(lin.ax));
        const auto est = fl::line_entropy(model, s, lin.est.depth, lin.est.samples,
                                          make_options(lin.est));
        print_estimate(est, lin.bits);
        cfg_map cfg;
        cfg.put("model", lin.model);
        if (!lin.labels.empty()) cfg.put("alphabet", lin.labels);
        cfg.put("slope", lin.slope);
        cfg.put("axis", lin.ax);
        dump_est(cfg, lin.est);
        cfg.put("bits", lin.bits);
        cfg.put("out", lin.out);
        finish(lin.out, entropy_csv("line-entropy", slope_points(s, lin.est.grid), est,
                                    lin.est.seed),
               "line-entropy", cfg);
    });

    // ---- polygon-entropy ----
    struct {
        std::string model, labels, out;
        shape_flags shape;
        est_flags est;
        bool bits = false;
    } pol;
    auto* pol_cmd =
        app.add_subcommand("polygon-entropy", "length-weighted entropy over the edge directions");
    pol_cmd->add_option("--model", pol.model, "field model spec")->required();
    pol_cmd->add_option("--alphabet", pol.labels, "symbol labels for iid models");
    pol.shape.add(pol_cmd);
    add_est(pol_cmd, pol.est);
    pol_cmd->add_flag("--bits", pol.bits, "display in bits (files stay in nats)");
    pol_cmd->add_option("--out", pol.out, "result CSV path");
    pol_cmd->callback([&] {
        const fl::field_model model = fl::cli::parse_model(pol.model, pol.labels);
        const fl::polygon shape = fl::cli::build_shape(pol.shape.opt);
        const auto est = fl::polygon_entropy(model, shape, pol.est.depth, pol.est.samples,
                                             make_options(pol.est));
        print_estimate(est, pol.bits);
        cfg_map cfg;
        cfg.put("model", pol.model);
        if (!pol.labels.empty()) cfg.put("alphabet", pol.labels);
        pol.shape.dump(cfg);
        dump_est(cfg, pol.est);
        cfg.put("bits", pol.bits);
        cfg.put("out", pol.out);
        finish(pol.out, entropy_csv("polygon-entropy", est.quadrature_points, est, pol.est.seed),
               "polygon-entropy", cfg);
    });

    // ---- curve-entropy ----
    struct {
        std::string model, labels, out;
        curve_flags crv;
        est_flags est;
        bool bits = false;
    } cur;
    auto* cur_cmd =
        app.add_subcommand("curve-entropy", "entropy of a curve via its chord polygon");
    cur_cmd->add_option("--model", cur.model, "field model spec")->required();
    cur_cmd->add_option("--alphabet", cur.labels, "symbol labels for iid models");
    cur.crv.add(cur_cmd);
    add_est(cur_cmd, cur.est);
    cur_cmd->add_flag("--bits", cur.bits, "display in bits (files stay in nats)");
    cur_cmd->add_option("--out", cur.out, "result CSV path");
    cur_cmd->callback([&] {
        const fl::field_model model = fl::cli::parse_model(cur.model, cur.labels);
        const fl::curve c = fl::cli::build_curve(cur.crv.opt);
        double tangent = 0.0;
        const auto est = fl::curve_entropy(model, c, cur.crv.chords, cur.est.depth,
                                           cur.est.samples, make_options(cur.est), &tangent);
        print_estimate(est, cur.bits);
        std::cout << "tangent_deviation " << human(tangent) << '\n';
        cfg_map cfg;
        cfg.put("model", cur.model);
        if (!cur.labels.empty()) cfg.put("alphabet", cur.labels);
        cur.crv.dump(cfg);
        dump_est(cfg, cur.est);
        cfg.put("bits", cur.bits);
        cfg.put("out", cur.out);
        finish(cur.out, entropy_csv("curve-entropy", cur.crv.chords, est, cur.est.seed),
               "curve-entropy", cfg);
    });

    // ---- contour-entropy ----
    struct {
        std::string model, labels, slope, out;
        est_flags est;
        bool bits = false;
    } con;
    auto* con_cmd =
        app.add_subcommand("contour-entropy", "entropy per step of the gap-filled contour chain");
    con_cmd->add_option("--model", con.model, "field model spec")->required();
    con_cmd->add_option("--alphabet", con.labels, "symbol labels for iid models");
    con_cmd->add_option("--slope", con.slope, "slope in [0, 1], fraction or real")->required();
    add_est(con_cmd, con.est);
    con_cmd->add_flag("--bits", con.bits, "display in bits (files stay in nats)");
    con_cmd->add_option("--out", con.out, "result CSV path");
    con_cmd->callback([&] {
        const fl::field_model model = fl::cli::parse_model(con.model, con.labels);
        const double lambda = fl::cli::parse_slope(con.slope, fl::axis::x).value();
        const auto est = fl::contour_line_entropy(model, lambda, con.est.depth, con.est.samples,
                                                  make_options(con.est));
        print_estimate(est, con.bits);
        cfg_map cfg;
        cfg.put("model", con.model);
        if (!con.labels.empty()) cfg.put("alphabet", con.labels);
        cfg.put("slope", con.slope);
        dump_est(cfg, con.est);
        cfg.put("bits", con.bits);
        cfg.put("out", con.out);
        finish(con.out, entropy_csv("contour-entropy", est.quadrature_points, est, con.est.seed),
               "contour-entropy", cfg);
    });

    // ---- rel-entropy ----
    struct {
        std::string base, other, labels, kind = "specific", slope = "0", ax = "x", out;
        curve_flags crv;
        est_flags est;
        bool bits = false;
    } rel;
    auto* rel_cmd =
        app.add_subcommand("rel-entropy", "relative entropy rate between two fields");
    rel_cmd->add_option("--base", rel.base, "field the samples come from")->required();
    rel_cmd->add_option("--other", rel.other, "field the likelihood is compared against")
        ->required();
    rel_cmd->add_option("--alphabet", rel.labels, "symbol labels for iid models");
    rel_cmd->add_option("--kind", rel.kind, "specific | line | curve");
    rel_cmd->add_option("--slope", rel.slope, "line kind: slope spec");
    rel_cmd->add_option("--axis", rel.ax, "line kind: reference axis");
    rel.crv.add(rel_cmd);
    add_est(rel_cmd, rel.est);
    rel_cmd->add_flag("--bits", rel.bits, "display in bits (files stay in nats)");
    rel_cmd->add_option("--out", rel.out, "result CSV path");
    rel_cmd->callback([&] {
        const fl::field_model base = fl::cli::parse_model(rel.base, rel.labels);
        const fl::field_model other = fl::cli::parse_model(rel.other, rel.labels);
        const auto opt = make_options(rel.est);
        fl::entropy_estimate est;
        std::int64_t n_or_m = 0;
        if (rel.kind == "specific") {
            est = fl::specific_relative_entropy(base, other, rel.est.depth, rel.est.samples, opt);
            n_or_m = 1;
        } else if (rel.kind == "line") {
            const fl::slope s = fl::cli::parse_slope(rel.slope, parse_axis(rel.ax));
            est = fl::relative_line_entropy(base, other, s, rel.est.depth, rel.est.samples, opt);
            n_or_m = slope_points(s, rel.est.grid);
        } else if (rel.kind == "curve") {
            const fl::curve c = fl::cli::build_curve(rel.crv.opt);
            double tangent = 0.0;
            est = fl::relative_entropy_curve(base, other, c, rel.crv.chords, rel.est.depth,
                                             rel.est.samples, opt, &tangent);
            n_or_m = rel.crv.chords;
        } else {
            throw std::invalid_argument("unknown rel-entropy kind '" + rel.kind + "'");
        }
        print_estimate(est, rel.bits);
        cfg_map cfg;
        cfg.put("base", rel.base);
        cfg.put("other", rel.other);
        if (!rel.labels.empty()) cfg.put("alphabet", rel.labels);
        cfg.put("kind", rel.kind);
        cfg.put("slope", rel.slope);
        cfg.put("axis", rel.ax);
        rel.crv.dump(cfg);
        dump_est(cfg, rel.est);
        cfg.put("bits", rel.bits);
        cfg.put("out", rel.out);
        finish(rel.out, entropy_csv("rel-entropy-" + rel.kind, n_or_m, est, rel.est.seed),
               "rel-entropy", cfg);
    });

    // ---- converge ----
    struct {
        std::string model, labels, slope, ax = "x", intercept = "0", n_list = "100,400,1600";
        std::int64_t draws = 100;
        est_flags est;
        std::string out;
    } cnv;
    auto* cnv_cmd = app.add_subcommand(
        "converge", "per-site information of line samples across growing lengths");
    cnv_cmd->add_option("--model", cnv.model, "field model spec")->required();
    cnv_cmd->add_option("--alphabet", cnv.labels, "symbol labels for iid models");
    cnv_cmd->add_option("--slope", cnv.slope, "fraction p/q or plain real")->required();
    cnv_cmd->add_option("--axis", cnv.ax, "reference axis of the slope");
    cnv_cmd->add_option("--intercept", cnv.intercept, "line intercept, fraction or real");
    cnv_cmd->add_option("--n-list", cnv.n_list, "comma list of line lengths");
    cnv_cmd->add_option("--draws", cnv.draws, "line samples per length");
    add_est(cnv_cmd, cnv.est);
    cnv_cmd->add_option("--out", cnv.out, "convergence table CSV path");
    cnv_cmd->callback([&] {
        const fl::field_model model = fl::cli::parse_model(cnv.model, cnv.labels);
        const fl::slope s = fl::cli::parse_slope(cnv.slope, parse_axis(cnv.ax));
        const fl::linear_map line(s, fl::cli::parse_intercept(cnv.intercept));
        auto opt = make_options(cnv.est);
        opt.info_samples = cnv.draws;
        const auto rows = fl::convergence_experiment(model, line, fl::cli::parse_int_list(cnv.n_list),
                                                     cnv.est.depth, cnv.est.samples, opt);
        std::ostringstream table;
        fl::csv_writer csv(table, {"n", "mean", "spread", "std_error", "draws"});
        for (const auto& r : rows) {
            std::cout << "n " << r.n << " mean " << human(r.mean) << " spread " << human(r.spread)
                      << " std_error " << human(r.std_error) << " draws " << r.draws << '\n';
            csv.row({fl::format_int(r.n), fl::format_double(r.mean), fl::format_double(r.spread),
                     fl::format_double(r.std_error), fl::format_int(r.draws)});
        }
        cfg_map cfg;
        cfg.put("model", cnv.model);
        if (!cnv.labels.empty()) cfg.put("alphabet", cnv.labels);
        cfg.put("slope", cnv.slope);
        cfg.put("axis", cnv.ax);
        cfg.put("intercept", cnv.intercept);
        cfg.put("n-list", cnv.n_list);
        cfg.put("draws", cnv.draws);
        dump_est(cfg, cnv.est);
        cfg.put("out", cnv.out);
        finish(cnv.out, table.str(), "converge", cfg);
    });

    // ---- bound ----
    struct {
        shape_flags shape;
        cost_flags cost;
        est_flags est;
        std::string out;
    } bnd;
    auto* bnd_cmd =
        app.add_subcommand("bound", "surface bound of a shape under a directional cost");
    bnd.shape.add(bnd_cmd);
    bnd.cost.add(bnd_cmd);
    add_est(bnd_cmd, bnd.est);
    bnd_cmd->add_option("--out", bnd.out, "per-edge CSV path (summary JSON lands next to it)");
    bnd_cmd->callback([&] {
        const fl::polygon shape = fl::cli::build_shape(bnd.shape.opt);
        const fl::direction_cost cost = make_cost(bnd.cost, bnd.est);
        const double gamma = fl::bound_functional(shape, cost);
        std::cout << "gamma " << human(gamma) << '\n';
        cfg_map cfg;
        bnd.shape.dump(cfg);
        bnd.cost.dump(cfg);
        dump_est(cfg, bnd.est);
        cfg.put("out", bnd.out);
        if (!bnd.out.empty()) {
            std::ostringstream table;
            fl::csv_writer csv(table, {"edge", "lambda", "factor", "length", "h", "contribution"});
            const auto& edges = shape.edges();
            for (std::size_t i = 0; i < edges.size(); ++i) {
                const auto& e = edges[i];
                const double factor = 1.0 / std::sqrt(1.0 + e.dir.lambda * e.dir.lambda);
                const double h = cost(e.dir);
                csv.row({fl::format_int(static_cast<std::int64_t>(i)),
                         fl::format_double(e.dir.lambda), fl::format_double(factor),
                         fl::format_double(e.length), fl::format_double(h),
                         fl::format_double(e.length / 4.0 * h * factor)});
            }
            finish(bnd.out, table.str(), "bound", cfg);
            std::ostringstream summary;
            summary << "{\n  \"gamma\": " << fl::format_double(gamma)
                    << ",\n  \"area\": " << fl::format_double(shape.area())
                    << ",\n  \"perimeter\": " << fl::format_double(shape.perimeter())
                    << ",\n  \"edges\": " << edges.size() << "\n}\n";
            write_file(bnd.out + ".summary.json", summary.str());
        }
    });

    // ---- optimize ----
    struct {
        std::string family = "kgon";
        double area = 1.0;
        int k_min = 3, k_max = 64, vertices = 16, rounds = 60;
        double step = 0.2, min_step = 1e-4;
        cost_flags cost;
        est_flags est;
        std::string out, shape_out;
    } opt;
    auto* opt_cmd =
        app.add_subcommand("optimize", "minimize the surface bound over a shape family");
    opt_cmd->add_option("--family", opt.family, "kgon | free");
    opt_cmd->add_option("--area", opt.area, "fixed shape area");
    opt_cmd->add_option("--k-min", opt.k_min, "kgon sweep start");
    opt_cmd->add_option("--k-max", opt.k_max, "kgon sweep end");
    opt_cmd->add_option("--vertices", opt.vertices, "free family: polygon size");
    opt_cmd->add_option("--rounds", opt.rounds, "free family: descent rounds");
    opt_cmd->add_option("--step", opt.step, "free family: initial step");
    opt_cmd->add_option("--min-step", opt.min_step, "free family: stopping step");
    opt.cost.add(opt_cmd);
    add_est(opt_cmd, opt.est);
    opt_cmd->add_option("--out", opt.out, "optimizer trace CSV path");
    opt_cmd->add_option("--shape-out", opt.shape_out, "winning shape JSON path");
    opt_cmd->callback([&] {
        fl::optimize_options oo;
        if (opt.family == "kgon")
            oo.family = fl::shape_family::regular_kgon;
        else if (opt.family == "free")
            oo.family = fl::shape_family::vertex_free;
        else
            throw std::invalid_argument("unknown family '" + opt.family + "'");
        oo.area = opt.area;
        oo.k_min = opt.k_min;
        oo.k_max = opt.k_max;
        oo.vertices = opt.vertices;
        oo.max_rounds = opt.rounds;
        oo.initial_step = opt.step;
        oo.min_step = opt.min_step;
        const auto result = fl::optimize_shape(make_cost(opt.cost, opt.est), oo);
        std::cout << "gamma " << human(result.value) << " edges " << result.shape.edges().size()
                  << '\n';
        cfg_map cfg;
        cfg.put("family", opt.family);
        cfg.put("area", opt.area);
        cfg.put("k-min", opt.k_min);
        cfg.put("k-max", opt.k_max);
        cfg.put("vertices", opt.vertices);
        cfg.put("rounds", opt.rounds);
        cfg.put("step", opt.step);
        cfg.put("min-step", opt.min_step);
        opt.cost.dump(cfg);
        dump_est(cfg, opt.est);
        cfg.put("out", opt.out);
        cfg.put("shape-out", opt.shape_out);
        if (!opt.out.empty()) {
            std::ostringstream table;
            fl::csv_writer csv(table, {"iteration", "gamma", "accepted"});
            for (const auto& row : result.trace)
                csv.row({fl::format_int(row.step), fl::format_double(row.value),
                         fl::format_int(row.accepted ? 1 : 0)});
            finish(opt.out, table.str(), "optimize", cfg);
        }
        if (!opt.shape_out.empty()) {
            std::ostringstream shape_json;
            fl::write_polygon_json(shape_json, result.shape);
            write_file(opt.shape_out, shape_json.str());
            if (opt.out.empty()) fl::cli::write_sidecar(opt.shape_out, "optimize", cfg.entries);
        }
    });

    // ---- markov-check ----
    struct {
        shape_flags shape;
        std::int64_t blow = 1;
        double beta = 0.3, field = 0.0;
        std::string probe = "0,0";
        int probes = 16;
        std::uint64_t seed = 1;
        std::string out;
    } mkv;
    auto* mkv_cmd = app.add_subcommand(
        "markov-check", "screening test of digitized boundary rings by exact enumeration");
    mkv.shape.add(mkv_cmd);
    mkv_cmd->add_option("--blowup", mkv.blow, "shape blowup before digitizing");
    mkv_cmd->add_option("--beta", mkv.beta, "spin coupling");
    mkv_cmd->add_option("--field", mkv.field, "external field");
    mkv_cmd->add_option("--probe", mkv.probe, "interior probe site x,y");
    mkv_cmd->add_option("--probes", mkv.probes, "exterior configurations tested");
    mkv_cmd->add_option("--seed", mkv.seed, "ring and probe seed");
    mkv_cmd->add_option("--out", mkv.out, "ring table CSV path");
    mkv_cmd->callback([&] {
        fl::markov_spec ms{fl::cli::build_shape(mkv.shape.opt)};
        ms.blowup = mkv.blow;
        ms.beta = mkv.beta;
        ms.field = mkv.field;
        const auto probe = fl::cli::parse_int_list(mkv.probe);
        if (probe.size() != 2) throw std::invalid_argument("probe must look like x,y");
        ms.probe = fl::site{probe[0], probe[1]};
        ms.n_probes = mkv.probes;
        ms.seed = mkv.seed;
        const fl::markov_report report = fl::markov_boundary_check(ms);
        auto line = [](const char* name, const fl::ring_check& rc) {
            std::cout << name << " sites " << rc.ring.size() << " interior " << rc.interior_sites
                      << " bypass_bonds " << rc.touching_bonds << " deviation "
                      << human(rc.deviation) << '\n';
        };
        line("line_ring", report.line_ring);
        line("contour_ring", report.contour_ring);
        std::cout << "contour_contains_line " << (report.contour_contains_line ? 1 : 0) << '\n';
        cfg_map cfg;
        mkv.shape.dump(cfg);
        cfg.put("blowup", mkv.blow);
        cfg.put("beta", mkv.beta);
        cfg.put("field", mkv.field);
        cfg.put("probe", mkv.probe);
        cfg.put("probes", mkv.probes);
        cfg.put("seed", mkv.seed);
        cfg.put("out", mkv.out);
        if (!mkv.out.empty()) {
            std::ostringstream table;
            fl::csv_writer csv(table,
                               {"ring", "sites", "interior", "bypass_bonds", "probe_up", "deviation"});
            auto row = [&](const char* name, const fl::ring_check& rc) {
                csv.row({name, fl::format_int(static_cast<std::int64_t>(rc.ring.size())),
                         fl::format_int(static_cast<std::int64_t>(rc.interior_sites)),
                         fl::format_int(static_cast<std::int64_t>(rc.touching_bonds)),
                         fl::format_double(rc.probe_up), fl::format_double(rc.deviation)});
            };
            row("line", report.line_ring);
            row("contour", report.contour_ring);
            finish(mkv.out, table.str(), "markov-check", cfg);
        }
    });

    // ---- config pre-merge and parse ----
    if (argc <= 1) {
        std::cout << app.help();
        return 2;
    }
    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        std::string config_path;
        for (auto it = args.begin(); it != args.end();) {
            if (*it == "--config") {
                if (std::next(it) == args.end())
                    throw std::invalid_argument("--config needs a file argument");
                config_path = *std::next(it);
                it = args.erase(it, std::next(it, 2));
            } else if (it->rfind("--config=", 0) == 0) {
                config_path = it->substr(9);
                it = args.erase(it);
            } else {
                ++it;
            }
        }
        if (!config_path.empty()) {
            // file values slot in right after the subcommand, so explicit
            // flags further right override them
            if (args.empty() || app.get_subcommand_no_throw(args.front()) == nullptr)
                throw std::invalid_argument("--config requires a subcommand before it applies");
            const auto file = fl::cli::load_config(config_path);
            std::vector<std::string> merged{args.front()};
            for (const auto& [key, val] : file) {
                if (key == "out" && val.empty()) continue;
                merged.push_back("--" + key + "=" + val);
            }
            merged.insert(merged.end(), args.begin() + 1, args.end());
            args = std::move(merged);
        }
        std::vector<const char*> argv2{argv[0]};
        for (const auto& a : args) argv2.push_back(a.c_str());
        app.parse(static_cast<int>(argv2.size()), argv2.data());
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << flatten(e.what()) << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << flatten(e.what()) << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << flatten(e.what()) << '\n';
        return 3;
    }
    return 0;
}
