#include "fieldline/entropy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "fieldline/past_window.hpp"
#include "fieldline/rng.hpp"
#include "fieldline/sampler.hpp"
#include "harvest.hpp"

namespace fieldline {

double marginal_entropy(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs) {
        if (!(p > 0.0)) throw std::invalid_argument("marginal_entropy: probabilities must be positive");
        h -= p * std::log(p);
    }
    return h;
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: length mismatch");
    double d = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!(p[k] > 0.0) || !(q[k] > 0.0))
            throw std::invalid_argument("kl_divergence: probabilities must be positive");
        d += p[k] * std::log(p[k] / q[k]);
    }
    return std::max(d, 0.0);
}

double mean_exact(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("mean_exact: empty input");
    bool constant = true;
    for (double v : values)
        if (v != values.front()) { constant = false; break; }
    if (constant) return values.front();
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

// ==== harvest engine ====

namespace detail {

std::int64_t required_samples(int alphabet_size, int depth) {
    double need = 10.0 * std::pow(static_cast<double>(alphabet_size), depth + 1);
    if (need > 9.0e18)
        throw estimation_error("required_samples: depth too large for this alphabet");
    return static_cast<std::int64_t>(need);
}

harvest_tables harvest(const field_model& model, const std::vector<harvest_request>& requests,
                       int depth, std::int64_t n_samples, const estimation_options& opt,
                       std::uint64_t salt) {
    if (requests.empty()) throw std::invalid_argument("harvest: no requests");
    if (n_samples < 1) throw std::invalid_argument("harvest: n_samples must be positive");
    opt.sampler.validate();

    const alphabet& ab = model_alphabet(model);
    const int nsym = ab.size();

    std::int64_t reach = 0;
    for (const auto& rq : requests) {
        check_pattern_width(rq.offsets.size(), nsym);
        for (const site& s : rq.offsets)
            reach = std::max({reach, std::abs(s.x), std::abs(s.y)});
    }

    std::int64_t margin = opt.margin >= 0 ? opt.margin : static_cast<std::int64_t>(depth) + 8;
    margin = std::max(margin, reach + 1);
    std::int64_t w = std::max<std::int64_t>(opt.window, 2 * margin + 8);
    const region window{0, 0, w, w};
    const std::int64_t core_lo = margin;
    const std::int64_t core_hi = w - margin;  // exclusive

    const int R = opt.sampler.replicas;
    const std::int64_t quota = (n_samples + R - 1) / R;

    harvest_tables out;
    out.replicas = R;
    out.per_replica.assign(requests.size(), std::vector<conditional_table>(R, conditional_table(nsym)));
    out.merged.assign(requests.size(), conditional_table(nsym));

    for (int r = 0; r < R; ++r) {
        rng_stream rng(opt.sampler.seed, salt + static_cast<std::uint64_t>(r));
        const bool use_chain = std::holds_alternative<ising_model>(model);
        std::optional<gibbs_sampler> chain;
        if (use_chain) {
            chain.emplace(std::get<ising_model>(model), window, opt.sampler,
                          salt + static_cast<std::uint64_t>(r));
            chain->run_burn_in();
        }

        std::int64_t done = 0;
        while (done < quota) {
            configuration snap = use_chain ? (chain->next(), chain->snapshot())
                                           : sample_iid(std::get<iid_model>(model), window, rng);
            for (std::int64_t ay = core_lo; ay < core_hi && done < quota; ++ay) {
                for (std::int64_t ax = core_lo; ax < core_hi && done < quota; ++ax) {
                    const site anchor{window.x0 + ax, window.y0 + ay};
                    const int sym = snap.at(anchor.x, anchor.y);
                    for (std::size_t q = 0; q < requests.size(); ++q) {
                        const std::uint64_t key = pattern_key(snap, anchor, requests[q].offsets, nsym);
                        out.per_replica[q][r].add(key, sym);
                    }
                    ++done;
                }
            }
        }
        out.observations += done;
    }

    for (std::size_t q = 0; q < requests.size(); ++q)
        for (int r = 0; r < R; ++r) out.merged[q].merge(out.per_replica[q][r]);
    return out;
}

jackknife_output jackknife(int replicas, bool bias_correction,
                           const std::function<double(int)>& eval) {
    jackknife_output out;
    out.raw = eval(-1);
    out.value = out.raw;
    if (replicas < 2) return out;

    std::vector<double> loo(replicas);
    bool constant = true;
    double loo_sum = 0.0;
    for (int r = 0; r < replicas; ++r) {
        loo[r] = eval(r);
        loo_sum += loo[r];
        if (loo[r] != out.raw) constant = false;
    }
    if (constant) return out;

    const double loo_mean = loo_sum / replicas;
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
    out.std_error = std::sqrt(ss * static_cast<double>(replicas - 1) / replicas);
    if (bias_correction)
        out.value = replicas * out.raw - (replicas - 1) * loo_mean;
    return out;
}

// Builds the per-point requests for a family of past windows, the common
// currency of the line estimators.
std::vector<harvest_request> window_requests(const slope& lambda,
                                             const std::vector<torus_point>& points, int depth,
                                             past_variant variant) {
    std::vector<harvest_request> out;
    out.reserve(points.size());
    for (const torus_point& t : points)
        out.push_back({past_sites({lambda, t, depth, variant}).sites});
    return out;
}

entropy_estimate exact_estimate(double value, int depth) {
    entropy_estimate e;
    e.value = value;
    e.std_error = 0.0;
    e.depth = depth;
    e.samples = 0;
    e.method = estimate_method::exact;
    return e;
}

void require_enough_samples(int nsym, int depth, std::int64_t n_samples) {
    const std::int64_t need = required_samples(nsym, depth);
    if (n_samples < need) {
        std::ostringstream msg;
        msg << "monte carlo estimate at depth " << depth << " needs at least " << need
            << " samples, got " << n_samples;
        throw estimation_error(msg.str());
    }
}

// Mean over points of the per-table conditional entropies with replica excl
// removed; excl < 0 keeps everything.
double family_mean_entropy(const harvest_tables& tables, double pseudocount, int excl) {
    std::vector<double> vals;
    vals.reserve(tables.merged.size());
    for (std::size_t q = 0; q < tables.merged.size(); ++q) {
        conditional_table t = tables.merged[q];
        if (excl >= 0) t.subtract(tables.per_replica[q][excl]);
        vals.push_back(t.cond_entropy(pseudocount));
    }
    return mean_exact(vals);
}

}  // namespace detail

// ==== direct conditional entropy ====

entropy_estimate conditional_entropy(const field_model& model, const past_window_spec& spec,
                                     std::int64_t n_samples, const estimation_options& opt) {
    if (n_samples < 1) throw std::invalid_argument("conditional_entropy: n_samples must be positive");
    const alphabet& ab = model_alphabet(model);

    if (is_iid(model) && !opt.force_monte_carlo)
        return detail::exact_estimate(marginal_entropy(std::get<iid_model>(model).marginal), spec.depth);

    detail::require_enough_samples(ab.size(), spec.depth, n_samples);
    std::vector<detail::harvest_request> reqs{{past_sites(spec).sites}};
    detail::harvest_tables tables = detail::harvest(model, reqs, spec.depth, n_samples, opt);

    auto jk = detail::jackknife(tables.replicas, opt.bias_correction, [&](int excl) {
        return detail::family_mean_entropy(tables, opt.pseudocount, excl);
    });

    entropy_estimate e;
    e.value = jk.value;
    e.std_error = jk.std_error;
    e.depth = spec.depth;
    e.samples = tables.observations;
    e.method = estimate_method::monte_carlo;
    return e;
}

// ==== line entropies ====

entropy_estimate line_entropy_rational(const field_model& model, std::int64_t p, std::int64_t q,
                                       int depth, std::int64_t n_samples,
                                       const estimation_options& opt, axis orientation) {
    const slope lambda = slope::rational(p, q, orientation);
    if (is_iid(model) && !opt.force_monte_carlo)
        return detail::exact_estimate(marginal_entropy(std::get<iid_model>(model).marginal), depth);

    const alphabet& ab = model_alphabet(model);
    detail::require_enough_samples(ab.size(), depth, n_samples);

    // The floor shapes repeat with period q along the line, so the entropy is
    // the plain average over the orbit of the zero intercept.
    std::vector<torus_point> points;
    for (std::int64_t nu = 0; nu < lambda.q(); ++nu)
        points.push_back(torus_point(rat(mod_floor(nu * lambda.p(), lambda.q()), lambda.q())));

    auto reqs = detail::window_requests(lambda, points, depth, past_variant::lattice);
    detail::harvest_tables tables = detail::harvest(model, reqs, depth, n_samples, opt);

    auto jk = detail::jackknife(tables.replicas, opt.bias_correction, [&](int excl) {
        return detail::family_mean_entropy(tables, opt.pseudocount, excl);
    });

    entropy_estimate e;
    e.value = jk.value;
    e.std_error = jk.std_error;
    e.depth = depth;
    e.samples = tables.observations * static_cast<std::int64_t>(reqs.size());
    e.method = estimate_method::monte_carlo;
    return e;
}

entropy_estimate line_entropy_irrational(const field_model& model, double lambda_value, int grid_m,
                                         int depth, std::int64_t n_samples,
                                         const estimation_options& opt, axis orientation) {
    if (grid_m < 1) throw std::invalid_argument("line_entropy_irrational: grid size must be positive");
    const slope lambda = slope::irrational(lambda_value, orientation);
    if (is_iid(model) && !opt.force_monte_carlo)
        return detail::exact_estimate(marginal_entropy(std::get<iid_model>(model).marginal), depth);

    const alphabet& ab = model_alphabet(model);
    detail::require_enough_samples(ab.size(), depth, n_samples);

    // Midpoint rule over the circle of intercepts.
    std::vector<torus_point> points;
    std::vector<double> per_point;
    for (int m = 0; m < grid_m; ++m)
        points.push_back(torus_point((m + 0.5) / grid_m));

    auto reqs = detail::window_requests(lambda, points, depth, past_variant::lattice);
    detail::harvest_tables tables = detail::harvest(model, reqs, depth, n_samples, opt);

    for (std::size_t qq = 0; qq < tables.merged.size(); ++qq)
        per_point.push_back(tables.merged[qq].cond_entropy(opt.pseudocount));

    auto jk = detail::jackknife(tables.replicas, opt.bias_correction, [&](int excl) {
        return detail::family_mean_entropy(tables, opt.pseudocount, excl);
    });

    entropy_estimate e;
    e.value = jk.value;
    e.std_error = jk.std_error;
    e.depth = depth;
    e.samples = tables.observations * static_cast<std::int64_t>(reqs.size());
    e.method = estimate_method::quadrature;
    e.quadrature_points = grid_m;
    e.quadrature_spread =
        *std::max_element(per_point.begin(), per_point.end()) -
        *std::min_element(per_point.begin(), per_point.end());
    e.low_accuracy = grid_m == 1;
    return e;
}

entropy_estimate line_entropy(const field_model& model, const slope& lambda, int depth,
                              std::int64_t n_samples, const estimation_options& opt) {
    if (lambda.is_rational())
        return line_entropy_rational(model, lambda.p(), lambda.q(), depth, n_samples, opt,
                                     lambda.orientation());
    return line_entropy_irrational(model, lambda.value(), opt.quadrature_points, depth, n_samples,
                                   opt, lambda.orientation());
}

// ==== polygon and curve entropies ====

namespace detail {

namespace {

// Key that identifies a slope exactly: rationals by reduced fraction,
// irrationals by bit pattern.
using slope_key = std::tuple<int, int, std::int64_t, std::int64_t, std::uint64_t>;

slope_key key_of(const slope& s) {
    std::uint64_t bits;
    double v = s.value();
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    return {s.orientation() == axis::x ? 0 : 1, s.is_rational() ? 1 : 0,
            s.is_rational() ? s.p() : 0, s.is_rational() ? s.q() : 0, bits};
}

}  // namespace

family_layout polygon_layout(const polygon& shape, int depth, int grid_m) {
    if (shape.edges().empty()) throw std::invalid_argument("polygon_layout: shape has no edges");

    // Group edges by exact slope, in traversal order of first appearance.
    struct slope_group {
        slope lambda;
        double length;
    };
    std::vector<slope_group> groups;
    std::map<slope_key, std::size_t> index;
    for (const polygon_edge& e : shape.edges()) {
        auto k = key_of(e.edge_slope);
        auto it = index.find(k);
        if (it == index.end()) {
            index.emplace(k, groups.size());
            groups.push_back({e.edge_slope, e.length});
        } else {
            groups[it->second].length += e.length;
        }
    }
    double total_len = 0.0;
    for (const auto& g : groups) total_len += g.length;

    family_layout out;
    for (const auto& g : groups) {
        std::vector<torus_point> points;
        if (g.lambda.is_rational()) {
            for (std::int64_t nu = 0; nu < g.lambda.q(); ++nu)
                points.push_back(torus_point(rat(mod_floor(nu * g.lambda.p(), g.lambda.q()),
                                                 g.lambda.q())));
        } else {
            out.any_irrational = true;
            for (int m = 0; m < grid_m; ++m)
                points.push_back(torus_point((m + 0.5) / grid_m));
        }
        std::size_t first = out.requests.size();
        auto family = window_requests(g.lambda, points, depth, past_variant::lattice);
        for (auto& rq : family) out.requests.push_back(std::move(rq));
        out.group_range.emplace_back(first, out.requests.size());
        out.weights.push_back(g.length / total_len);
    }
    return out;
}

}  // namespace detail

entropy_estimate polygon_entropy(const field_model& model, const polygon& shape, int depth,
                                 std::int64_t n_samples, const estimation_options& opt) {
    if (shape.edges().empty()) throw std::invalid_argument("polygon_entropy: shape has no edges");
    if (is_iid(model) && !opt.force_monte_carlo)
        return detail::exact_estimate(marginal_entropy(std::get<iid_model>(model).marginal), depth);

    const alphabet& ab = model_alphabet(model);
    detail::require_enough_samples(ab.size(), depth, n_samples);

    detail::family_layout layout = detail::polygon_layout(shape, depth, opt.quadrature_points);
    detail::harvest_tables tables = detail::harvest(model, layout.requests, depth, n_samples, opt);

    auto weighted_value = [&](int excl) {
        double acc = 0.0;
        for (std::size_t g = 0; g < layout.weights.size(); ++g) {
            std::vector<double> vals;
            for (std::size_t qq = layout.group_range[g].first; qq < layout.group_range[g].second;
                 ++qq) {
                conditional_table t = tables.merged[qq];
                if (excl >= 0) t.subtract(tables.per_replica[qq][excl]);
                vals.push_back(t.cond_entropy(opt.pseudocount));
            }
            acc += layout.weights[g] * mean_exact(vals);
        }
        return acc;
    };

    auto jk = detail::jackknife(tables.replicas, opt.bias_correction, weighted_value);

    entropy_estimate e;
    e.value = jk.value;
    e.std_error = jk.std_error;
    e.depth = depth;
    e.samples = tables.observations * static_cast<std::int64_t>(layout.requests.size());
    e.method = layout.any_irrational ? estimate_method::quadrature : estimate_method::monte_carlo;
    if (layout.any_irrational) e.quadrature_points = opt.quadrature_points;
    return e;
}

entropy_estimate curve_entropy(const field_model& model, const curve& path, int segments,
                               int depth, std::int64_t n_samples, const estimation_options& opt,
                               double* tangent_deviation_out) {
    polygonize_result chords = polygonize(path, segments);
    if (tangent_deviation_out) *tangent_deviation_out = chords.tangent_deviation;
    return polygon_entropy(model, chords.poly, depth, n_samples, opt);
}

// ==== contour line entropy ====

entropy_estimate contour_line_entropy(const field_model& model, double lambda_value, int depth,
                                      std::int64_t n_samples, const estimation_options& opt) {
    if (!(lambda_value >= 0.0 && lambda_value <= 1.0))
        throw std::invalid_argument("contour_line_entropy: slope must lie in [0,1]");
    if (is_iid(model) && !opt.force_monte_carlo)
        return detail::exact_estimate(marginal_entropy(std::get<iid_model>(model).marginal), depth);

    const alphabet& ab = model_alphabet(model);
    detail::require_enough_samples(ab.size(), depth, n_samples);
    const slope lambda = recognize_slope(lambda_value, axis::x);

    const int m1 = opt.quadrature_points;
    std::vector<torus_point> sharp_points;
    for (int m = 0; m < m1; ++m) sharp_points.push_back(torus_point((m + 0.5) / m1));

    // Intercepts in [1-lambda, 1) see a contour step beginning at the origin;
    // there the symbol above the line joins the conditioning pattern.
    const int m2 = lambda_value > 0.0
        ? std::max(1, static_cast<int>(std::lround(lambda_value * m1)))
        : 0;
    std::vector<torus_point> above_points;
    for (int j = 0; j < m2; ++j)
        above_points.push_back(torus_point(1.0 - lambda_value + lambda_value * (j + 0.5) / m2));

    auto reqs = detail::window_requests(lambda, sharp_points, depth, past_variant::contour_sharp);
    auto above = detail::window_requests(lambda, above_points, depth, past_variant::contour_with_above);
    const std::size_t n_sharp = reqs.size();
    for (auto& rq : above) reqs.push_back(std::move(rq));

    detail::harvest_tables tables = detail::harvest(model, reqs, depth, n_samples, opt);

    auto value_at = [&](int excl) {
        std::vector<double> sharp_vals, above_vals;
        for (std::size_t qq = 0; qq < reqs.size(); ++qq) {
            conditional_table t = tables.merged[qq];
            if (excl >= 0) t.subtract(tables.per_replica[qq][excl]);
            (qq < n_sharp ? sharp_vals : above_vals).push_back(t.cond_entropy(opt.pseudocount));
        }
        const double part_one = mean_exact(sharp_vals);
        if (above_vals.empty()) return part_one / (1.0 + lambda_value);
        const double part_two = lambda_value * mean_exact(above_vals);
        return (part_one + part_two) / (1.0 + lambda_value);
    };

    std::vector<double> sharp_only;
    for (std::size_t qq = 0; qq < n_sharp; ++qq)
        sharp_only.push_back(tables.merged[qq].cond_entropy(opt.pseudocount));

    auto jk = detail::jackknife(tables.replicas, opt.bias_correction, value_at);

    entropy_estimate e;
    e.value = jk.value;
    e.std_error = jk.std_error;
    e.depth = depth;
    e.samples = tables.observations * static_cast<std::int64_t>(reqs.size());
    e.method = estimate_method::quadrature;
    e.quadrature_points = m1;
    e.quadrature_spread =
        *std::max_element(sharp_only.begin(), sharp_only.end()) -
        *std::min_element(sharp_only.begin(), sharp_only.end());
    e.low_accuracy = m1 == 1;
    return e;
}

// ==== conditioners for the strip walkers ====

std::size_t line_conditioner::index_for_step(std::int64_t i, const torus_point& intercept) const {
    if (slope.is_rational()) {
        (void)intercept;
        return static_cast<std::size_t>(mod_floor(i, slope.q()));
    }
    const double t = fract(intercept.t() + static_cast<double>(i) * slope.value());
    auto m = static_cast<std::int64_t>(std::floor(t * static_cast<double>(points.size())));
    m = std::clamp<std::int64_t>(m, 0, static_cast<std::int64_t>(points.size()) - 1);
    return static_cast<std::size_t>(m);
}

line_conditioner build_line_conditioner(const field_model& model, const slope& lambda,
                                        const torus_point& intercept, int depth,
                                        std::int64_t n_samples, const estimation_options& opt) {
    const alphabet& ab = model_alphabet(model);
    detail::require_enough_samples(ab.size(), depth, n_samples);

    line_conditioner cond{lambda, depth, opt.pseudocount, {}, {}, {}};
    if (lambda.is_rational()) {
        for (std::int64_t nu = 0; nu < lambda.q(); ++nu)
            cond.points.push_back(torus_translate(lambda, intercept, nu));
    } else {
        for (int m = 0; m < opt.quadrature_points; ++m)
            cond.points.push_back(torus_point((m + 0.5) / opt.quadrature_points));
    }

    auto reqs = detail::window_requests(lambda, cond.points, depth, past_variant::lattice);
    detail::harvest_tables tables = detail::harvest(model, reqs, depth, n_samples, opt);
    for (std::size_t q = 0; q < reqs.size(); ++q) {
        cond.offsets.push_back(std::move(reqs[q].offsets));
        cond.tables.push_back(std::move(tables.merged[q]));
    }
    return cond;
}

}  // namespace fieldline
