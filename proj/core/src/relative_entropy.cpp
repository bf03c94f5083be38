#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fieldline/entropy.hpp"
#include "fieldline/past_window.hpp"
#include "harvest.hpp"

namespace fieldline {

namespace {

// Second harvest gets its own block of rng streams so the two fields are
// sampled independently.
constexpr std::uint64_t other_salt = 1000003;

void check_alphabets(const field_model& base, const field_model& other) {
    if (!(model_alphabet(base) == model_alphabet(other)))
        throw std::invalid_argument("relative entropy: alphabets differ");
}

bool both_iid(const field_model& base, const field_model& other) {
    return is_iid(base) && is_iid(other);
}

double exact_kl(const field_model& base, const field_model& other) {
    return kl_divergence(std::get<iid_model>(base).marginal, std::get<iid_model>(other).marginal);
}

// Per-point KL of base against other with replica excl removed from both
// harvests, averaged with the given weights over group ranges. Flags a
// fallback whenever a base pattern has no raw support under other.
struct kl_family {
    const detail::harvest_tables* base;
    const detail::harvest_tables* other;
    double pseudocount;
    mutable bool fallback = false;

    double point_value(std::size_t q, int excl) const {
        conditional_table b = base->merged[q];
        conditional_table o = other->merged[q];
        if (excl >= 0) {
            b.subtract(base->per_replica[q][excl]);
            o.subtract(other->per_replica[q][excl]);
        }
        bool missing = false;
        double v = b.kl_against(o, pseudocount, &missing);
        if (missing && excl < 0) fallback = true;
        return v;
    }

    double mean_over(std::size_t first, std::size_t last, int excl) const {
        std::vector<double> vals;
        for (std::size_t q = first; q < last; ++q) vals.push_back(point_value(q, excl));
        return mean_exact(vals);
    }
};

}  // namespace

entropy_estimate relative_conditional_entropy(const field_model& base, const field_model& other,
                                              const past_window_spec& spec, std::int64_t n_samples,
                                              const estimation_options& opt) {
    check_alphabets(base, other);
    if (both_iid(base, other) && !opt.force_monte_carlo)
        return detail::exact_estimate(exact_kl(base, other), spec.depth);

    const int nsym = model_alphabet(base).size();
    detail::require_enough_samples(nsym, spec.depth, n_samples);

    std::vector<detail::harvest_request> reqs{{past_sites(spec).sites}};
    detail::harvest_tables base_tables = detail::harvest(base, reqs, spec.depth, n_samples, opt);
    detail::harvest_tables other_tables =
        detail::harvest(other, reqs, spec.depth, n_samples, opt, other_salt);

    kl_family fam{&base_tables, &other_tables, opt.pseudocount};
    auto jk = detail::jackknife(base_tables.replicas, opt.bias_correction,
                                [&](int excl) { return fam.mean_over(0, reqs.size(), excl); });

    entropy_estimate e;
    e.value = jk.value;
    e.std_error = jk.std_error;
    e.depth = spec.depth;
    e.samples = base_tables.observations + other_tables.observations;
    e.method = estimate_method::monte_carlo;
    e.smoothing_fallback = fam.fallback;
    return e;
}

entropy_estimate relative_line_entropy(const field_model& base, const field_model& other,
                                       const slope& s, int depth, std::int64_t n_samples,
                                       const estimation_options& opt) {
    check_alphabets(base, other);
    if (both_iid(base, other) && !opt.force_monte_carlo)
        return detail::exact_estimate(exact_kl(base, other), depth);

    const int nsym = model_alphabet(base).size();
    detail::require_enough_samples(nsym, depth, n_samples);

    std::vector<torus_point> points;
    if (s.is_rational()) {
        for (std::int64_t nu = 0; nu < s.q(); ++nu)
            points.push_back(torus_point(rat(mod_floor(nu * s.p(), s.q()), s.q())));
    } else {
        for (int m = 0; m < opt.quadrature_points; ++m)
            points.push_back(torus_point((m + 0.5) / opt.quadrature_points));
    }

    auto reqs = detail::window_requests(s, points, depth, past_variant::lattice);
    detail::harvest_tables base_tables = detail::harvest(base, reqs, depth, n_samples, opt);
    detail::harvest_tables other_tables =
        detail::harvest(other, reqs, depth, n_samples, opt, other_salt);

    kl_family fam{&base_tables, &other_tables, opt.pseudocount};
    auto jk = detail::jackknife(base_tables.replicas, opt.bias_correction,
                                [&](int excl) { return fam.mean_over(0, reqs.size(), excl); });

    entropy_estimate e;
    e.value = jk.value;
    e.std_error = jk.std_error;
    e.depth = depth;
    e.samples = base_tables.observations + other_tables.observations;
    e.method = s.is_rational() ? estimate_method::monte_carlo : estimate_method::quadrature;
    if (!s.is_rational()) {
        e.quadrature_points = opt.quadrature_points;
        std::vector<double> per_point;
        for (std::size_t q = 0; q < reqs.size(); ++q) per_point.push_back(fam.point_value(q, -1));
        e.quadrature_spread = *std::max_element(per_point.begin(), per_point.end()) -
                              *std::min_element(per_point.begin(), per_point.end());
        e.low_accuracy = opt.quadrature_points == 1;
    }
    e.smoothing_fallback = fam.fallback;
    return e;
}

entropy_estimate relative_entropy_curve(const field_model& base, const field_model& other,
                                        const curve& c, int n_chords, int depth,
                                        std::int64_t n_samples, const estimation_options& opt,
                                        double* tangent_deviation) {
    check_alphabets(base, other);
    polygonize_result chords = polygonize(c, n_chords);
    if (tangent_deviation) *tangent_deviation = chords.tangent_deviation;

    if (both_iid(base, other) && !opt.force_monte_carlo)
        return detail::exact_estimate(exact_kl(base, other), depth);

    const int nsym = model_alphabet(base).size();
    detail::require_enough_samples(nsym, depth, n_samples);

    detail::family_layout layout = detail::polygon_layout(chords.poly, depth, opt.quadrature_points);
    detail::harvest_tables base_tables = detail::harvest(base, layout.requests, depth, n_samples, opt);
    detail::harvest_tables other_tables =
        detail::harvest(other, layout.requests, depth, n_samples, opt, other_salt);

    kl_family fam{&base_tables, &other_tables, opt.pseudocount};
    auto weighted = [&](int excl) {
        double acc = 0.0;
        for (std::size_t g = 0; g < layout.weights.size(); ++g)
            acc += layout.weights[g] *
                   fam.mean_over(layout.group_range[g].first, layout.group_range[g].second, excl);
        return acc;
    };
    auto jk = detail::jackknife(base_tables.replicas, opt.bias_correction, weighted);

    entropy_estimate e;
    e.value = jk.value;
    e.std_error = jk.std_error;
    e.depth = depth;
    e.samples = base_tables.observations + other_tables.observations;
    e.method = layout.any_irrational ? estimate_method::quadrature : estimate_method::monte_carlo;
    if (layout.any_irrational) e.quadrature_points = opt.quadrature_points;
    e.smoothing_fallback = fam.fallback;
    return e;
}

entropy_estimate specific_relative_entropy(const field_model& base, const field_model& other,
                                           int depth, std::int64_t n_samples,
                                           const estimation_options& opt) {
    check_alphabets(base, other);
    if (both_iid(base, other) && !opt.force_monte_carlo)
        return detail::exact_estimate(exact_kl(base, other), depth);

    const int nsym = model_alphabet(base).size();
    detail::require_enough_samples(nsym, depth, n_samples);

    // Horizontal and vertical past windows, estimated from one shared harvest
    // per field and averaged.
    const torus_point origin{rat(0, 1)};
    std::vector<detail::harvest_request> reqs{
        {past_sites({slope::rational(0, 1, axis::x), origin, depth, past_variant::lattice}).sites},
        {past_sites({slope::rational(0, 1, axis::y), origin, depth, past_variant::lattice}).sites}};

    detail::harvest_tables base_tables = detail::harvest(base, reqs, depth, n_samples, opt);
    detail::harvest_tables other_tables =
        detail::harvest(other, reqs, depth, n_samples, opt, other_salt);

    kl_family fam{&base_tables, &other_tables, opt.pseudocount};
    auto jk = detail::jackknife(base_tables.replicas, opt.bias_correction,
                                [&](int excl) { return fam.mean_over(0, reqs.size(), excl); });

    entropy_estimate e;
    e.value = jk.value;
    e.std_error = jk.std_error;
    e.depth = depth;
    e.samples = base_tables.observations + other_tables.observations;
    e.method = estimate_method::monte_carlo;
    e.smoothing_fallback = fam.fallback;
    return e;
}

}  // namespace fieldline
