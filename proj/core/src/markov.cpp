#include "fieldline/markov.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "fieldline/rng.hpp"

namespace fieldline {

namespace {

constexpr std::size_t max_interior = 25;  // 2^25 configurations enumerated

struct ring_world {
    std::vector<site> ring;          // sorted
    std::vector<site> interior;      // scan order
    std::vector<site> touching;      // exterior sites adjacent to the interior
    std::size_t touching_bonds = 0;
};

const std::array<site, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

ring_world build_world(const polygon& blown, std::vector<site> ring_sites, const site& probe) {
    ring_world w;
    std::sort(ring_sites.begin(), ring_sites.end());
    ring_sites.erase(std::unique(ring_sites.begin(), ring_sites.end()), ring_sites.end());
    w.ring = std::move(ring_sites);

    std::unordered_set<site, site_hash> ring_set(w.ring.begin(), w.ring.end());

    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (const point& v : blown.vertices()) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    const auto x_lo = static_cast<std::int64_t>(std::floor(min_x)) - 1;
    const auto x_hi = static_cast<std::int64_t>(std::ceil(max_x)) + 1;
    const auto y_lo = static_cast<std::int64_t>(std::floor(min_y)) - 1;
    const auto y_hi = static_cast<std::int64_t>(std::ceil(max_y)) + 1;

    for (std::int64_t y = y_lo; y <= y_hi; ++y)
        for (std::int64_t x = x_lo; x <= x_hi; ++x) {
            const site s{x, y};
            if (ring_set.count(s)) continue;
            if (blown.locate(s) == point_location::inside) w.interior.push_back(s);
        }
    if (w.interior.size() > max_interior)
        throw std::invalid_argument("markov_boundary_check: interior too large to enumerate");
    if (std::find(w.interior.begin(), w.interior.end(), probe) == w.interior.end())
        throw std::invalid_argument("markov_boundary_check: probe must be an interior site");

    std::unordered_set<site, site_hash> interior_set(w.interior.begin(), w.interior.end());
    std::unordered_set<site, site_hash> touching_set;
    for (const site& u : w.interior)
        for (const site& d : steps) {
            const site v = u + d;
            if (interior_set.count(v) || ring_set.count(v)) continue;
            ++w.touching_bonds;
            touching_set.insert(v);
        }
    w.touching.assign(touching_set.begin(), touching_set.end());
    std::sort(w.touching.begin(), w.touching.end());
    return w;
}

// P(probe = + | ring and exterior values): Gray-code walk over all interior
// configurations, maintaining the Gibbs log-weight incrementally.
double probe_up_probability(const ring_world& w, const site& probe, double beta, double field,
                            const std::unordered_map<site, int, site_hash>& fixed) {
    const std::size_t n = w.interior.size();
    std::unordered_map<site, std::size_t, site_hash> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(w.interior[i], i);
    const std::size_t probe_bit = index.at(probe);

    std::vector<std::vector<std::size_t>> adjacent(n);  // all interior partners
    std::vector<double> fixed_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (const site& d : steps) {
            const site v = w.interior[i] + d;
            if (auto it = index.find(v); it != index.end())
                adjacent[i].push_back(it->second);
            else if (auto fx = fixed.find(v); fx != fixed.end())
                fixed_sum[i] += fx->second;
        }

    // log-weight of the all-minus start, bonds counted once
    std::vector<int> spin(n, -1);
    double log_w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : adjacent[i])
            if (j > i) log_w += beta * spin[i] * spin[j];
        log_w += beta * spin[i] * fixed_sum[i] + field * spin[i];
    }

    double z_up = 0.0, z_total = 0.0;
    const std::uint64_t count = 1ull << n;
    for (std::uint64_t step = 0;; ++step) {
        const double weight = std::exp(log_w);
        z_total += weight;
        if (spin[probe_bit] > 0) z_up += weight;
        if (step + 1 == count) break;

        const auto flip = static_cast<std::size_t>(std::countr_zero(step + 1));
        double local = fixed_sum[flip];
        for (std::size_t j : adjacent[flip]) local += spin[j];
        log_w -= 2.0 * spin[flip] * (beta * local + field);
        spin[flip] = -spin[flip];
    }
    return z_up / z_total;
}

ring_check check_ring(const polygon& blown, std::vector<site> ring_sites, const markov_spec& spec) {
    ring_world w = build_world(blown, std::move(ring_sites), spec.probe);

    ring_check out;
    out.ring = w.ring;
    out.interior_sites = w.interior.size();
    out.touching_bonds = w.touching_bonds;

    // pinned ring values, canonical order so equal rings get equal values
    std::unordered_map<site, int, site_hash> fixed;
    rng_stream ring_rng(spec.seed, 0);
    for (const site& s : w.ring) fixed[s] = ring_rng.next_double() < 0.5 ? -1 : 1;

    for (int probe_idx = 0; probe_idx < spec.n_probes; ++probe_idx) {
        rng_stream ext_rng(spec.seed, 1 + static_cast<std::uint64_t>(probe_idx));
        auto trial = fixed;
        for (const site& s : w.touching) trial[s] = ext_rng.next_double() < 0.5 ? -1 : 1;
        const double p = probe_up_probability(w, spec.probe, spec.beta, spec.field, trial);
        if (probe_idx == 0)
            out.probe_up = p;
        else
            out.deviation = std::max(out.deviation, std::fabs(p - out.probe_up));
    }
    return out;
}

void validate(const markov_spec& spec) {
    if (!spec.shape.closed())
        throw std::invalid_argument("markov_boundary_check: shape must be closed");
    if (spec.blowup < 1) throw std::invalid_argument("markov_boundary_check: blowup must be positive");
    if (spec.n_probes < 2)
        throw std::invalid_argument("markov_boundary_check: need at least two exterior probes");
    if (!(spec.beta >= 0.0) || !std::isfinite(spec.beta) || !std::isfinite(spec.field))
        throw std::invalid_argument("markov_boundary_check: bad model parameters");
}

}  // namespace

markov_report markov_boundary_check(const markov_spec& spec) {
    validate(spec);
    const polygon blown = spec.shape.blowup(static_cast<double>(spec.blowup));

    markov_report report;
    report.line_ring = check_ring(blown, polygon_lattice_approx(spec.shape, spec.blowup).sites, spec);
    report.contour_ring =
        check_ring(blown, polygon_contour_approx(spec.shape, spec.blowup).sites, spec);

    report.contour_contains_line = std::includes(
        report.contour_ring.ring.begin(), report.contour_ring.ring.end(),
        report.line_ring.ring.begin(), report.line_ring.ring.end());
    return report;
}

ring_check custom_ring_check(const markov_spec& spec, std::vector<site> ring) {
    validate(spec);
    const polygon blown = spec.shape.blowup(static_cast<double>(spec.blowup));
    return check_ring(blown, std::move(ring), spec);
}

}  // namespace fieldline
