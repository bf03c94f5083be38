#pragma once

// Internal machinery shared by the entropy estimators: replicated pattern
// harvesting from windowed field samples, and leave-one-replica-out error
// bars. Not installed.

#include <cstdint>
#include <functional>
#include <vector>

#include "fieldline/conditional_table.hpp"
#include "fieldline/entropy.hpp"
#include "fieldline/field.hpp"
#include "fieldline/past_window.hpp"
#include "fieldline/polygon.hpp"

namespace fieldline::detail {

struct harvest_request {
    std::vector<site> offsets;  // pattern sites relative to the anchor
};

struct harvest_tables {
    std::vector<std::vector<conditional_table>> per_replica;  // [request][replica]
    std::vector<conditional_table> merged;                    // [request]
    std::int64_t observations = 0;                            // per request, all replicas
    int replicas = 1;
};

// Fills every request from the same anchors of the same snapshots, so
// estimates sharing a harvest are comparable sample for sample. The replica
// chains are seeded from (opt.sampler.seed, salt + replica).
harvest_tables harvest(const field_model& model, const std::vector<harvest_request>& requests,
                       int depth, std::int64_t n_samples, const estimation_options& opt,
                       std::uint64_t salt = 0);

struct jackknife_output {
    double value = 0.0;  // bias-corrected when requested
    double std_error = 0.0;
    double raw = 0.0;  // plain plug-in value
};

// eval(-1) evaluates the full estimate, eval(r) the estimate without
// replica r. Bias correction is skipped when the leave-one-out values are
// all identical to the full value (analytically constant estimates).
jackknife_output jackknife(int replicas, bool bias_correction,
                           const std::function<double(int)>& eval);

std::int64_t required_samples(int alphabet_size, int depth);

// Harvest layout for a polygon: one request family per distinct edge slope
// (torus orbit for fractions, midpoint grid of grid_m points otherwise),
// weighted by the total edge length in that direction.
struct family_layout {
    std::vector<harvest_request> requests;
    std::vector<std::pair<std::size_t, std::size_t>> group_range;  // [first, last) per group
    std::vector<double> weights;                                   // per group, sums to 1
    bool any_irrational = false;
};

family_layout polygon_layout(const polygon& shape, int depth, int grid_m);

std::vector<harvest_request> window_requests(const slope& lambda,
                                             const std::vector<torus_point>& points, int depth,
                                             past_variant variant);

entropy_estimate exact_estimate(double value, int depth);
void require_enough_samples(int nsym, int depth, std::int64_t n_samples);
double family_mean_entropy(const harvest_tables& tables, double pseudocount, int excl);

}  // namespace fieldline::detail
