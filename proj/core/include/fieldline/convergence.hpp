#pragma once

#include <cstdint>
#include <vector>

#include "fieldline/entropy.hpp"
#include "fieldline/field.hpp"
#include "fieldline/geometry.hpp"

namespace fieldline {

struct convergence_row {
    std::int64_t n = 0;
    double mean = 0.0;
    double spread = 0.0;     // sample standard deviation across the draws
    double std_error = 0.0;  // spread / sqrt(draws)
    std::int64_t draws = 0;
};

// Distribution of the per-site information of line samples of length n + 1,
// one row per entry of n_list, opt.info_samples draws per row. Product
// fields score their fresh draws in closed form. Spin fields run strip
// chains along the line and score against conditional tables of the given
// depth, built once from n_samples windowed observations per torus point.
// The spread of the rows is the experimental handle on the almost-sure
// convergence of the information: it has to die out as n grows.
std::vector<convergence_row> convergence_experiment(const field_model& model,
                                                    const linear_map& line,
                                                    const std::vector<std::int64_t>& n_list,
                                                    int depth, std::int64_t n_samples,
                                                    const estimation_options& opt = {});

}  // namespace fieldline
