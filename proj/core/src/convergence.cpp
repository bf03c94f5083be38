#include "fieldline/convergence.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "fieldline/rng.hpp"
#include "fieldline/strip.hpp"

namespace fieldline {

namespace {

convergence_row summarize(std::int64_t n, const std::vector<double>& values) {
    convergence_row row;
    row.n = n;
    row.draws = static_cast<std::int64_t>(values.size());
    row.mean = mean_exact(values);
    double ss = 0.0;
    for (double v : values) ss += (v - row.mean) * (v - row.mean);
    row.spread = values.size() > 1
        ? std::sqrt(ss / static_cast<double>(values.size() - 1))
        : 0.0;
    row.std_error = row.spread / std::sqrt(static_cast<double>(values.size()));
    return row;
}

}  // namespace

std::vector<convergence_row> convergence_experiment(const field_model& model,
                                                    const linear_map& line,
                                                    const std::vector<std::int64_t>& n_list,
                                                    int depth, std::int64_t n_samples,
                                                    const estimation_options& opt) {
    if (n_list.empty()) throw std::invalid_argument("convergence_experiment: empty n list");
    std::int64_t max_n = 0;
    for (std::int64_t n : n_list) {
        if (n < 0) throw std::invalid_argument("convergence_experiment: negative length");
        max_n = std::max(max_n, n);
    }
    const std::int64_t draws = opt.info_samples;
    if (draws < 1) throw std::invalid_argument("convergence_experiment: need at least one draw");
    opt.sampler.validate();

    std::vector<convergence_row> out;

    if (is_iid(model)) {
        const auto& iid = std::get<iid_model>(model);
        for (std::size_t r = 0; r < n_list.size(); ++r) {
            std::vector<double> values;
            values.reserve(static_cast<std::size_t>(draws));
            for (std::int64_t s = 0; s < draws; ++s) {
                // fresh independent line sample per draw
                rng_stream rng(opt.sampler.seed,
                               (static_cast<std::uint64_t>(r) << 32) | static_cast<std::uint64_t>(s));
                values.push_back(rescaled_information(iid, sample_line(iid, n_list[r], rng)));
            }
            out.push_back(summarize(n_list[r], values));
        }
        return out;
    }

    const auto& ising = std::get<ising_model>(model);
    const torus_point intercept = line.intercept_exact
        ? torus_point(*line.intercept_exact)
        : torus_point(line.intercept);
    line_conditioner cond =
        build_line_conditioner(model, line.slope, intercept, depth, n_samples, opt);

    // one long strip per replica, shared across the rows; draws are thinned
    // states, cycled over the replicas
    const int replicas = opt.sampler.replicas;
    std::vector<std::unique_ptr<strip_sampler>> strips;
    const std::int64_t z_lo = -(static_cast<std::int64_t>(depth) + 2);
    const std::int64_t z_hi = max_n + 2;
    for (int rep = 0; rep < replicas; ++rep) {
        strips.push_back(std::make_unique<strip_sampler>(
            ising, line, z_lo, z_hi, depth + 8, opt.sampler,
            40000 + static_cast<std::uint64_t>(rep)));
        strips.back()->run_burn_in();
    }

    for (std::int64_t n : n_list) {
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(draws));
        for (std::int64_t s = 0; s < draws; ++s) {
            strip_sampler& strip = *strips[static_cast<std::size_t>(s % replicas)];
            strip.next();
            values.push_back(rescaled_information(strip, n, cond));
        }
        out.push_back(summarize(n, values));
    }
    return out;
}

}  // namespace fieldline
