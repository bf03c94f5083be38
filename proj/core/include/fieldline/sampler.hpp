#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "fieldline/field.hpp"
#include "fieldline/rng.hpp"

namespace fieldline {

// Independent draws from the marginal, raster order, one uniform per site.
configuration sample_iid(const iid_model& model, const region& window, rng_stream& rng);
configuration sample_iid(const iid_model& model, const region& window, const sampler_config& cfg);

// Heat-bath distribution of the centre spin given its four neighbours,
// returned in alphabet order (minus, plus).
std::array<double, 2> local_conditional(const ising_model& model,
                                        const std::array<char, 4>& neighbours);

// Probability of a fully specified finite pattern under the product field.
double exact_pattern_probability(const iid_model& model,
                                 const std::vector<std::pair<site, char>>& pattern);

// Single-spin-flip heat-bath chain on a rectangular window. Sweeps update
// sites in raster order; the boundary ring outside the window is fixed
// plus/minus, absent (free), or wraps (periodic).
class gibbs_sampler {
public:
    gibbs_sampler(const ising_model& model, const region& window, const sampler_config& cfg,
                  std::uint64_t replica = 0);

    void sweep(std::int64_t count = 1);
    void run_burn_in() { sweep(cfg_.burn_in_sweeps); }

    // advances by the configured thinning and exposes the state
    const gibbs_sampler& next() {
        sweep(cfg_.thinning_sweeps);
        return *this;
    }

    int spin(std::int64_t x, std::int64_t y) const {  // +1 / -1
        return spins_[index(x, y)];
    }
    int symbol(std::int64_t x, std::int64_t y) const {  // alphabet index 0/1
        return spins_[index(x, y)] > 0 ? 1 : 0;
    }
    const region& window() const { return window_; }
    const ising_model& model() const { return model_; }
    double magnetization() const;
    configuration snapshot() const;

private:
    std::size_t index(std::int64_t x, std::int64_t y) const {
        return static_cast<std::size_t>((y - window_.y0) * window_.width + (x - window_.x0));
    }
    int neighbour_sum(std::int64_t x, std::int64_t y) const;

    ising_model model_;
    region window_;
    sampler_config cfg_;
    rng_stream rng_;
    std::vector<std::int8_t> spins_;
    std::array<double, 9> p_plus_{};  // heat-bath P(+) indexed by neighbour sum + 4
};

// Convenience wrapper: burn in one chain and emit `count` thinned snapshots.
std::vector<configuration> sample_gibbs(const ising_model& model, const region& window,
                                        const sampler_config& cfg, int count);

}  // namespace fieldline
